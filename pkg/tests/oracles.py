"""Naive reference computations used to cross-check the package.

Nothing here imports package algorithms beyond data containers.
"""

import itertools
from fractions import Fraction


def naive_rank(m):
    """Plain Gauss elimination with Fractions, first-nonzero pivoting."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def bracket_table(L):
    """``table[i][j]`` = list of coordinates of ``[e_i, e_j]``."""
    n = L.dim
    return [[list(L.basis_bracket(i, j)) if i != j else [Fraction(0)] * n for j in range(n)] for i in range(n)]


def brute_jacobi(L):
    """Triples where the cyclic sum is nonzero, from the raw bracket table."""
    n = L.dim
    T = bracket_table(L)

    def br(x, y):
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    for k in range(n):
                        out[k] += xi * yj * T[i][j][k]
        return out

    e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    bad = []
    for i, j, k in itertools.combinations(range(n), 3):
        s = [a + b + c for a, b, c in zip(br(e[i], br(e[j], e[k])), br(e[j], br(e[k], e[i])), br(e[k], br(e[i], e[j])))]
        if any(s):
            bad.append((i, j, k))
    return bad


def perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def eval_form(terms, vectors):
    """Evaluate ``Σ c e^{I}`` on vectors by the permutation-sum formula."""
    total = Fraction(0)
    k = len(vectors)
    for idx, c in terms.items():
        for perm in itertools.permutations(range(k)):
            prod = Fraction(perm_sign(perm))
            for slot, p in enumerate(perm):
                prod *= vectors[p][idx[slot]]
                if not prod:
                    break
            total += c * prod
    return total


def d_by_triples(L, terms1_or_2, degree, vecs):
    """``dα(x_0..x_k) = Σ_{i<j} (-1)^{i+j} α([x_i, x_j], x_0..x̂_i..x̂_j..)`` for left-invariant α."""
    T = bracket_table(L)
    n = L.dim

    def br(x, y):
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        for k in range(n):
                            out[k] += xi * yj * T[i][j][k]
        return out

    total = Fraction(0)
    for i, j in itertools.combinations(range(degree + 1), 2):
        rest = [v for t, v in enumerate(vecs) if t not in (i, j)]
        total += (-1) ** (i + j) * eval_form(terms1_or_2, [br(vecs[i], vecs[j])] + rest)
    return total


def unit(n, i):
    return [Fraction(int(k == i)) for k in range(n)]
