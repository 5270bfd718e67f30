"""Dense exact linear algebra on list-of-lists matrices.

Matrices are plain ``list[list[scalar]]`` (row major); vectors are flat lists.
Entries may be Fractions or :class:`~mirrorpairs.scalars.QI`.  Functions never
mutate their arguments.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateForm, InconsistentSystem, SingularMatrix

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def to_matrix(rows):
    """Copy ``rows`` converting ints / strings to Fractions."""
    from .scalars import QI, parse_scalar

    def conv(x):
        if isinstance(x, (Fraction, QI)):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        return Fraction(x)

    return [[conv(x) for x in row] for row in rows]


def shape(m):
    return (len(m), len(m[0]) if m else 0)


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), ZERO) for row in a]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a):
    return [[c * x for x in row] for row in a]


def neg(a):
    return [[-x for x in row] for row in a]


def is_zero_matrix(m):
    return all(not x for row in m for x in row)


def columns(m):
    return transpose(m)


def from_columns(cols):
    return transpose([list(c) for c in cols])


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


def _bareiss(m):
    """Fraction-free forward elimination.

    Returns ``(echelon_rows, pivot_columns, sign)`` where ``sign`` tracks row
    swaps.  Every update is ``row_i <- (p * row_i - f * row_r) / prev`` with a
    nonzero ``p``, so the row space (hence the rank) is preserved.
    """
    a = [list(r) for r in m]
    rows, cols = shape(a)
    pivots = []
    prev = ONE
    sign = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) / prev
            row_i[c] = ZERO
        prev = p
        pivots.append(c)
        r += 1
    return a, pivots, sign


def rank(m) -> int:
    """Exact rank by Bareiss elimination."""
    if not m or not m[0]:
        return 0
    return len(_bareiss(m)[1])


def det(m):
    n, k = shape(m)
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    a, pivots, sign = _bareiss(m)
    if len(pivots) < n:
        return ZERO
    # Bareiss: the last pivot is the determinant up to the swap sign
    return sign * a[n - 1][n - 1]


def rref(m):
    """Reduced row echelon form, returned with the pivot columns."""
    a = [list(r) for r in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(m, ncols=None):
    """Basis of the right kernel ``{v : m v = 0}``; length is ``cols - rank``."""
    cols = shape(m)[1] if m else (ncols or 0)
    if not m:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(m, b):
    """One exact solution of ``m x = b``; raises InconsistentSystem otherwise."""
    rows, cols = shape(m)
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        raise InconsistentSystem("linear system has no solution")
    x = [ZERO] * cols
    for i, p in enumerate(pivots):
        x[p] = r[i][cols]
    return x


def inverse(m):
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in r]


def row_space_basis(vectors):
    """Echelon basis of the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    r, pivots = rref(vectors)
    return r[: len(pivots)]


def span_dim(vectors) -> int:
    vectors = [list(v) for v in vectors]
    return rank(vectors) if vectors else 0


def in_span(v, vectors) -> bool:
    if not vectors:
        return not any(v)
    return span_dim(list(vectors) + [v]) == span_dim(vectors)


def annihilator(vectors, dim):
    """Basis of linear functionals vanishing on ``vectors`` (as row vectors)."""
    if not vectors:
        return [[ONE if i == j else ZERO for i in range(dim)] for j in range(dim)]
    return kernel_basis([list(v) for v in vectors])


def intersect(u, w, dim):
    """Basis of span(u) ∩ span(w)."""
    if not u or not w:
        return []
    ann = annihilator(u, dim) + annihilator(w, dim)
    if not ann:
        return [[ONE if i == j else ZERO for i in range(dim)] for j in range(dim)]
    return kernel_basis(ann)


class CoordinateSolver:
    """Coordinates of vectors with respect to a fixed independent family.

    Picks a square invertible row selection once so each query costs a
    matrix-vector product plus a consistency check.
    """

    def __init__(self, basis_vectors):
        self.basis = [list(v) for v in basis_vectors]
        k = len(self.basis)
        cols = transpose(self.basis)
        _, pivots = rref(transpose(cols))
        if len(pivots) != k:
            raise SingularMatrix("family is not linearly independent")
        self.rows = pivots
        sub_m = [cols[r] for r in pivots]
        self._inv = inverse(sub_m)

    def coords(self, v):
        c = matvec(self._inv, [v[r] for r in self.rows])
        n = len(v)
        for i in range(n):
            s = sum((self.basis[j][i] * c[j] for j in range(len(c))), ZERO)
            if s != v[i]:
                raise InconsistentSystem("vector not in the span of the basis")
        return c


def congruence_diagonalize(s):
    """Return ``(diag, p)`` with ``p^T s p = diag(diag)`` for symmetric ``s``.

    Pivot rule: the first nonzero diagonal entry; when the remaining diagonal
    vanishes, add column ``j`` to column ``i`` for the first nonzero
    off-diagonal ``s[i][j]``.  Raises DegenerateForm if a zero block remains.
    """
    n = len(s)
    a = [list(r) for r in s]
    p = identity(n)

    def col_add(src, dst, f):
        # column op dst += f * src on a (and the matching row op), tracked in p
        for i in range(n):
            a[i][dst] += f * a[i][src]
        for j in range(n):
            a[dst][j] += f * a[src][j]
        for i in range(n):
            p[i][dst] += f * p[i][src]

    def swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    diag = []
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if pair is None:
                raise DegenerateForm("symmetric form is degenerate")
            i, j = pair
            col_add(j, i, ONE)
            piv = i
        swap(k, piv)
        d = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                col_add(k, i, -a[i][k] / d)
        diag.append(d)
    return diag, p


def signature(s):
    """Inertia ``(positive, negative)`` of a non-degenerate symmetric matrix."""
    for i in range(len(s)):
        for j in range(len(s)):
            if s[i][j] != s[j][i]:
                raise ValueError("signature needs a symmetric matrix")
    diag, _ = congruence_diagonalize(s)
    pos = sum(1 for d in diag if d > 0)
    return pos, len(diag) - pos
