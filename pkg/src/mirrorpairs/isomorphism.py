"""Isomorphism witnesses between Lie algebras and a bounded witness search.

A witness ``W`` for ``(A, B)`` is a matrix whose columns are a new basis of
``A`` in which ``A`` has exactly the structure constants of ``B``; as a map it
sends ``e_i`` of ``B`` to column ``i``, and it is a Lie isomorphism ``B → A``.
This is how explicit "new basis" isomorphisms are usually written down.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import DimensionMismatch
from .lie import (
    LieAlgebra,
    center,
    derived_algebra,
    fingerprint,
    upper_central_series,
)

ZERO = Fraction(0)
ONE = Fraction(1)

# coefficient set for candidate generator images, sparse entries first
HEIGHT_SET = (ONE, -ONE, Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2))


@dataclass(frozen=True)
class IsoWitness:
    matrix: tuple

    @classmethod
    def of(cls, m):
        return cls(tuple(tuple(r) for r in m))

    @classmethod
    def from_basis(cls, vectors):
        """Witness from a list of new basis vectors (coordinates in ``A``)."""
        return cls.of(la.from_columns(vectors))

    def as_list(self):
        return [list(r) for r in self.matrix]


@dataclass
class NotFound:
    reason: str
    nodes: int = 0

    def __bool__(self):
        return False


def verify_isomorphism(A: LieAlgebra, B: LieAlgebra, w) -> bool:
    """True iff ``w`` is invertible and ``w[x, y]_B = [w x, w y]_A`` on all basis pairs."""
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim} differ")
    m = w.as_list() if isinstance(w, IsoWitness) else [list(r) for r in w]
    if len(m) != A.dim or any(len(r) != A.dim for r in m):
        raise DimensionMismatch("witness has the wrong shape")
    if la.rank(m) != A.dim:
        return False
    return first_bracket_failure(A, B, m) is None


def first_bracket_failure(A, B, m):
    cols = la.columns(m)
    n = A.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.matvec(m, B.basis_bracket(i, j))
            rhs = A.bracket(cols[i], cols[j])
            if lhs != rhs:
                return (i, j)
    return None


# --- search ------------------------------------------------------------------


def _generators(B):
    """Indices of standard basis vectors of ``B`` spanning a complement of [B, B]."""
    d = derived_algebra(B)
    gens = []
    cur = list(d)
    for i in range(B.dim):
        e = [ONE if k == i else ZERO for k in range(B.dim)]
        if la.span_dim(cur + [e]) > len(cur):
            gens.append(i)
            cur.append(e)
    return gens


def _ucs_level(vec, ucs):
    for level, space in enumerate(ucs):
        if la.in_span(vec, space):
            return level
    return len(ucs)


def _unit(n, i):
    return [ONE if k == i else ZERO for k in range(n)]


def _word_basis(B, gens):
    """Greedy basis of left-normed words, grouped by generator prefix.

    Returns ``(words, vectors, prefix_end)`` where the words in positions
    ``< prefix_end[t]`` only use ``gens[:t + 1]`` and span the subalgebra they
    generate.
    """
    n = B.dim
    words, vecs, prefix_end = [], [], []
    for t, g in enumerate(gens):
        allowed = gens[: t + 1]
        frontier = [((g,), _unit(n, g))]
        if la.span_dim(vecs + [frontier[0][1]]) > len(vecs):
            words.append(frontier[0][0])
            vecs.append(frontier[0][1])
        # close under left bracketing with allowed letters
        frontier = [(w, v) for w, v in zip(words, vecs)]
        while frontier:
            nxt = []
            for h in allowed:
                for w, v in frontier:
                    b = B.bracket(_unit(n, h), v)
                    if any(b) and la.span_dim(vecs + [b]) > len(vecs):
                        words.append((h,) + w)
                        vecs.append(b)
                        nxt.append(((h,) + w, b))
            frontier = nxt
        prefix_end.append(len(words))
    return words, vecs, prefix_end


def _vector_invariants(A, v, da):
    """Automorphism-invariant data of a single element."""
    adv = A.ad(v)
    ad2 = la.matmul(adv, adv)
    on_da = [la.matvec(adv, w) for w in da]
    return (la.rank(adv), la.rank(ad2), la.span_dim([u for u in on_da if any(u)]))


def _eval_word(A, word, images):
    v = list(images[word[-1]])
    for g in reversed(word[:-1]):
        v = A.bracket(images[g], v)
    return v


def _candidates(A, level, avoid, rng):
    """Sparse-first vectors in a complement of ``avoid`` inside Z_level(A)."""
    ucs = upper_central_series(A)
    space = ucs[min(level, len(ucs) - 1)]
    if not space:
        return []
    # coordinates: choose a basis of the space that extends a basis of avoid∩space
    inter = la.intersect(space, avoid, A.dim) if avoid else []
    basis = la.row_space_basis(inter)
    comp = []
    for v in la.row_space_basis(space):
        if la.span_dim(basis + comp + [v]) > len(basis) + len(comp):
            comp.append(v)
    # prefer standard-basis-like vectors: use rref of comp
    if comp:
        comp, _ = la.rref(comp)
        comp = comp[: len(comp)]
    k = len(comp)
    out = []
    for support in range(1, k + 1):
        for height in (1, 2):
            values = HEIGHT_SET[:2] if height == 1 else HEIGHT_SET
            batch = []
            for idx in itertools.combinations(range(k), support):
                for vals in itertools.product(values, repeat=support):
                    if height == 2 and all(abs(c) == 1 for c in vals):
                        continue
                    v = [ZERO] * A.dim
                    for c, t in zip(vals, idx):
                        for r in range(A.dim):
                            v[r] += c * comp[t][r]
                    batch.append(v)
            if rng is not None:
                rng.shuffle(batch)
            out.extend((2 * support + height - 2, v) for v in batch)
    return out


# complexity caps for iterative deepening: support s with coefficients ±1
# has complexity 2s - 1, any coefficient from HEIGHT_SET gives 2s
PHASES = (1, 2, 3, 4, 6, 8, 10, 12)


def find_isomorphism(A: LieAlgebra, B: LieAlgebra, budget=200000, hints=(), seed=None):
    """Search for a witness ``W`` (see module docstring) with ``W: B → A``.

    Tries ``hints`` first, then a depth-first search over images of a
    generating set of ``B`` drawn from the matching upper-central-series
    level of ``A``.  A partial assignment survives only if it reproduces the
    structure constants of the subalgebra generated so far.  Returns
    :class:`IsoWitness` or :class:`NotFound`; NotFound is inconclusive.
    """
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim} differ")
    for h in hints:
        m = h.as_list() if isinstance(h, IsoWitness) else h
        if verify_isomorphism(A, B, m):
            return IsoWitness.of(m)
    if fingerprint(A) != fingerprint(B):
        return NotFound("fingerprints differ, algebras are not isomorphic")
    n = A.dim
    if verify_isomorphism(A, B, la.identity(n)):
        return IsoWitness.of(la.identity(n))
    rng = random.Random(seed) if seed is not None else None

    gens = _generators(B)
    ucs_b = upper_central_series(B)
    levels = [_ucs_level(_unit(n, g), ucs_b) for g in gens]
    # most central generators first: their candidate sets are smallest
    order = sorted(range(len(gens)), key=lambda t: levels[t])
    gens = [gens[t] for t in order]
    levels = [levels[t] for t in order]

    words, vecs, prefix_end = _word_basis(B, gens)
    if len(words) != n:
        return NotFound("generators do not span B")
    solver = la.CoordinateSolver(vecs)
    expr = [solver.coords(_unit(n, i)) for i in range(n)]
    # relations [g, w] = Σ c_u u, checked as soon as g and w are assigned
    rels = []
    for t in range(len(gens)):
        lo = 0
        hi = prefix_end[t]
        cur = []
        for s_idx in range(t + 1):
            g = gens[s_idx]
            for wi in range(lo, hi):
                if s_idx < t and wi < (prefix_end[t - 1] if t else 0):
                    continue
                b = B.bracket(_unit(n, g), vecs[wi])
                cur.append((g, wi, solver.coords(b)))
        rels.append(cur)

    da_b = derived_algebra(B)
    da = derived_algebra(A)
    inv_b = {g: _vector_invariants(B, _unit(n, g), da_b) for g in gens}
    avoid = la.intersect(center(A), da, n) if da else []
    pools = {}
    for lev in levels:
        if lev not in pools:
            pools[lev] = _candidates(A, lev, avoid, rng)
    inv_cache = {}

    def invariants_match(v, g):
        key = tuple(v)
        if key not in inv_cache:
            inv_cache[key] = _vector_invariants(A, v, da)
        return inv_cache[key] == inv_b[g]
    nodes = 0
    images = {}
    word_img = [None] * n

    def assign_words(t):
        start = prefix_end[t - 1] if t else 0
        for wi in range(start, prefix_end[t]):
            w = words[wi]
            if len(w) == 1:
                word_img[wi] = images[w[0]]
            else:
                # w = (h,) + rest and rest is an earlier basis word
                rest = words.index(w[1:])
                word_img[wi] = A.bracket(images[w[0]], word_img[rest])

    def relations_hold(t):
        for g, wi, coords in rels[t]:
            lhs = A.bracket(images[g], word_img[wi])
            rhs = [ZERO] * n
            for c, u in zip(coords, range(len(coords))):
                if c:
                    if word_img[u] is None:
                        return False
                    for r in range(n):
                        rhs[r] += c * word_img[u][r]
            if lhs != rhs:
                return False
        return True

    def dfs(t, mod):
        nonlocal nodes
        if t == len(gens):
            cols = []
            for i in range(n):
                v = [ZERO] * n
                for c, wv in zip(expr[i], word_img):
                    if c:
                        for r in range(n):
                            v[r] += c * wv[r]
                cols.append(v)
            m = la.from_columns(cols)
            return m if verify_isomorphism(A, B, m) else None
        g = gens[t]
        for cx, v in pools[levels[t]]:
            if cx > cap:
                break
            nodes += 1
            if nodes > budget:
                raise _Budget()
            if la.span_dim(mod + [v]) == len(mod) or not invariants_match(v, g):
                continue
            images[g] = v
            assign_words(t)
            if relations_hold(t):
                res = dfs(t + 1, mod + [v])
                if res is not None:
                    return res
        images.pop(g, None)
        return None

    cap = 0
    try:
        for cap in PHASES:
            m = dfs(0, list(da))
            if m is not None:
                return IsoWitness.of(m)
    except _Budget:
        return NotFound("search budget exhausted", nodes)
    return NotFound("search space exhausted", nodes)


class _Budget(Exception):
    pass
