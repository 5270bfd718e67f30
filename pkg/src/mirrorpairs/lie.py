"""Lie algebras given by structure constants.

Brackets are stored sparsely: ``brackets[(i, j)] = {k: c}`` for ``i < j`` means
``[e_i, e_j] = Σ_k c e_k`` (0-based indices).  The Chevalley-Eilenberg
differential follows ``(dα)(x, y) = -α([x, y])`` on 1-forms, so
``de^k = -Σ_{i<j} c^k_{ij} e^{ij}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import DegreeOverflow, DimensionMismatch, JacobiFailure, ParseError
from .exterior import ExtElement, wedge
from .scalars import format_scalar, parse_scalar

ZERO = Fraction(0)


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q or Q(i).

    Construction validates antisymmetry and, unless ``check=False``, the
    Jacobi identity on every basis triple.
    """

    __slots__ = ("dim", "brackets", "labels", "_ad")

    def __init__(self, dim, brackets=None, labels=None, check=True):
        self.dim = dim
        clean = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range")
            if i == j:
                if any(coeffs.values()):
                    raise JacobiFailure(f"[e{i + 1}, e{i + 1}] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            entry = clean.setdefault((i, j), {})
            for k, c in coeffs.items():
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"bracket target e{k + 1} out of range")
                entry[k] = entry.get(k, ZERO) + sign * c
        self.brackets = {}
        for key, coeffs in clean.items():
            nz = {k: c for k, c in coeffs.items() if c}
            if nz:
                self.brackets[key] = nz
        self.labels = list(labels) if labels else [f"e{i + 1}" for i in range(dim)]
        self._ad = None
        if check:
            bad = check_jacobi(self)
            if bad:
                (i, j, k), v = bad[0]
                raise JacobiFailure(
                    f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1}): cyclic sum {v}",
                    location=(i, j, k),
                )

    @classmethod
    def abelian(cls, dim):
        return cls(dim, {})

    @classmethod
    def from_matrices(cls, ad_mats, check=True):
        """Build from ``ad(e_i)`` matrices (column ``j`` is ``[e_i, e_j]``)."""
        n = len(ad_mats)
        br = {}
        for i in range(n):
            for j in range(i + 1, n):
                br[(i, j)] = {k: ad_mats[i][k][j] for k in range(n) if ad_mats[i][k][j]}
        return cls(n, br, check=check)

    def basis_bracket(self, i, j):
        """[e_i, e_j] as a dense vector."""
        v = [ZERO] * self.dim
        if i == j:
            return v
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.brackets.get((i, j), {}).items():
            v[k] = sign * c
        return v

    def bracket(self, x, y):
        out = [ZERO] * self.dim
        for (i, j), coeffs in self.brackets.items():
            f = x[i] * y[j] - x[j] * y[i]
            if f:
                for k, c in coeffs.items():
                    out[k] += f * c
        return out

    def ad_matrices(self):
        """``ad(e_i)`` for each basis vector, column convention."""
        if self._ad is None:
            n = self.dim
            mats = [la.zeros(n, n) for _ in range(n)]
            for (i, j), coeffs in self.brackets.items():
                for k, c in coeffs.items():
                    mats[i][k][j] += c
                    mats[j][k][i] -= c
            self._ad = mats
        return self._ad

    def ad(self, x):
        mats = self.ad_matrices()
        n = self.dim
        out = la.zeros(n, n)
        for i, xi in enumerate(x):
            if xi:
                for r in range(n):
                    for c in range(n):
                        if mats[i][r][c]:
                            out[r][c] += xi * mats[i][r][c]
        return out

    def is_abelian(self):
        return not self.brackets

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.brackets == other.brackets
        )

    def __hash__(self):
        return hash((self.dim, frozenset((k, frozenset(v.items())) for k, v in self.brackets.items())))

    def __repr__(self):
        return f"LieAlgebra({self.dim}, {structure_equations(self)!r})"

    # --- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "dim": self.dim,
            "brackets": [
                {"i": i + 1, "j": j + 1, "coeffs": {str(k + 1): format_scalar(c) for k, c in sorted(v.items())}}
                for (i, j), v in sorted(self.brackets.items())
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            dim = int(data["dim"])
            br = {}
            for b in data.get("brackets", []):
                key = (int(b["i"]) - 1, int(b["j"]) - 1)
                coeffs = {int(k) - 1: parse_scalar(str(v)) for k, v in b["coeffs"].items()}
                prev = br.setdefault(key, {})
                for k, c in coeffs.items():
                    prev[k] = prev.get(k, ZERO) + c
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed Lie algebra JSON: {exc}") from exc
        return cls(dim, br)


def check_jacobi(L: LieAlgebra):
    """Return ``[((i, j, k), cyclic_sum), ...]`` over all basis triples i<j<k."""
    bad = []
    n = L.dim
    e = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    for i, j, k in itertools.combinations(range(n), 3):
        s = [
            a + b + c
            for a, b, c in zip(
                L.bracket(e[i], L.basis_bracket(j, k)),
                L.bracket(e[j], L.basis_bracket(k, i)),
                L.bracket(e[k], L.basis_bracket(i, j)),
            )
        ]
        if any(s):
            bad.append(((i, j, k), s))
    return bad


# --- subspaces and series ----------------------------------------------------


def _unit(n, i):
    v = [ZERO] * n
    v[i] = Fraction(1)
    return v


def bracket_of_spaces(L, u, w):
    """Basis of [span u, span w]."""
    vecs = [L.bracket(a, b) for a in u for b in w]
    return la.row_space_basis([v for v in vecs if any(v)])


def full_space(L):
    return [_unit(L.dim, i) for i in range(L.dim)]


def derived_algebra(L):
    return bracket_of_spaces(L, full_space(L), full_space(L))


def lower_central_series(L):
    """Bases of g, [g,g], [g,[g,g]], ... down to a stable term."""
    cur = full_space(L)
    out = [cur]
    while True:
        nxt = bracket_of_spaces(L, full_space(L), cur)
        if len(nxt) == len(cur):
            break
        out.append(nxt)
        cur = nxt
        if not cur:
            break
    return out


def derived_series(L):
    cur = full_space(L)
    out = [cur]
    while True:
        nxt = bracket_of_spaces(L, cur, cur)
        if len(nxt) == len(cur):
            break
        out.append(nxt)
        cur = nxt
        if not cur:
            break
    return out


def centralizer_modulo(L, sub):
    """Basis of {x : [x, L] ⊆ span(sub)}."""
    n = L.dim
    ann = la.annihilator(sub, n) if sub else full_space(L)
    # rows: f([x, e_j]) = 0 for every functional f in ann and every j
    mats = L.ad_matrices()
    rows = []
    for j in range(n):
        for f in ann:
            # [x, e_j] = -ad(e_j) x
            rows.append([-sum((f[r] * mats[j][r][c] for r in range(n)), ZERO) for c in range(n)])
    rows = [r for r in rows if any(r)]
    return la.kernel_basis(rows, n) if rows else full_space(L)


def center(L):
    return centralizer_modulo(L, [])


def upper_central_series(L):
    cur = []
    out = [cur]
    while True:
        nxt = la.row_space_basis(centralizer_modulo(L, cur))
        if len(nxt) == len(cur):
            break
        out.append(nxt)
        cur = nxt
    return out


def is_nilpotent(L):
    return not lower_central_series(L)[-1]


@dataclass(frozen=True)
class SeriesProfile:
    lcs_dims: tuple
    ds_dims: tuple
    center_dim: int
    derived_dim: int

    @property
    def nilpotent(self):
        return self.lcs_dims[-1] == 0


def series_profile(L) -> SeriesProfile:
    lcs = tuple(len(s) for s in lower_central_series(L))
    ds = tuple(len(s) for s in derived_series(L))
    return SeriesProfile(lcs, ds, len(center(L)), len(derived_algebra(L)))


# --- Chevalley-Eilenberg ------------------------------------------------------


def de_generators(L):
    """``[de^1, ..., de^n]`` as 2-forms."""
    out = []
    for k in range(L.dim):
        terms = {}
        for (i, j), coeffs in L.brackets.items():
            c = coeffs.get(k)
            if c:
                terms[(i, j)] = -c
        out.append(ExtElement(L.dim, 2, terms))
    return out


def ce_differential(L, alpha: ExtElement, _cache=None) -> ExtElement:
    """Chevalley-Eilenberg differential extended as an antiderivation."""
    if alpha.dim != L.dim:
        raise DimensionMismatch("form and algebra dimensions differ")
    if alpha.degree >= L.dim:
        raise DegreeOverflow(f"d of a {alpha.degree}-form on a {L.dim}-dimensional algebra")
    de = _cache if _cache is not None else de_generators(L)
    result = ExtElement.zero(L.dim, alpha.degree + 1)
    for key, c in alpha.terms.items():
        for s, idx in enumerate(key):
            if not de[idx]:
                continue
            left = ExtElement(L.dim, s, {key[:s]: Fraction(1)})
            right = ExtElement(L.dim, len(key) - s - 1, {key[s + 1:]: Fraction(1)})
            term = wedge(wedge(left, de[idx]), right)
            result = result + (term * (-c if s % 2 else c))
    return result


def d_matrix(L, k, de=None):
    """Matrix of d: Λ^k → Λ^{k+1} in the lexicographic monomial bases."""
    de = de if de is not None else de_generators(L)
    src = list(itertools.combinations(range(L.dim), k))
    dst = {key: r for r, key in enumerate(itertools.combinations(range(L.dim), k + 1))}
    m = la.zeros(len(dst), len(src))
    for col, key in enumerate(src):
        img = ce_differential(L, ExtElement(L.dim, k, {key: Fraction(1)}), de)
        for t, c in img.terms.items():
            m[dst[t]][col] = c
    return m


def betti_numbers(L):
    """Dimensions of Lie algebra cohomology H^k(L) for k = 0..dim."""
    n = L.dim
    de = de_generators(L)
    ranks = [la.rank(d_matrix(L, k, de)) if k < n else 0 for k in range(n + 1)]
    out = []
    from math import comb

    for k in range(n + 1):
        prev = ranks[k - 1] if k > 0 else 0
        out.append(comb(n, k) - ranks[k] - prev)
    return out


# --- basis changes and invariants -------------------------------------------


def change_basis(L, p):
    """Structure constants of ``L`` in the basis given by the columns of ``p``."""
    n = L.dim
    inv = la.inverse(p)
    cols = la.columns(p)
    br = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = la.matvec(inv, L.bracket(cols[a], cols[b]))
            coeffs = {k: c for k, c in enumerate(v) if c}
            if coeffs:
                br[(a, b)] = coeffs
    return LieAlgebra(n, br, check=False)


@dataclass(frozen=True)
class Fingerprint:
    profile: SeriesProfile
    ucs_dims: tuple
    bracket_rank: int
    center_of_quotient_dim: int
    betti: tuple


def fingerprint(L) -> Fingerprint:
    """Isomorphism invariants; equal fingerprints are necessary for isomorphism."""
    z = center(L)
    return Fingerprint(
        profile=series_profile(L),
        ucs_dims=tuple(len(s) for s in upper_central_series(L)),
        bracket_rank=len(derived_algebra(L)),
        center_of_quotient_dim=len(centralizer_modulo(L, z)),
        betti=tuple(betti_numbers(L)),
    )


def structure_equations(L, labels=None) -> str:
    """Salamon-style ``(0,0,0,12,13,14+23)`` listing of de^k."""
    from .shorthand import format_shorthand

    return format_shorthand(L)
