"""Semi-direct products with abelian fiber, connections and the duality bridges.

Representation matrices use the column convention: column ``k`` of
``rho[i]`` is ``ρ(x_i) v_k``.  A :class:`SemidirectProduct` records where the
base and fiber sit inside the total algebra's basis (``base_idx`` and
``fiber_idx``), so the same code serves block layouts ``(x_1..x_n, v_1..v_m)``
and interleaved layouts such as base ``e1, e3, e5`` with fiber ``e2, e4, e6``.

On a dual product ``𝔤 ⋉ V*`` the fiber slot ``k`` holds the covector
``u^k`` dual to ``v_k`` (or ``v_{m-k}`` with the reversed ordering).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .errors import (
    DimensionMismatch,
    NotARepresentation,
    NotClosed,
    NotFlatOrTorsionFree,
    NotLagrangian,
    NotTotallyReal,
)
from .lie import LieAlgebra
from .structures import (
    ComplexStructure,
    TwoForm,
    is_closed,
    is_lagrangian,
    is_nondegenerate,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def _unit(n, i):
    return [ONE if k == i else ZERO for k in range(n)]


def _lin(mats, x):
    """``Σ x_i mats[i]``."""
    m = len(mats[0]) if mats else 0
    k = len(mats[0][0]) if m else 0
    out = la.zeros(m, k)
    for xi, M in zip(x, mats):
        if xi:
            for r in range(m):
                for c in range(k):
                    if M[r][c]:
                        out[r][c] += xi * M[r][c]
    return out


def _commutator(a, b):
    return la.sub(la.matmul(a, b), la.matmul(b, a))


# --- representations --------------------------------------------------------


class Representation:
    """Linear map ``ρ: 𝔤 → End(V)`` given on the basis of ``𝔤``."""

    __slots__ = ("base", "fiber_dim", "rho")

    def __init__(self, base: LieAlgebra, rho, fiber_dim=None, check=True):
        self.base = base
        self.rho = [[list(r) for r in M] for M in rho]
        if len(self.rho) != base.dim:
            raise DimensionMismatch(f"need {base.dim} matrices, got {len(self.rho)}")
        self.fiber_dim = fiber_dim if fiber_dim is not None else (len(self.rho[0]) if self.rho else 0)
        for M in self.rho:
            if len(M) != self.fiber_dim or any(len(r) != self.fiber_dim for r in M):
                raise DimensionMismatch("representation matrices have the wrong size")
        if check:
            bad = homomorphism_violations(self)
            if bad:
                raise NotARepresentation(
                    f"ρ([x{bad[0][0] + 1}, x{bad[0][1] + 1}]) ≠ [ρ(x{bad[0][0] + 1}), ρ(x{bad[0][1] + 1})]",
                    location=bad[0],
                )

    def __call__(self, x):
        return _lin(self.rho, x)

    def is_zero(self):
        return all(la.is_zero_matrix(M) for M in self.rho)

    def to_json(self):
        from .scalars import format_scalar

        return {
            "base": self.base.to_json(),
            "fiber_dim": self.fiber_dim,
            "rho": [[[format_scalar(c) for c in row] for row in M] for M in self.rho],
        }

    @classmethod
    def from_json(cls, data):
        from .errors import ParseError
        from .scalars import parse_scalar

        try:
            base = LieAlgebra.from_json(data["base"])
            rho = [[[parse_scalar(str(c)) for c in row] for row in M] for M in data["rho"]]
            fd = int(data.get("fiber_dim", len(rho[0]) if rho else 0))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed representation JSON: {exc}") from exc
        return cls(base, rho, fd)


def homomorphism_violations(rep: Representation):
    n = rep.base.dim
    bad = []
    for i, j in itertools.combinations(range(n), 2):
        lhs = rep(rep.base.basis_bracket(i, j))
        if lhs != _commutator(rep.rho[i], rep.rho[j]):
            bad.append((i, j))
    return bad


def dual_representation(rep: Representation, reverse=False) -> Representation:
    """``ρ*(x) = -ρ(x)ᵀ`` on ``V*``.

    With ``reverse`` the dual basis is listed backwards (``u^m, …, u^1``),
    which turns the transpose into a transpose about the opposite diagonal.
    """
    m = rep.fiber_dim
    mats = []
    for M in rep.rho:
        T = [[-M[c][r] for c in range(m)] for r in range(m)]
        if reverse:
            T = [[T[m - 1 - r][m - 1 - c] for c in range(m)] for r in range(m)]
        mats.append(T)
    return Representation(rep.base, mats, m, check=False)


# --- semi-direct products ---------------------------------------------------


def blocked_layout(n, m):
    return tuple(range(n)), tuple(range(n, n + m))


def interleaved_layout(n):
    return tuple(range(0, 2 * n, 2)), tuple(range(1, 2 * n, 2))


@dataclass
class SemidirectProduct:
    total: LieAlgebra
    base_idx: tuple
    fiber_idx: tuple
    rep: Representation
    reversed_dual: bool = False
    labels: list = field(default_factory=list)

    @property
    def base(self):
        return self.rep.base

    def base_vectors(self):
        return [_unit(self.total.dim, i) for i in self.base_idx]

    def fiber_vectors(self):
        return [_unit(self.total.dim, i) for i in self.fiber_idx]

    def to_json(self):
        d = self.rep.to_json()
        d["base_idx"] = [i + 1 for i in self.base_idx]
        d["fiber_idx"] = [i + 1 for i in self.fiber_idx]
        return d


def build_semidirect(rep: Representation, layout=None, labels=None) -> SemidirectProduct:
    """``𝔤 ⋉_ρ V`` with ``[x + u, y + v] = [x, y] + ρ(x)v - ρ(y)u``."""
    g = rep.base
    n, m = g.dim, rep.fiber_dim
    base_idx, fiber_idx = layout if layout is not None else blocked_layout(n, m)
    base_idx, fiber_idx = tuple(base_idx), tuple(fiber_idx)
    if sorted(base_idx + fiber_idx) != list(range(n + m)):
        raise DimensionMismatch("layout does not partition the total basis")
    br = {}
    for (i, j), coeffs in g.brackets.items():
        br[(base_idx[i], base_idx[j])] = {base_idx[k]: c for k, c in coeffs.items()}
    for i in range(n):
        for k in range(m):
            col = {fiber_idx[l]: rep.rho[i][l][k] for l in range(m) if rep.rho[i][l][k]}
            if col:
                br[(base_idx[i], fiber_idx[k])] = col
    total = LieAlgebra(n + m, br, labels=labels)
    return SemidirectProduct(total, base_idx, fiber_idx, rep, labels=list(total.labels))


def split_semidirect(L: LieAlgebra, base_idx, fiber_idx) -> SemidirectProduct:
    """View ``L`` as ``𝔤 ⋉ V`` for a splitting along basis vectors.

    Raises ValidationError unless ``V`` is an abelian ideal and ``𝔤`` a subalgebra.
    """
    from .errors import ValidationError

    base_idx, fiber_idx = tuple(base_idx), tuple(fiber_idx)
    pos_b = {b: i for i, b in enumerate(base_idx)}
    pos_f = {f: k for k, f in enumerate(fiber_idx)}
    br = {}
    for i, j in itertools.combinations(range(len(base_idx)), 2):
        v = L.basis_bracket(base_idx[i], base_idx[j])
        if any(c for k, c in enumerate(v) if k not in pos_b):
            raise ValidationError("base is not a subalgebra", location=(base_idx[i], base_idx[j]))
        coeffs = {pos_b[k]: c for k, c in enumerate(v) if c}
        if coeffs:
            br[(i, j)] = coeffs
    base = LieAlgebra(len(base_idx), br, labels=[L.labels[b] for b in base_idx])
    m = len(fiber_idx)
    mats = []
    for b in base_idx:
        M = la.zeros(m, m)
        for k, f in enumerate(fiber_idx):
            v = L.basis_bracket(b, f)
            if any(c for r, c in enumerate(v) if r not in pos_f):
                raise ValidationError("fiber is not an ideal", location=(b, f))
            for r, c in enumerate(v):
                if c:
                    M[pos_f[r]][k] = c
        mats.append(M)
    sd = SemidirectProduct(L, base_idx, fiber_idx, Representation(base, mats, m), labels=list(L.labels))
    if not semidirect_invariants_hold(sd):
        raise ValidationError("fiber is not an abelian ideal")
    return sd


def semidirect_invariants_hold(sd: SemidirectProduct) -> bool:
    """[V, V] = 0, [𝔥, V] ⊆ V and 𝔤 closed under the bracket."""
    L = sd.total
    fib, base = set(sd.fiber_idx), set(sd.base_idx)
    for i, j in itertools.combinations(range(L.dim), 2):
        v = L.basis_bracket(i, j)
        support = {k for k, c in enumerate(v) if c}
        if i in fib and j in fib and support:
            return False
        if (i in fib or j in fib) and not support <= fib:
            return False
        if i in base and j in base and not support <= base:
            return False
    return True


def dual_semidirect(sd: SemidirectProduct, reverse=False, labels=None) -> SemidirectProduct:
    """``𝔥^∨ = 𝔤 ⋉_{ρ*} V*`` in the same layout as ``sd``."""
    rep = dual_representation(sd.rep, reverse=reverse)
    out = build_semidirect(rep, (sd.base_idx, sd.fiber_idx), labels=labels)
    out.reversed_dual = reverse
    return out


def canonical_identification(sd: SemidirectProduct, reverse=False):
    """Matrix of ``(𝔥^∨)^∨ → 𝔥``; with matching layouts it is the identity."""
    return la.identity(sd.total.dim)


# --- connections ------------------------------------------------------------


@dataclass
class ConnectionCheck:
    torsion_free: bool
    flat: bool
    torsion_violations: list
    curvature_violations: list


class Connection:
    """Linear map ``γ: 𝔤 → End(𝔤)``; no flatness assumed."""

    __slots__ = ("base", "gamma")

    def __init__(self, base: LieAlgebra, gamma):
        self.base = base
        self.gamma = [[list(r) for r in M] for M in gamma]
        n = base.dim
        if len(self.gamma) != n or any(len(M) != n or any(len(r) != n for r in M) for M in self.gamma):
            raise DimensionMismatch("connection matrices must be dim × dim, one per basis vector")

    @classmethod
    def zero(cls, base):
        n = base.dim
        return cls(base, [la.zeros(n, n) for _ in range(n)])

    def __call__(self, x):
        return _lin(self.gamma, x)

    def __eq__(self, other):
        return isinstance(other, Connection) and self.gamma == other.gamma

    def as_representation(self, check=True):
        return Representation(self.base, self.gamma, self.base.dim, check=check)


def connection_check(gamma: Connection) -> ConnectionCheck:
    """``T(x,y) = [x,y] - γ(x)y + γ(y)x`` and ``R(x,y) = γ([x,y]) - [γ(x), γ(y)]``."""
    g = gamma.base
    n = g.dim
    tors, curv = [], []
    for i, j in itertools.combinations(range(n), 2):
        gi, gj = gamma.gamma[i], gamma.gamma[j]
        t = [b - gi[r][j] + gj[r][i] for r, b in enumerate(g.basis_bracket(i, j))]
        if any(t):
            tors.append(((i, j), t))
        R = la.sub(gamma(g.basis_bracket(i, j)), _commutator(gi, gj))
        if not la.is_zero_matrix(R):
            curv.append((i, j))
    return ConnectionCheck(not tors, not curv, tors, curv)


def _base_to_fiber(sd: SemidirectProduct, J: ComplexStructure):
    """``C`` with ``J x_i = Σ_k C[k][i] v_k``; raises NotTotallyReal otherwise."""
    n, m = len(sd.base_idx), len(sd.fiber_idx)
    if n != m:
        raise NotTotallyReal("base and fiber dimensions differ")
    C = la.zeros(m, n)
    for i, bi in enumerate(sd.base_idx):
        img = J(_unit(sd.total.dim, bi))
        for b in sd.base_idx:
            if img[b]:
                raise NotTotallyReal(f"J{sd.total.labels[bi]} has a base component")
        for k, fk in enumerate(sd.fiber_idx):
            C[k][i] = img[fk]
    if la.rank(C) != n:
        raise NotTotallyReal("J does not map the base onto the fiber")
    return C


def connection_from_complex(sd: SemidirectProduct, J: ComplexStructure) -> Connection:
    """``γ(x) y = -J ρ(x) J y``, i.e. ``γ(x) = C⁻¹ ρ(x) C`` in base coordinates."""
    C = _base_to_fiber(sd, J)
    Ci = la.inverse(C)
    return Connection(sd.base, [la.matmul(Ci, la.matmul(M, C)) for M in sd.rep.rho])


def complex_from_connection(gamma: Connection, layout=None):
    """``𝔤 ⋉_γ 𝔤`` with ``J(x, y) = (-y, x)``."""
    rep = gamma.as_representation(check=False)
    bad = connection_check(gamma)
    if not (bad.torsion_free and bad.flat):
        raise NotFlatOrTorsionFree("γ must be flat and torsion-free")
    n = gamma.base.dim
    sd = build_semidirect(rep, layout or blocked_layout(n, n))
    Jm = la.zeros(2 * n, 2 * n)
    for i in range(n):
        Jm[sd.fiber_idx[i]][sd.base_idx[i]] = ONE
        Jm[sd.base_idx[i]][sd.fiber_idx[i]] = -ONE
    return sd, ComplexStructure(Jm)


def symplectic_from_connection(gamma: Connection, layout=None):
    """``𝔤 ⋉_{γ*} 𝔤*`` with ``ω(x + u, y + v) = u(y) - v(x)``."""
    bad = connection_check(gamma)
    if not (bad.torsion_free and bad.flat):
        raise NotFlatOrTorsionFree("γ must be flat and torsion-free")
    rep = dual_representation(gamma.as_representation(check=False))
    n = gamma.base.dim
    sd = build_semidirect(rep, layout or blocked_layout(n, n))
    B = la.zeros(2 * n, 2 * n)
    for i in range(n):
        B[sd.base_idx[i]][sd.fiber_idx[i]] = -ONE
        B[sd.fiber_idx[i]][sd.base_idx[i]] = ONE
    omega = TwoForm(B)
    if not is_closed(sd.total, omega):
        raise NotClosed("standard pairing is not closed")
    return sd, omega


def _pairing_block(sd, omega: TwoForm):
    """``Bm[i][l] = ω(x_i, v_l)``."""
    return [[omega.B[bi][fl] for fl in sd.fiber_idx] for bi in sd.base_idx]


def _require_lagrangian(sd, omega):
    if not is_lagrangian(omega, sd.base_vectors()) or not is_lagrangian(omega, sd.fiber_vectors()):
        raise NotLagrangian("base and fiber must both be Lagrangian")
    if not is_nondegenerate(omega):
        raise NotLagrangian("ω is degenerate")


def connection_from_symplectic(sd: SemidirectProduct, omega: TwoForm) -> Connection:
    """``γ(x) y = ω⁻¹(ρ*(x) ω(y))``, i.e. ``γ(x) = -(Bm ρ(x) Bm⁻¹)ᵀ``."""
    _require_lagrangian(sd, omega)
    if not is_closed(sd.total, omega):
        raise NotClosed("ω is not closed")
    Bm = _pairing_block(sd, omega)
    Bi = la.inverse(Bm)
    mats = [la.neg(la.transpose(la.matmul(Bm, la.matmul(M, Bi)))) for M in sd.rep.rho]
    return Connection(sd.base, mats)


# --- ω_J and J_ω -------------------------------------------------------------


def _dual_slot(sd, k, reverse):
    """Fiber slot on the dual product holding the covector dual to ``v_k``."""
    m = len(sd.fiber_idx)
    return sd.fiber_idx[m - 1 - k] if reverse else sd.fiber_idx[k]


def omega_from_J(sd: SemidirectProduct, J: ComplexStructure, dual=None) -> tuple:
    """``ω_J(x + u, y + v) = v(Jx) - u(Jy)`` on ``𝔥^∨``.

    Returns ``(dual_sd, ω_J)``; pass ``dual`` to reuse an existing ``𝔥^∨``.
    """
    C = _base_to_fiber(sd, J)
    hv = dual if dual is not None else dual_semidirect(sd)
    N = hv.total.dim
    B = la.zeros(N, N)
    for i, bi in enumerate(hv.base_idx):
        for k in range(len(sd.fiber_idx)):
            s = _dual_slot(hv, k, hv.reversed_dual)
            B[bi][s] = C[k][i]
            B[s][bi] = -C[k][i]
    return hv, TwoForm(B)


def J_from_omega(sd: SemidirectProduct, omega: TwoForm, dual=None) -> tuple:
    """``J_ω(x) = ω(x)|_V`` as a covector and ``J_ω(u) = -ω⁻¹(u)``, on ``𝔥^∨``."""
    _require_lagrangian(sd, omega)
    Bm = _pairing_block(sd, omega)
    Bi = la.inverse(Bm)
    hv = dual if dual is not None else dual_semidirect(sd)
    N = hv.total.dim
    Jm = la.zeros(N, N)
    for i, bi in enumerate(hv.base_idx):
        for k in range(len(sd.fiber_idx)):
            s = _dual_slot(hv, k, hv.reversed_dual)
            Jm[s][bi] = Bm[i][k]
            Jm[bi][s] = -Bi[k][i]
    return hv, ComplexStructure(Jm)


def transport_complex(J: ComplexStructure, P):
    """``P⁻¹ J P``: J expressed through the isomorphism with matrix ``P``."""
    return ComplexStructure(la.matmul(la.inverse(P), la.matmul(J.J, P)))


def transport_form(omega: TwoForm, P):
    """``Pᵀ B P``: pull back ω along ``P``."""
    return TwoForm(la.matmul(la.transpose(P), la.matmul(omega.B, P)))


# --- dual connection and special Lagrangian data -----------------------------


def dual_connection(gamma: Connection, G, check=True) -> Connection:
    """``γ'(x) = -G⁻¹ γ(x)ᵀ G``, the negative g-transpose."""
    Gi = la.inverse(G)
    mats = [la.neg(la.matmul(Gi, la.matmul(la.transpose(M), G))) for M in gamma.gamma]
    out = Connection(gamma.base, mats)
    if check:
        res = connection_check(out)
        if not (res.torsion_free and res.flat):
            raise NotFlatOrTorsionFree("dual connection is not flat and torsion-free")
    return out


def special_lagrangian_from_connection(gamma: Connection, G, layout=None):
    """``𝔤 ⋉_γ 𝔤`` with ``J(x, y) = (-y, x)`` and ``ω(x_i, v_j) = G[i][j]``."""
    sd, J = complex_from_connection(gamma, layout)
    n = gamma.base.dim
    B = la.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            B[sd.base_idx[i]][sd.fiber_idx[j]] = G[i][j]
            B[sd.fiber_idx[j]][sd.base_idx[i]] = -G[i][j]
    return sd, J, TwoForm(B)


def eq5_violations(sd: SemidirectProduct, J: ComplexStructure):
    """Base pairs where ``[x,y] + Jρ(x)Jy - Jρ(y)Jx`` is nonzero."""
    L = sd.total
    N = L.dim
    bad = []
    for i, j in itertools.combinations(sd.base_idx, 2):
        x, y = _unit(N, i), _unit(N, j)
        # on 𝔥, ρ(x)w = [x, w] for w in the fiber
        t1 = L.bracket(x, y)
        t2 = J(L.bracket(x, J(y)))
        t3 = J(L.bracket(y, J(x)))
        v = [a + b - c for a, b, c in zip(t1, t2, t3)]
        if any(v):
            bad.append(((i, j), v))
    return bad


__all__ = [
    "Representation",
    "SemidirectProduct",
    "Connection",
    "ConnectionCheck",
    "homomorphism_violations",
    "dual_representation",
    "blocked_layout",
    "interleaved_layout",
    "build_semidirect",
    "split_semidirect",
    "semidirect_invariants_hold",
    "dual_semidirect",
    "canonical_identification",
    "connection_check",
    "connection_from_complex",
    "complex_from_connection",
    "symplectic_from_connection",
    "connection_from_symplectic",
    "omega_from_J",
    "J_from_omega",
    "transport_complex",
    "transport_form",
    "dual_connection",
    "special_lagrangian_from_connection",
    "eq5_violations",
]
