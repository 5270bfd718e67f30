"""Non-existence certificates: no symplectic form on h3, no special Lagrangian h6."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .exterior import ExtElement
from .lie import d_matrix
from .structures import ComplexStructure, TwoForm, is_compatible, is_integrable

ZERO = Fraction(0)
ONE = Fraction(1)

HEIGHT_TWO = (ZERO, ONE, -ONE, Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2))


def closed_two_forms(L):
    """Basis of closed 2-forms as antisymmetric matrices."""
    n = L.dim
    keys = list(itertools.combinations(range(n), 2))
    ker = la.kernel_basis(d_matrix(L, 2), len(keys))
    out = []
    for v in ker:
        a = ExtElement(n, 2, {k: c for k, c in zip(keys, v) if c})
        out.append(TwoForm.from_ext(a).B)
    return out


@dataclass
class NoSymplecticCertificate:
    closed_dim: int
    common_radical: list

    @property
    def holds(self):
        """Every closed 2-form kills ``common_radical``, so none is non-degenerate."""
        return bool(self.common_radical)


def no_symplectic_certificate(L) -> NoSymplecticCertificate:
    forms = closed_two_forms(L)
    rows = [row for B in forms for row in B]
    radical = la.kernel_basis(rows, L.dim) if rows else [[ONE if k == i else ZERO for k in range(L.dim)] for i in range(L.dim)]
    return NoSymplecticCertificate(len(forms), radical)


# --- h6 --------------------------------------------------------------------------


def _J_from_a(a):
    """``J e_{2i-1} = Σ_j a_ij e_{2j}`` and ``J e_{2j} = -Σ_i (a⁻¹)_{ji} e_{2i-1}``."""
    ai = la.inverse(a)
    J = la.zeros(6, 6)
    for i in range(3):
        for j in range(3):
            J[2 * j + 1][2 * i] = a[i][j]
            J[2 * i][2 * j + 1] = -ai[j][i]
    return ComplexStructure(J)


@dataclass
class H6Certificate:
    grid_size: int
    swept: int
    closed_lagrangian_dim: int
    nijenhuis_cross_checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def holds(self):
        return self.swept > 0 and not self.violations


def _lagrangian_closed_basis(L):
    """Closed 2-forms vanishing on ``⟨e1,e3,e5⟩`` and ``⟨e2,e4,e6⟩``, as 3×3 blocks ``ω(e_{2i-1}, e_{2j})``."""
    base, fib = (0, 2, 4), (1, 3, 5)
    keys = [(b, f) for b in base for f in fib]
    n = L.dim
    all_keys = list(itertools.combinations(range(n), 2))
    D = d_matrix(L, 2)
    cols = [[D[r][all_keys.index(tuple(sorted(k)))] * (ONE if k[0] < k[1] else -ONE) for r in range(len(D))] for k in keys]
    ker = la.kernel_basis(la.from_columns(cols), len(keys))
    return [[[v[3 * i + j] for j in range(3)] for i in range(3)] for v in ker]


def _int_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            for j in range(c, n):
                a[i][j] = (p * a[i][j] - f * a[r][j]) // prev
        prev = p
        r += 1
        if r == m:
            break
    return r


def _integer_rows(vectors):
    from math import lcm

    out = []
    for v in vectors:
        k = lcm(*(Fraction(x).denominator for x in v))
        out.append([int(Fraction(x) * k) for x in v])
    return out


def _integrable_by_rho(base_br, rho, a):
    """``aᵀ[x_i, x_k] = ρ(x_i) aᵀe_k - ρ(x_k) aᵀe_i`` for all base pairs.

    For a totally real ``J x_i = Σ_j a_ij v_j`` this is ``N_J = 0`` on the base.
    """
    at = [[a[j][i] for j in range(3)] for i in range(3)]

    def mv(M, v):
        return [sum(M[r][c] * v[c] for c in range(3)) for r in range(3)]

    for i, k in ((0, 1), (0, 2), (1, 2)):
        lhs = mv(at, base_br[(i, k)])
        rhs = [p - q for p, q in zip(mv(rho[i], a[k]), mv(rho[k], a[i]))]
        if lhs != rhs:
            return False
    return True


def h6_certificate(L=None, values=HEIGHT_TWO, cross_check_every=997) -> H6Certificate:
    """Sweep ``J`` over ``a31 = a33 = 0``, ``a32 = a21``, other ``a_ij`` in ``values``.

    Here ``J e_{2i-1} = Σ_j a_ij e_{2j}``.  Every swept ``J`` is checked to be
    integrable.  The compatible closed Lagrangian forms are the blocks ``Bm``
    of the closed Lagrangian space with ``Bm aᵀ`` symmetric (``g`` symmetric).
    The certificate holds when ``b43, b52, b54, b56`` vanish on that whole
    solution space, which puts ``e5`` in the radical of every solution.
    All conditions are homogeneous in ``a``, so ``a`` is scaled to integers.
    Every ``cross_check_every``-th ``J`` is re-checked with the Nijenhuis tensor.
    """
    from .catalog import entry
    from .semidirect import split_semidirect

    L = L if L is not None else entry("h6-heis").total
    sd = split_semidirect(L, (0, 2, 4), (1, 3, 5))
    base_br = {
        (i, k): [int(c) for c in sd.base.basis_bracket(i, k)] for i, k in ((0, 1), (0, 2), (1, 2))
    }
    rho = [[[int(c) for c in row] for row in M] for M in sd.rep.rho]
    if any(Fraction(c).denominator != 1 for M in sd.rep.rho for row in M for c in row):
        raise ValueError("integer representation matrices expected")
    K = _lagrangian_closed_basis(L)
    Kint = _integer_rows([[x for row in Bm for x in row] for Bm in K])
    Kb = [[[v[3 * i + j] for j in range(3)] for i in range(3)] for v in Kint]
    # b43 = -Bm[1][1], b52 = Bm[2][0], b54 = Bm[2][1], b56 = Bm[2][2]
    F = [[Bm[1][1] for Bm in Kb], [Bm[2][0] for Bm in Kb], [Bm[2][1] for Bm in Kb], [Bm[2][2] for Bm in Kb]]
    scale = 1
    for v in values:
        scale = max(scale, Fraction(v).denominator)
    ivals = [int(Fraction(v) * scale) for v in values]
    cert = H6Certificate(0, 0, len(K))
    for a11, a12, a13, a21, a22, a23 in itertools.product(ivals, repeat=6):
        cert.grid_size += 1
        a = [[a11, a12, a13], [a21, a22, a23], [0, a21, 0]]
        if -a21 * (a11 * a23 - a13 * a21) == 0:
            continue
        cert.swept += 1
        if not _integrable_by_rho(base_br, rho, a):
            cert.violations.append(("not integrable", a))
            continue
        if cross_check_every and cert.swept % cross_check_every == 0:
            J = _J_from_a([[Fraction(x, scale) for x in r] for r in a])
            if not is_integrable(L, J, (0, 2, 4))[0]:
                cert.violations.append(("Nijenhuis disagrees", a))
            cert.nijenhuis_cross_checks += 1
        E = [
            [sum(Bm[i][t] * a[k][t] - Bm[k][t] * a[i][t] for t in range(3)) for Bm in Kb]
            for i, k in ((0, 1), (0, 2), (1, 2))
        ]
        if _int_rank(E + F) != _int_rank(E):
            cert.violations.append(("b43, b52, b54, b56 not forced to zero", a))
    return cert


def compatibility_via_block(a, Bm) -> bool:
    """``Bm aᵀ`` symmetric; compare with :func:`structures.is_compatible`."""
    G = la.matmul(Bm, la.transpose(a))
    return G == la.transpose(G)


def block_form(Bm) -> TwoForm:
    B = la.zeros(6, 6)
    for i in range(3):
        for j in range(3):
            B[2 * i][2 * j + 1] = Bm[i][j]
            B[2 * j + 1][2 * i] = -Bm[i][j]
    return TwoForm(B)


def block_compatibility_agrees(a, Bm) -> bool:
    return compatibility_via_block(a, Bm) == is_compatible(block_form(Bm), _J_from_a(a))


@dataclass
class ExternalCitation:
    subject: str
    claim: str
    source: str


H17_CITATION = ExternalCitation(
    "h17",
    "admits no invariant complex structure",
    "classification of complex structures on six-dimensional nilpotent Lie algebras (Salamon)",
)


__all__ = [
    "HEIGHT_TWO",
    "closed_two_forms",
    "NoSymplecticCertificate",
    "no_symplectic_certificate",
    "H6Certificate",
    "h6_certificate",
    "compatibility_via_block",
    "block_form",
    "block_compatibility_agrees",
    "ExternalCitation",
    "H17_CITATION",
]
