"""Invariant complex structures, two-forms and their compatibility.

``J`` acts on column vectors.  A two-form is stored as its antisymmetric
matrix ``B`` with ``ω(x, y) = xᵀ B y``, i.e. ``B[i][j] = ω(e_i, e_j)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import (
    Incompatible,
    NonRationalOrthonormalization,
    OddDimension,
    ValidationError,
)
from .exterior import ExtElement, wedge_all
from .lie import ce_differential
from .scalars import I, im_part, re_part

ZERO = Fraction(0)
ONE = Fraction(1)


def _unit(n, i):
    return [ONE if k == i else ZERO for k in range(n)]


class ComplexStructure:
    """Endomorphism ``J`` with ``J² = -1``."""

    __slots__ = ("J",)

    def __init__(self, J):
        self.J = [list(r) for r in J]
        n = len(self.J)
        sq = la.matmul(self.J, self.J)
        for i in range(n):
            for j in range(n):
                want = -ONE if i == j else ZERO
                if sq[i][j] != want:
                    raise ValidationError("J² ≠ -1", location=(i, j))

    @classmethod
    def standard(cls, n):
        """``J e_{2j-1} = e_{2j}`` on a space of dimension ``2n``."""
        m = la.zeros(2 * n, 2 * n)
        for j in range(n):
            m[2 * j + 1][2 * j] = ONE
            m[2 * j][2 * j + 1] = -ONE
        return cls(m)

    @property
    def dim(self):
        return len(self.J)

    def __call__(self, x):
        return la.matvec(self.J, x)

    def __eq__(self, other):
        return isinstance(other, ComplexStructure) and self.J == other.J

    def __repr__(self):
        return f"ComplexStructure({self.J!r})"


class TwoForm:
    """Antisymmetric bilinear form given by its matrix."""

    __slots__ = ("B",)

    def __init__(self, B):
        self.B = [list(r) for r in B]
        n = len(self.B)
        for i in range(n):
            for j in range(n):
                if self.B[i][j] != -self.B[j][i]:
                    raise ValidationError("two-form matrix is not antisymmetric", location=(i, j))

    @classmethod
    def from_ext(cls, a: ExtElement):
        if a.degree != 2:
            raise ValidationError(f"expected a 2-form, got degree {a.degree}")
        m = la.zeros(a.dim, a.dim)
        for (i, j), c in a.terms.items():
            m[i][j] += c
            m[j][i] -= c
        return cls(m)

    def to_ext(self) -> ExtElement:
        n = self.dim
        return ExtElement(n, 2, {(i, j): self.B[i][j] for i in range(n) for j in range(i + 1, n)})

    @property
    def dim(self):
        return len(self.B)

    def __call__(self, x, y):
        return sum((xi * bij * y[j] for i, xi in enumerate(x) if xi for j, bij in enumerate(self.B[i]) if bij), ZERO)

    def __eq__(self, other):
        return isinstance(other, TwoForm) and self.B == other.B

    def __repr__(self):
        return f"TwoForm({self.to_ext()})"


# --- complex structures -----------------------------------------------------


def nijenhuis(L, J: ComplexStructure, x, y):
    """``N_J(x,y) = [x,y] - [Jx,Jy] + J([x,Jy] + [Jx,y])``."""
    jx, jy = J(x), J(y)
    a = L.bracket(x, y)
    b = L.bracket(jx, jy)
    c = J([p + q for p, q in zip(L.bracket(x, jy), L.bracket(jx, y))])
    return [p - q + r for p, q, r in zip(a, b, c)]


def integrability_violations(L, J, base_idx=None):
    """Basis pairs where ``N_J`` is nonzero.

    With ``base_idx`` (a totally real subspace spanned by basis vectors) only
    base pairs are swept; ``N_J(x, Jy) = -J N_J(x, y)`` makes that enough.
    """
    n = L.dim
    idx = range(n) if base_idx is None else base_idx
    bad = []
    for i, j in itertools.combinations(idx, 2):
        v = nijenhuis(L, J, _unit(n, i), _unit(n, j))
        if any(v):
            bad.append(((i, j), v))
    return bad


def is_integrable(L, J, base_idx=None):
    bad = integrability_violations(L, J, base_idx)
    return not bad, bad


# --- two-forms --------------------------------------------------------------


def is_closed(L, omega: TwoForm) -> bool:
    return ce_differential(L, omega.to_ext()).is_zero()


def closedness_by_triples(L, omega: TwoForm) -> bool:
    """Independent path: ``ω([x,y],z) + ω([y,z],x) + ω([z,x],y) = 0`` on triples."""
    n = L.dim
    for i, j, k in itertools.combinations(range(n), 3):
        x, y, z = _unit(n, i), _unit(n, j), _unit(n, k)
        s = omega(L.bracket(x, y), z) + omega(L.bracket(y, z), x) + omega(L.bracket(z, x), y)
        if s:
            return False
    return True


def is_nondegenerate(omega: TwoForm) -> bool:
    if omega.dim % 2:
        raise OddDimension("a non-degenerate two-form needs even dimension")
    return la.det(omega.B) != 0


def top_power(omega: TwoForm) -> ExtElement:
    """``ω^m`` for ``dim = 2m``; nonzero iff ω is non-degenerate."""
    a = omega.to_ext()
    return wedge_all([a] * (omega.dim // 2), omega.dim)


def is_isotropic(omega: TwoForm, S) -> bool:
    return all(omega(u, v) == 0 for u, v in itertools.combinations(S, 2))


def is_lagrangian(omega: TwoForm, S) -> bool:
    return la.span_dim(S) * 2 == omega.dim and is_isotropic(omega, S)


def is_totally_real(J: ComplexStructure, S) -> bool:
    """``S ⊕ JS`` is the whole space."""
    return la.span_dim(list(S) + [J(v) for v in S]) == J.dim == 2 * la.span_dim(S)


def is_symplectic(L, omega) -> bool:
    return is_nondegenerate(omega) and is_closed(L, omega)


# --- compatibility ----------------------------------------------------------


@dataclass(frozen=True)
class PseudoMetric:
    G: tuple
    signature: tuple

    def as_list(self):
        return [list(r) for r in self.G]


def compatibility_metric(omega: TwoForm, J: ComplexStructure) -> PseudoMetric:
    """``g(x, y) = ω(x, Jy)`` after checking ``ω(Jx, Jy) = ω(x, y)``."""
    n = omega.dim
    for i in range(n):
        for j in range(i + 1, n):
            x, y = _unit(n, i), _unit(n, j)
            if omega(J(x), J(y)) != omega(x, y):
                raise Incompatible((i, j))
    G = la.matmul(omega.B, J.J)
    return PseudoMetric(tuple(tuple(r) for r in G), la.signature(G))


def is_compatible(omega, J) -> bool:
    try:
        compatibility_metric(omega, J)
    except Incompatible:
        return False
    return True


def is_pseudo_kahler(L, J, omega) -> bool:
    return (
        is_nondegenerate(omega)
        and is_closed(L, omega)
        and is_integrable(L, J)[0]
        and is_compatible(omega, J)
    )


def special_lagrangian_report(L, base, fiber, J, omega) -> dict:
    """Every clause of the special Lagrangian definition, evaluated separately."""
    jb = [J(v) for v in base]
    rep = {
        "nondegenerate": is_nondegenerate(omega),
        "closed": is_closed(L, omega),
        "integrable": is_integrable(L, J)[0],
        "compatible": is_compatible(omega, J),
        "base_totally_real": is_totally_real(J, base),
        "fiber_totally_real": is_totally_real(J, fiber),
        "J_base_is_fiber": la.span_dim(fiber + jb) == len(fiber) == la.span_dim(jb),
        "base_lagrangian": is_lagrangian(omega, base),
        "fiber_lagrangian": is_lagrangian(omega, fiber),
    }
    rep["special_lagrangian"] = all(rep.values())
    return rep


def is_special_lagrangian(sd, J, omega) -> bool:
    n = sd.total.dim
    base = [_unit(n, i) for i in sd.base_idx]
    fiber = [_unit(n, i) for i in sd.fiber_idx]
    return special_lagrangian_report(sd.total, base, fiber, J, omega)["special_lagrangian"]


# --- complex volume form ----------------------------------------------------


@dataclass
class VolumeReport:
    n: int
    orthonormal: bool
    Phi: ExtElement
    re_on_fiber: ExtElement
    im_on_fiber: ExtElement
    applicable: bool

    @property
    def holds(self):
        """Re Φ|_V = 0 and Im Φ|_V a volume form (only asserted for odd n)."""
        return self.re_on_fiber.is_zero() and not self.im_on_fiber.is_zero()


def _is_rational_square(q):
    from math import isqrt

    q = abs(Fraction(q))
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


def volume_form_check(sd, J: ComplexStructure, g: PseudoMetric) -> VolumeReport:
    """Build ``Φ = u^1 ∧ … ∧ u^n`` with ``u^j = ε^j + i J*ε^j`` and restrict to V.

    ``ε^j`` is the dual coframe of a g-orthogonal basis of the base, extended
    by zero on the fiber; ``J*ε = -ε∘J``.  Orthogonal rather than orthonormal
    coframes only rescale Φ, which leaves both restriction claims intact.
    """
    n_tot = sd.total.dim
    base, fiber = list(sd.base_idx), list(sd.fiber_idx)
    G = g.as_list()
    gb = [[G[i][j] for j in base] for i in base]
    diag, P = la.congruence_diagonalize(gb)
    orthonormal = all(_is_rational_square(d) for d in diag)
    # basis vectors f_k = Σ_a P[a][k] x_{base[a]}; coframe ε^k is its dual on the base
    Pinv = la.inverse(P)
    us = []
    for k in range(len(base)):
        eps = [ZERO] * n_tot
        for a, bi in enumerate(base):
            eps[bi] = Pinv[k][a]
        jeps = [-sum((eps[r] * J.J[r][c] for r in range(n_tot)), ZERO) for c in range(n_tot)]
        us.append(ExtElement.from_covector([e + I * je for e, je in zip(eps, jeps)]))
    Phi = wedge_all(us, n_tot)
    fset = set(fiber)
    on_fiber = {k: c for k, c in Phi.terms.items() if set(k) <= fset}
    re_f = ExtElement(n_tot, Phi.degree, {k: re_part(c) for k, c in on_fiber.items()})
    im_f = ExtElement(n_tot, Phi.degree, {k: im_part(c) for k, c in on_fiber.items()})
    return VolumeReport(len(base), orthonormal, Phi, re_f, im_f, applicable=len(base) % 2 == 1)


def require_orthonormal(report: VolumeReport):
    if not report.orthonormal:
        raise NonRationalOrthonormalization("base metric has no rational orthonormal basis")
    return report


__all__ = [
    "ComplexStructure",
    "TwoForm",
    "PseudoMetric",
    "VolumeReport",
    "nijenhuis",
    "integrability_violations",
    "is_integrable",
    "is_closed",
    "closedness_by_triples",
    "is_nondegenerate",
    "top_power",
    "is_isotropic",
    "is_lagrangian",
    "is_totally_real",
    "is_symplectic",
    "compatibility_metric",
    "is_compatible",
    "is_pseudo_kahler",
    "special_lagrangian_report",
    "is_special_lagrangian",
    "volume_form_check",
    "require_orthonormal",
]
