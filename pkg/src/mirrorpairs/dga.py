"""Differential Gerstenhaber algebras of complex and symplectic structures.

A :class:`DGAlgebra` is the exterior algebra on ``gen_dim`` degree-one
generators ``g_1..g_m`` with a Lie bracket on generators (extended to all
degrees by graded Leibniz) and a differential given on generators.

Complexified elements of ``𝔥 ⊕ 𝔥*`` are coordinate lists of length
``2 dim 𝔥``: vector part first, covector part second.  ``J`` acts on
covectors by ``(Jα)(w) = -α(Jw)``.  The natural pairing is
``⟨x + α, y + β⟩ = α(y) + β(x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .errors import (
    BracketMismatch,
    InconsistentSystem,
    NotIntegrable,
    NotProportional,
    NotSymplectic,
    ValidationError,
)
from .exterior import ExtElement, wedge, wedge_all
from .lie import ce_differential
from .scalars import I, conj, format_scalar
from .structures import is_closed, is_integrable, is_nondegenerate

ZERO = Fraction(0)
ONE = Fraction(1)


class DGAlgebra:
    """Exterior algebra on generators with a degree-one bracket and a differential."""

    def __init__(self, gen_dim, bracket_table, d_gen, label, generators=None):
        self.gen_dim = gen_dim
        # bracket_table[(j, k)] for j < k: coefficient list of [g_j • g_k]
        self.bracket_table = {key: list(v) for key, v in bracket_table.items() if any(v)}
        self.d_gen = list(d_gen)
        self.label = label
        self.generators = generators
        if len(self.d_gen) != gen_dim or any(a.degree != 2 or a.dim != gen_dim for a in self.d_gen):
            raise ValidationError("differential must send each generator to a 2-form")
        self._br_cache = {}

    # -- elements

    def gen(self, j, coeff=ONE):
        return ExtElement.basis(self.gen_dim, j, coeff=coeff)

    def element(self, coeffs):
        """Degree-one element ``Σ c_j g_j``."""
        return ExtElement(self.gen_dim, 1, {(j,): c for j, c in enumerate(coeffs) if c})

    def zero(self, degree):
        return ExtElement.zero(self.gen_dim, max(degree, 0))

    # -- differential

    def _d_mono(self, key):
        out = self.zero(len(key) + 1)
        for s, j in enumerate(key):
            left = [self.gen(i) for i in key[:s]]
            right = [self.gen(i) for i in key[s + 1:]]
            piece = wedge_all(left + [self.d_gen[j]] + right, self.gen_dim)
            out = out + (piece * (ONE if s % 2 == 0 else -ONE))
        return out

    def d(self, a: ExtElement) -> ExtElement:
        out = self.zero(a.degree + 1)
        for key, c in a.terms.items():
            out = out + self._d_mono(key) * c
        return out

    def d_matrix(self, k):
        """Matrix of ``d: Λᵏ → Λᵏ⁺¹`` in the sorted monomial bases."""
        src = list(itertools.combinations(range(self.gen_dim), k))
        dst = list(itertools.combinations(range(self.gen_dim), k + 1))
        pos = {key: r for r, key in enumerate(dst)}
        M = la.zeros(len(dst), len(src))
        for c, key in enumerate(src):
            for t, v in self._d_mono(key).terms.items():
                M[pos[t]][c] = v
        return M

    def betti_numbers(self):
        n = self.gen_dim
        ranks = [la.rank(self.d_matrix(k)) if k < n else 0 for k in range(n + 1)]
        out = []
        for k in range(n + 1):
            dim_k = len(list(itertools.combinations(range(n), k)))
            out.append(dim_k - ranks[k] - (ranks[k - 1] if k else 0))
        return out

    # -- bracket

    def _table(self, j, k):
        if j == k:
            return self.zero(1)
        if j < k:
            return self.element(self.bracket_table.get((j, k), []))
        return -self.element(self.bracket_table.get((k, j), []))

    def _br_mono(self, ka, kb):
        key = (ka, kb)
        if key in self._br_cache:
            return self._br_cache[key]
        p, q = len(ka), len(kb)
        if p == 0 or q == 0:
            res = self.zero(p + q - 1)
        elif p == 1 and q == 1:
            res = self._table(ka[0], kb[0])
        elif q >= 2:
            # [a • g∧c] = [a•g]∧c + (-1)^{(|a|-1)} g∧[a•c]
            g, c = (kb[0],), kb[1:]
            cmono = ExtElement.basis(self.gen_dim, *c)
            t1 = wedge(self._br_mono(ka, g), cmono)
            t2 = wedge(self.gen(kb[0]), self._br_mono(ka, c))
            res = t1 + (t2 if (p - 1) % 2 == 0 else -t2)
        else:
            # q == 1: [a•b] = -(-1)^{(|a|-1)(|b|-1)} [b•a]
            res = -self._br_mono(kb, ka)
        self._br_cache[key] = res
        return res

    def bracket(self, a: ExtElement, b: ExtElement) -> ExtElement:
        out = self.zero(a.degree + b.degree - 1)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                out = out + self._br_mono(ka, kb) * (ca * cb)
        return out

    # -- axioms

    def check_axioms(self):
        """Sweep ``d² = 0``, Leibniz, graded Jacobi and ``d`` a derivation of the bracket."""
        n = self.gen_dim
        fails = []
        for j in range(n):
            if not self.d(self.d_gen[j]).is_zero():
                fails.append(("d_squared", (j,)))
        for j in range(n):
            for key in itertools.combinations(range(n), 2):
                a, b = self.gen(j), ExtElement.basis(n, *key)
                lhs = self.d(wedge(a, b))
                rhs = wedge(self.d(a), b) - wedge(a, self.d(b))
                if lhs != rhs:
                    fails.append(("leibniz", (j,) + key))
        for i, j, k in itertools.combinations(range(n), 3):
            x, y, z = self.gen(i), self.gen(j), self.gen(k)
            s = (
                self.bracket(x, self.bracket(y, z))
                + self.bracket(y, self.bracket(z, x))
                + self.bracket(z, self.bracket(x, y))
            )
            if not s.is_zero():
                fails.append(("jacobi", (i, j, k)))
        for j in range(n):
            for k in range(n):
                a, b = self.gen(j), self.gen(k)
                lhs = self.d(self.bracket(a, b))
                rhs = self.bracket(self.d(a), b) + self.bracket(a, self.d(b))
                if lhs != rhs:
                    fails.append(("derivation", (j, k)))
        return AxiomReport(not fails, fails)

    def to_json(self):
        from .exterior import format_form

        return {
            "label": self.label,
            "gen_dim": self.gen_dim,
            "bracket_table": {
                f"{j + 1},{k + 1}": [format_scalar(c) for c in v] for (j, k), v in sorted(self.bracket_table.items())
            },
            "differential": [format_form(a) for a in self.d_gen],
            "d_matrices": [
                [[format_scalar(c) for c in row] for row in self.d_matrix(k)] for k in range(self.gen_dim)
            ],
            "betti": self.betti_numbers(),
        }


@dataclass
class AxiomReport:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


# --- the ambient 𝔥 ⊕ 𝔥* -------------------------------------------------------


def _ad(L, x):
    n = L.dim
    out = la.zeros(n, n)
    for i, xi in enumerate(x):
        if xi:
            for r, row in enumerate(L.ad_matrices()[i]):
                for c, v in enumerate(row):
                    if v:
                        out[r][c] += xi * v
    return out


def schouten_bracket(a, b, L):
    """``[x+α • y+β] = [x, y] + ι_x dβ - ι_y dα`` with ``ι_x dβ = -ad(x)ᵀβ``."""
    n = L.dim
    x, al, y, be = a[:n], a[n:], b[:n], b[n:]
    vec = [ZERO] * n
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj:
                    for k, c in enumerate(L.basis_bracket(i, j)):
                        if c:
                            vec[k] += xi * yj * c
    adx, ady = _ad(L, x), _ad(L, y)
    cov = [
        -sum((adx[k][z] * be[k] for k in range(n) if be[k]), ZERO)
        + sum((ady[k][z] * al[k] for k in range(n) if al[k]), ZERO)
        for z in range(n)
    ]
    return vec + cov


def extend_J(J):
    """``J`` on ``𝔥 ⊕ 𝔥*``: ``x ↦ Jx`` and ``α ↦ -Jᵀα``."""
    n = J.dim
    M = la.zeros(2 * n, 2 * n)
    for r in range(n):
        for c in range(n):
            M[r][c] = J.J[r][c]
            M[n + r][n + c] = -J.J[c][r]
    return M


def one_minus_iJ(J, v):
    """``(1 - iJ) v`` for ``v`` in ``𝔥 ⊕ 𝔥*``."""
    Jv = la.matvec(extend_J(J), v)
    return [a - I * b for a, b in zip(v, Jv)]


def natural_pairing(a, b):
    n = len(a) // 2
    return sum((a[n + k] * b[k] + b[n + k] * a[k] for k in range(n)), ZERO)


def _conj_vec(v):
    return [conj(c) for c in v]


def _unit(n, i):
    return [ONE if k == i else ZERO for k in range(n)]


def f1_basis(L, J):
    """Greedy basis of ``𝔣¹ = 𝔥^{(1,0)} ⊕ 𝔥^{*(0,1)}`` from ``(1-iJ)`` of basis elements."""
    n = L.dim
    out = []
    for k in range(2 * n):
        v = one_minus_iJ(J, _unit(2 * n, k))
        if la.span_dim(out + [v]) > len(out):
            out.append(v)
    return out


# --- complex DGA --------------------------------------------------------------


def _closure_table(L, gens):
    solver = la.CoordinateSolver(gens)
    m = len(gens)
    table = {}
    for j, k in itertools.combinations(range(m), 2):
        b = schouten_bracket(gens[j], gens[k], L)
        if not any(b):
            continue
        try:
            coords = solver.coords(b)
        except InconsistentSystem:
            raise ValidationError("span is not closed under the Schouten bracket", location=(j, k)) from None
        table[(j, k)] = coords
    return table


def build_complex_dga(L, J, generators=None) -> DGAlgebra:
    """``DGA(𝔥, J) = (Λ𝔣¹, Schouten, ∧, ∂̄)``.

    ``∂̄`` is the C-E differential of ``𝔣̄¹`` moved to ``𝔣¹`` through the natural
    pairing: with ``Ā_j = conj(g_j)`` and ``Q[l][m] = ⟨g_l, Ā_m⟩``,
    ``(∂̄g_l)(Ā_j, Ā_k) = -⟨g_l, [Ā_j • Ā_k]⟩``.
    """
    ok, bad = is_integrable(L, J)
    if not ok:
        raise NotIntegrable(f"N_J ≠ 0 on e{bad[0][0][0] + 1}, e{bad[0][0][1] + 1}", location=bad[0][0])
    gens = [list(g) for g in (generators if generators is not None else f1_basis(L, J))]
    m = len(gens)
    if m != L.dim or la.span_dim(gens) != m:
        raise ValidationError("f¹ generators must be dim 𝔥 independent elements")
    table = _closure_table(L, gens)
    bars = [_conj_vec(g) for g in gens]
    Q = [[natural_pairing(gens[l], bars[k]) for k in range(m)] for l in range(m)]
    # h_j = Σ_l R[l][j] g_l is dual to Ā_j: ⟨h_j, Ā_k⟩ = δ_jk
    R = la.transpose(la.inverse(Q))
    h = [ExtElement(m, 1, {(l,): R[l][j] for l in range(m) if R[l][j]}) for j in range(m)]
    d_gen = []
    for l in range(m):
        acc = ExtElement.zero(m, 2)
        for (j, k), coeffs in table.items():
            # [Ā_j • Ā_k] = Σ conj(c_t) Ā_t
            val = -sum((conj(c) * Q[l][t] for t, c in enumerate(coeffs) if c), ZERO)
            if val:
                acc = acc + wedge(h[j], h[k]) * val
        d_gen.append(acc)
    return DGAlgebra(m, table, d_gen, "complex", generators=gens)


def dbar_oracle_violations(L, A: DGAlgebra):
    """Independent check of ``(∂̄g)(Ā, B̄) = -⟨g, [Ā • B̄]⟩`` by direct evaluation."""
    gens = A.generators
    m = len(gens)
    bars = [_conj_vec(g) for g in gens]
    P = [[natural_pairing(gens[l], bars[k]) for k in range(m)] for l in range(m)]
    bad = []
    for l in range(m):
        form = A.d_gen[l]
        for j, k in itertools.combinations(range(m), 2):
            # (g_a ∧ g_b)(X, Y) = ⟨g_a, X⟩⟨g_b, Y⟩ - ⟨g_a, Y⟩⟨g_b, X⟩
            val = sum(
                (c * (P[a][j] * P[b][k] - P[a][k] * P[b][j]) for (a, b), c in form.terms.items()),
                ZERO,
            )
            want = -natural_pairing(gens[l], schouten_bracket(bars[j], bars[k], L))
            if val != want:
                bad.append((l, j, k))
    return bad


def conjugate_dga(A: DGAlgebra) -> DGAlgebra:
    """Conjugate-linear image of ``A``: generators, table and differential conjugated."""
    table = {key: [conj(c) for c in v] for key, v in A.bracket_table.items()}
    d_gen = [a.map_coeffs(conj) for a in A.d_gen]
    gens = [_conj_vec(g) for g in A.generators] if A.generators else None
    return DGAlgebra(A.gen_dim, table, d_gen, A.label + "-conjugate", generators=gens)


# --- symplectic DGA -----------------------------------------------------------


def build_symplectic_dga(K, omega) -> DGAlgebra:
    """``DGA(𝔨, ω) = (Λ𝔨*, [-•-]_ω, ∧, d)`` with ``[α•β]_ω = ω[ω⁻¹α, ω⁻¹β]``.

    Contraction ``x ↦ ω(x, -)`` has matrix ``Bᵀ``.
    """
    if not is_nondegenerate(omega) or not is_closed(K, omega):
        raise NotSymplectic("ω must be closed and non-degenerate")
    n = K.dim
    W = la.transpose(omega.B)
    Wi = la.inverse(W)
    pre = la.columns(Wi)
    table = {}
    for j, k in itertools.combinations(range(n), 2):
        v = la.matvec(W, K.bracket(pre[j], pre[k]))
        if any(v):
            table[(j, k)] = v
    d_gen = [ce_differential(K, ExtElement.basis(n, l)) for l in range(n)]
    return DGAlgebra(n, table, d_gen, "symplectic")


# --- φ and the pairing --------------------------------------------------------


def _phi_images(sd, hv, J):
    """``φ`` on the basis of ``𝔥^∨``, as elements of ``𝔥_ℂ ⊕ 𝔥*_ℂ``."""
    N = sd.total.dim
    m = len(sd.fiber_idx)
    imgs = [None] * N
    for i, bi in enumerate(hv.base_idx):
        imgs[bi] = one_minus_iJ(J, _unit(2 * N, sd.base_idx[i]))
    for k in range(m):
        slot = hv.fiber_idx[m - 1 - k] if hv.reversed_dual else hv.fiber_idx[k]
        imgs[slot] = one_minus_iJ(J, _unit(2 * N, N + sd.fiber_idx[k]))
    return imgs


@dataclass
class DGAMorphism:
    """Degree-one map; column ``a`` holds the image of source generator ``a``."""

    degree_one_map: list
    source: str = ""
    target: str = ""

    def apply(self, a: ExtElement) -> ExtElement:
        M = self.degree_one_map
        m = len(M)
        imgs = [ExtElement(m, 1, {(r,): M[r][c] for r in range(m) if M[r][c]}) for c in range(len(M[0]))]
        out = ExtElement.zero(m, a.degree)
        for key, c in a.terms.items():
            out = out + wedge_all([imgs[i] for i in key], m) * c
        return out


def phi_map(sd, J, A: DGAlgebra = None, hv=None) -> DGAMorphism:
    """``φ(x + v*) = (1-iJ)x + (1-iJ)v*`` from ``𝔥^∨_ℂ`` to ``𝔣¹``, checked to be a Lie isomorphism."""
    from .semidirect import dual_semidirect

    hv = hv if hv is not None else dual_semidirect(sd)
    A = A if A is not None else build_complex_dga(sd.total, J)
    imgs = _phi_images(sd, hv, J)
    solver = la.CoordinateSolver(A.generators)
    cols = []
    for v in imgs:
        try:
            cols.append(solver.coords(v))
        except InconsistentSystem:
            raise BracketMismatch(None, "φ image leaves 𝔣¹") from None
    M = la.from_columns(cols)
    if la.rank(M) != len(cols):
        raise BracketMismatch(None, "φ is not bijective")
    L = sd.total
    for a, b in itertools.combinations(range(len(imgs)), 2):
        lhs = la.matvec(M, hv.total.basis_bracket(a, b))
        rhs = solver.coords(schouten_bracket(imgs[a], imgs[b], L))
        if lhs != rhs:
            raise BracketMismatch((a, b), f"φ[{hv.total.labels[a]},{hv.total.labels[b]}] ≠ [φ•φ]")
    return DGAMorphism(M, "h_dual", "complex")


def pairing_check(sd, J, omega_J=None, hv=None):
    """The constant ``λ`` with ``⟨conj φ(a), φ(b)⟩ = λ ω_J(a, b)`` on all basis pairs."""
    from .semidirect import omega_from_J

    hv2, om = omega_from_J(sd, J, dual=hv)
    omega_J = omega_J if omega_J is not None else om
    imgs = _phi_images(sd, hv2, J)
    lam = None
    N = len(imgs)
    for a in range(N):
        for b in range(N):
            val = natural_pairing(_conj_vec(imgs[a]), imgs[b])
            w = omega_J.B[a][b]
            if not w:
                if val:
                    raise NotProportional(f"pairing is nonzero where ω_J vanishes at ({a + 1},{b + 1})")
                continue
            r = val / w
            if lam is None:
                lam = r
            elif r != lam:
                raise NotProportional(f"ratio changes at ({a + 1},{b + 1})")
    return lam


# --- isomorphism of DGAs ----------------------------------------------------


@dataclass
class DGAIsoResult:
    ok: bool
    constant: object = None
    failure: object = None

    def __bool__(self):
        return self.ok


def verify_dga_isomorphism(A: DGAlgebra, B: DGAlgebra, m: DGAMorphism) -> DGAIsoResult:
    """``m: A → B`` is bijective, preserves brackets up to one global constant
    ``c`` (``m[a•b] = c [ma•mb]``) and intertwines the differentials exactly."""
    M = m.degree_one_map
    n = A.gen_dim
    if B.gen_dim != n or len(M) != n or la.rank(M) != n:
        return DGAIsoResult(False, failure="map is not bijective")
    const = None
    for j, k in itertools.combinations(range(n), 2):
        lhs = m.apply(A.bracket(A.gen(j), A.gen(k)))
        rhs = B.bracket(m.apply(A.gen(j)), m.apply(A.gen(k)))
        if rhs.is_zero() or lhs.is_zero():
            if lhs.is_zero() != rhs.is_zero():
                return DGAIsoResult(False, const, ("bracket", (j, k)))
            continue
        key = next(iter(rhs.terms))
        c = lhs.terms.get(key, ZERO) / rhs.terms[key]
        if const is None:
            const = c
        if not c or c != const or lhs != rhs * const:
            return DGAIsoResult(False, const, ("bracket", (j, k)))
    for j in range(n):
        if m.apply(A.d_gen[j]) != B.d(m.apply(A.gen(j))):
            return DGAIsoResult(False, const, ("differential", (j,)))
    return DGAIsoResult(True, const if const is not None else ONE, None)


def mirror_morphism(sd, J, A: DGAlgebra = None, hv=None, omega_J=None) -> DGAMorphism:
    """``m = -(1/λ) φ ∘ ω_J⁻¹`` from ``DGA(𝔥^∨, ω_J)`` to ``DGA(𝔥, J)``.

    The factor makes ``m`` intertwine the differentials exactly; brackets then
    agree up to the constant ``-λ``.
    """
    from .semidirect import dual_semidirect, omega_from_J

    hv = hv if hv is not None else dual_semidirect(sd)
    if omega_J is None:
        _, omega_J = omega_from_J(sd, J, dual=hv)
    A = A if A is not None else build_complex_dga(sd.total, J)
    phi = phi_map(sd, J, A, hv)
    lam = pairing_check(sd, J, omega_J=omega_J, hv=hv)
    Winv = la.inverse(la.transpose(omega_J.B))
    M = la.scale(-ONE / lam, la.matmul(phi.degree_one_map, Winv))
    return DGAMorphism(M, "symplectic", "complex")


@dataclass
class MirrorCertificate:
    lam: object
    phi_ok: bool
    iso: DGAIsoResult
    betti_complex: list
    betti_symplectic: list
    axioms_complex: AxiomReport
    axioms_symplectic: AxiomReport
    dbar_oracle_ok: bool

    @property
    def ok(self):
        return (
            self.lam == 2 * I
            and self.phi_ok
            and bool(self.iso)
            and self.betti_complex == self.betti_symplectic
            and bool(self.axioms_complex)
            and bool(self.axioms_symplectic)
            and self.dbar_oracle_ok
        )

    def to_json(self):
        return {
            "lambda": format_scalar(self.lam) if self.lam is not None else None,
            "phi_isomorphism": self.phi_ok,
            "dga_isomorphism": bool(self.iso),
            "bracket_constant": format_scalar(self.iso.constant) if self.iso.constant is not None else None,
            "failure": self.iso.failure,
            "betti_complex": self.betti_complex,
            "betti_symplectic": self.betti_symplectic,
            "axioms_complex": bool(self.axioms_complex),
            "axioms_symplectic": bool(self.axioms_symplectic),
            "dbar_oracle": self.dbar_oracle_ok,
            "ok": self.ok,
        }


def mirror_certificate(sd, J) -> MirrorCertificate:
    """Everything needed to certify ``DGA(𝔥, J) ≅ DGA(𝔥^∨, ω_J)``."""
    from .semidirect import dual_semidirect, omega_from_J

    hv = dual_semidirect(sd)
    _, om = omega_from_J(sd, J, dual=hv)
    A = build_complex_dga(sd.total, J)
    S = build_symplectic_dga(hv.total, om)
    try:
        phi_map(sd, J, A, hv)
        phi_ok = True
    except BracketMismatch:
        phi_ok = False
    lam = pairing_check(sd, J, omega_J=om, hv=hv)
    m = mirror_morphism(sd, J, A, hv, om)
    return MirrorCertificate(
        lam,
        phi_ok,
        verify_dga_isomorphism(S, A, m),
        A.betti_numbers(),
        S.betti_numbers(),
        A.check_axioms(),
        S.check_axioms(),
        not dbar_oracle_violations(sd.total, A),
    )


__all__ = [
    "DGAlgebra",
    "DGAMorphism",
    "DGAIsoResult",
    "AxiomReport",
    "MirrorCertificate",
    "schouten_bracket",
    "extend_J",
    "one_minus_iJ",
    "natural_pairing",
    "f1_basis",
    "build_complex_dga",
    "dbar_oracle_violations",
    "conjugate_dga",
    "build_symplectic_dga",
    "phi_map",
    "pairing_check",
    "verify_dga_isomorphism",
    "mirror_morphism",
    "mirror_certificate",
]
