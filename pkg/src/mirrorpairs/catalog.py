"""The concrete zoo: representation matrices, the family ``h_{a,b}`` and examples.

Six-dimensional entries are semi-direct products ``𝔤 ⋉_ρ V`` with base
``𝔤 = ⟨e1, e3, e5⟩`` (abelian, or Heisenberg with ``[e1, e3] = -e5``) and
fiber ``V = ⟨e2, e4, e6⟩``.  Every ``ρ(e_i)`` is minus a strictly lower
triangular matrix on the ordered fiber basis.  Names follow the usual
``h1 … h19`` labels of six-dimensional nilpotent Lie algebras; the
structure equations are always generated from the matrices below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .errors import UnknownEntry
from .exterior import parse_form
from .isomorphism import IsoWitness, find_isomorphism, verify_isomorphism
from .lie import LieAlgebra, change_basis, fingerprint
from .semidirect import (
    Connection,
    Representation,
    build_semidirect,
    dual_semidirect,
    interleaved_layout,
    special_lagrangian_from_connection,
    split_semidirect,
)
from .shorthand import parse_shorthand
from .structures import ComplexStructure, TwoForm

ZERO = Fraction(0)
ONE = Fraction(1)


def _lower(a=0, b=0, c=0):
    """``-[[0,0,0],[a,0,0],[c,b,0]]``."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return [[ZERO, ZERO, ZERO], [-a, ZERO, ZERO], [-c, -b, ZERO]]


def _zero3():
    return la.zeros(3, 3)


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    name: str
    base_kind: str
    source_eq: str
    rho: tuple
    expected_dual: str
    params: tuple = ()

    def matrices(self):
        return [[list(r) for r in M] for M in self.rho]


def _entry(key, name, kind, eq, mats, dual, params=()):
    return CatalogEntry(key, name, kind, eq, tuple(tuple(tuple(r) for r in M) for M in mats), dual, params)


def _h19_matrices(b=0, e=1, f=0):
    # a = 1, d = 0 after the normalisation of the Heisenberg-base case
    r5 = _zero3()
    r5[2][0] = Fraction(e)
    return [_lower(1, b, 0), [[ZERO] * 3, [ZERO] * 3, [-Fraction(f), -Fraction(e), ZERO]], r5]


H19_PARAMS = (("b", 0), ("e", 1), ("f", 0))

ENTRIES = {
    e.key: e
    for e in [
        _entry("h3", "h3", "abelian", "h3", [_lower(0, 1, 0), _lower(0, 0, 1), _zero3()], "h6"),
        _entry("h8-ab", "h8", "abelian", "h8-a", [_zero3(), _lower(0, 0, 1), _zero3()], "h8"),
        _entry("h6-ab", "h6", "abelian", "h6-a", [_lower(1, 0, 0), _lower(0, 0, 1), _zero3()], "h3"),
        _entry("h17", "h17", "abelian", "h17", [_lower(1, 1, 0), _zero3(), _zero3()], "h17"),
        _entry("h9", "h9", "abelian", "h9", [_lower(1, 1, 0), _lower(0, 0, 1), _zero3()], "h9"),
        _entry("h6-heis", "h6", "heisenberg", "h6-h", [_lower(1, 0, 0), _zero3(), _zero3()], "h6"),
        _entry("h7", "h7", "heisenberg", "h7", [_lower(1, 0, 0), _lower(0, 0, 1), _zero3()], "h4"),
        _entry("h10", "h10", "heisenberg", "h10", [_lower(1, 1, 0), _zero3(), _zero3()], "h10"),
        _entry("h11", "h11", "heisenberg", "h11", [_lower(1, 1, 0), _lower(0, 0, 1), _zero3()], "h11"),
        _entry("h19", "h19", "heisenberg", "h19", _h19_matrices(), "h19", H19_PARAMS),
        _entry("h4", "h4", "heisenberg", "h4", [_lower(0, 1, 0), _lower(0, 0, 1), _zero3()], "h7"),
        _entry("h8-heis", "h8", "heisenberg", "h8", [_zero3(), _zero3(), _zero3()], "h8"),
    ]
}

# table rows in display order: abelian block, then Heisenberg block
ABELIAN_ROWS = ("h3", "h6-ab", "h8-ab", "h9", "h17")
HEISENBERG_ROWS = ("h4", "h6-heis", "h7", "h8-heis", "h10", "h11", "h19")

# which construction stands for each name when identifying an algebra
CANONICAL = {
    "h3": "h3",
    "h4": "h4",
    "h6": "h6-ab",
    "h7": "h7",
    "h8": "h8-ab",
    "h9": "h9",
    "h10": "h10",
    "h11": "h11",
    "h17": "h17",
    "h19": "h19",
}

# standard normal forms, used only as targets for explicit bases written
# against them; catalog identifications never rely on these
REFERENCE = {
    "h3": "(0,0,0,0,0,12+34)",
    "h4": "(0,0,0,0,12,14+23)",
    "h6": "(0,0,0,0,12,13)",
    "h7": "(0,0,0,12,13,23)",
    "h8": "(0,0,0,0,0,12)",
    "h9": "(0,0,0,0,12,14+25)",
    "h10": "(0,0,0,12,13,14)",
    "h11": "(0,0,0,12,13,14+23)",
    "h17": "(0,0,0,0,12,15)",
    "h19+": "(0,0,0,12,23,14+35)",
    "h19-": "(0,0,0,12,23,14-35)",
}


def base_algebra(kind) -> LieAlgebra:
    if kind == "abelian":
        return LieAlgebra.abelian(3)
    if kind == "heisenberg":
        return LieAlgebra(3, {(0, 1): {2: -ONE}}, labels=["e1", "e3", "e5"])
    raise UnknownEntry(f"unknown base kind {kind!r}")


def lookup(name, base_kind=None) -> CatalogEntry:
    """Resolve ``h9``, ``h6-ab`` or ``("h6", "heisenberg")`` to an entry."""
    if name in ENTRIES and (base_kind is None or ENTRIES[name].base_kind == base_kind):
        return ENTRIES[name]
    hits = [e for e in ENTRIES.values() if e.name == name and (base_kind is None or e.base_kind == base_kind)]
    if len(hits) == 1:
        return hits[0]
    if len(hits) > 1:
        raise UnknownEntry(f"{name} is listed with several bases; pass base_kind (abelian or heisenberg)")
    raise UnknownEntry(f"no catalog entry {name!r}" + (f" with {base_kind} base" if base_kind else ""))


def entry(name, base_kind=None):
    """Build the semi-direct product of a catalog entry (interleaved layout)."""
    if name == "h1":
        return h1_example()[0]
    e = lookup(name, base_kind)
    rep = Representation(base_algebra(e.base_kind), e.matrices(), 3)
    return build_semidirect(rep, interleaved_layout(3))


def all_constructions():
    """The twelve semi-direct entries plus ``h1``."""
    out = {key: entry(key) for key in ENTRIES}
    out["h1"] = entry("h1")
    return out


@lru_cache(maxsize=None)
def catalog_algebra(name) -> LieAlgebra:
    if name == "h1":
        return LieAlgebra.abelian(6)
    return entry(CANONICAL[name]).total


def reference_algebra(name) -> LieAlgebra:
    return parse_shorthand(REFERENCE[name])


# --- identification -----------------------------------------------------------


@dataclass
class Identification:
    name: str | None
    witness: IsoWitness | None
    reason: str = ""
    candidates: list = field(default_factory=list)

    @property
    def found(self):
        return self.name is not None


def identify(L, budget=200000, seed=None, hints=None) -> Identification:
    """Find the catalog name of ``L`` with a witness ``catalog → L``.

    ``hints`` maps names to candidate witness matrices.
    """
    fp = fingerprint(L)
    names = ["h1"] + list(CANONICAL)
    cands = [n for n in names if fingerprint(catalog_algebra(n)) == fp]
    reasons = []
    for n in cands:
        w = find_isomorphism(L, catalog_algebra(n), budget=budget, hints=(hints or {}).get(n, ()), seed=seed)
        if w:
            return Identification(n, w, candidates=cands)
        reasons.append(f"{n}: {w.reason}")
    if not cands:
        return Identification(None, None, "no catalog algebra shares the fingerprint", cands)
    return Identification(None, None, "; ".join(reasons), cands)


@dataclass
class DualRow:
    key: str
    name: str
    base_kind: str
    expected: str
    found: str | None
    witness: IsoWitness | None
    involution: bool
    reason: str = ""

    @property
    def status(self):
        if self.found is None:
            return "witness-not-found"
        return "verified" if self.found == self.expected and self.involution else "refuted"


def reproduce_dual_table(budget=200000, seed=None):
    """Identify ``𝔥^∨`` for every semi-direct entry."""
    rows = []
    for key in ABELIAN_ROWS + HEISENBERG_ROWS:
        e = ENTRIES[key]
        sd = entry(key)
        hv = dual_semidirect(sd)
        involution = dual_semidirect(hv).total == sd.total
        ident = identify(hv.total, budget=budget, seed=seed)
        rows.append(DualRow(key, e.name, e.base_kind, e.expected_dual, ident.name, ident.witness, involution, ident.reason))
    return rows


# --- the family h_{a,b} --------------------------------------------------------

FAMILY_SHORTHAND = "(0,0,0,a12,b13,c14+d23)"
FAMILY_OMEGA = "e16-e25+e34"


@dataclass
class FamilyPoint:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    sd: object
    J: ComplexStructure
    omega: TwoForm

    @property
    def algebra(self):
        return self.sd.total


def family_algebra(a, b, c, d) -> LieAlgebra:
    return parse_shorthand(FAMILY_SHORTHAND, {"a": Fraction(a), "b": Fraction(b), "c": Fraction(c), "d": Fraction(d)})


def family_point(a, b, c=None, d=None) -> FamilyPoint:
    """``(0,0,0,a12,b13,c14+d23)`` with ``J e_{2j-1} = e_{2j}`` and ``ω = e16 - e25 + e34``.

    Omitting ``c`` and ``d`` puts the point on the special Lagrangian family
    ``c = a + 2b``, ``d = -(a + b)``.
    """
    a, b = Fraction(a), Fraction(b)
    c = a + 2 * b if c is None else Fraction(c)
    d = -(a + b) if d is None else Fraction(d)
    sd = split_semidirect(family_algebra(a, b, c, d), (0, 2, 4), (1, 3, 5))
    return FamilyPoint(a, b, c, d, sd, ComplexStructure.standard(3), TwoForm.from_ext(parse_form(FAMILY_OMEGA, 6)))


def _basis_matrix(spec):
    """Columns from ``[{1: c, ...}, ...]`` with 1-based indices."""
    W = la.zeros(6, 6)
    for col, coeffs in enumerate(spec):
        for i, c in coeffs.items():
            W[i - 1][col] = Fraction(c)
    return W


def h11_witness(a, b, c, d):
    """Diagonal rational basis of ``h_{a,b,c,d}`` realising the h11 normal form.

    Valid when ``a, b, c, d ≠ 0``; replaces the cube-root scaling, which is
    irrational at most rational points.
    """
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    return _basis_matrix([{1: 1}, {2: 1}, {3: c * a / d}, {4: a}, {5: b * c * a / d}, {6: c * a}])


def h11_cube_root_witness(a, b, r):
    """The basis ``{r e1, e2/r, e3/r, a e4, b e5, r a(a+2b) e6}``; needs ``r³ = -(a+b)/(a(a+2b))``."""
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    return _basis_matrix([{1: r}, {2: 1 / r}, {3: 1 / r}, {4: a}, {5: b}, {6: r * a * (a + 2 * b)}])


# --- constraint sweeps ------------------------------------------------------------

GRID9 = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "-1/3", "0", "1/3", "1/2", "1", "2"))
CD_VALUES = tuple(Fraction(x) for x in ("-1", "0", "1/2", "2"))


@dataclass
class FamilySweep:
    points: int
    closed: int
    integrable: int
    closed_mismatches: list = field(default_factory=list)
    integrable_mismatches: list = field(default_factory=list)
    signatures: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.closed_mismatches and not self.integrable_mismatches


def family_sweep(ab_values=GRID9, cd_values=CD_VALUES) -> FamilySweep:
    """Closedness of ``ω`` and integrability of ``J`` over ``(a, b)`` with free ``(c, d)``.

    ``(c, d)`` runs over ``cd_values`` together with ``d = -(a+b)`` and
    ``c = b - d`` so both conditions are hit at every ``(a, b)``.
    """
    from .structures import compatibility_metric, is_closed, is_integrable

    out = FamilySweep(0, 0, 0)
    for a in ab_values:
        for b in ab_values:
            ds = sorted(set(cd_values) | {-(a + b)})
            for d in ds:
                for c in sorted(set(cd_values) | {b - d}):
                    p = family_point(a, b, c, d)
                    out.points += 1
                    closed = is_closed(p.algebra, p.omega)
                    integ = is_integrable(p.algebra, p.J, (0, 2, 4))[0]
                    out.closed += closed
                    out.integrable += integ
                    if closed != (a + b + d == 0):
                        out.closed_mismatches.append((a, b, c, d))
                    if integ != (b - c - d == 0):
                        out.integrable_mismatches.append((a, b, c, d))
            p = family_point(a, b)
            sig = compatibility_metric(p.omega, p.J).signature
            out.signatures[(a, b)] = sig
    return out


@dataclass
class DualityCheck:
    point: tuple
    J_integrable: bool
    omega_J_closed: bool
    omega_closed: bool
    J_omega_integrable: bool
    J_round_trip: bool
    omega_round_trip: bool

    @property
    def ok(self):
        return (
            self.J_integrable == self.omega_J_closed
            and self.omega_closed == self.J_omega_integrable
            and self.J_round_trip
            and self.omega_round_trip
        )


def duality_check(a, b, c, d) -> DualityCheck:
    """``ω_J`` closed iff ``J`` integrable, ``J_ω`` integrable iff ``ω`` closed, and both round trips."""
    from .semidirect import J_from_omega, omega_from_J
    from .structures import is_closed, is_integrable

    p = family_point(a, b, c, d)
    hv, omJ = omega_from_J(p.sd, p.J)
    _, Jom = J_from_omega(p.sd, p.omega, dual=hv)
    _, J_back = J_from_omega(hv, omJ)
    _, om_back = omega_from_J(hv, Jom)
    return DualityCheck(
        (p.a, p.b, p.c, p.d),
        is_integrable(p.algebra, p.J)[0],
        is_closed(hv.total, omJ),
        is_closed(p.algebra, p.omega),
        is_integrable(hv.total, Jom)[0],
        J_back == p.J,
        om_back == p.omega,
    )


# both conditions, closedness only, integrability only, neither
DUALITY_POINTS = ((1, 1, 3, -2), (1, 0, 1, -1), (1, 1, 0, -2), (1, 1, 1, 0), (1, 2, 0, 0))


@dataclass
class StatedWitness:
    label: str
    algebra: LieAlgebra
    target: str
    matrix: list
    ok: bool


def stated_witness_checks():
    """Explicit bases from the text, each checked against its normal form."""
    checks = [
        ("h_{1,0} ≅ h9", family_point(1, 0).algebra, "h9", [{2: 1}, {1: 1}, {5: 1}, {3: 1}, {4: -1}, {6: -1}]),
        ("h_{-1,0} ≅ h9", family_point(-1, 0).algebra, "h9", [{2: 1}, {1: 1}, {5: 1}, {3: 1}, {4: -1}, {6: -1}]),
        ("h_{0,1} ≅ h4", family_point(0, 1).algebra, "h4", [{1: 1}, {3: 1}, {2: 1}, {4: Fraction(1, 2)}, {5: 1}, {6: 1}]),
        # rational rays: the irrational scalings of the text multiplied out
        ("h_{-1,1} ≅ h10", family_point(-1, 1).algebra, "h10", [{1: 1}, {2: 1}, {3: 1}, {4: -1}, {5: 1}, {6: -1}]),
        ("h_{-2,1} ≅ h7", family_point(-2, 1).algebra, "h7", [{1: 1}, {2: 1}, {3: 1}, {4: -2}, {5: 1}, {6: 1}]),
        (
            "(0,0,0,12,13,34+25) ≅ h19+",
            parse_shorthand("(0,0,0,12,13,34+25)"),
            "h19+",
            [{2: 1, 3: -1}, {1: 1}, {2: 1, 3: 1}, {4: -1, 5: 1}, {4: 1, 5: 1}, {6: 2}],
        ),
    ]
    out = []
    for label, L, target, spec in checks:
        W = _basis_matrix(spec)
        out.append(StatedWitness(label, L, target, W, verify_isomorphism(L, reference_algebra(target), W)))
    a, b, r = ONE, Fraction(-7, 6), Fraction(-1, 2)
    L = family_point(a, b).algebra
    W = h11_cube_root_witness(a, b, r)
    out.append(StatedWitness("h_{1,-7/6} ≅ h11 (r = -1/2)", L, "h11", W, verify_isomorphism(L, reference_algebra("h11"), W)))
    return out


# --- scaling law ----------------------------------------------------------------


def scaling_matrix(s, eps):
    s, eps = Fraction(s), Fraction(eps)
    m = la.zeros(6, 6)
    for i, v in enumerate((s, s, eps, eps, 1 / s, 1 / s)):
        m[i][i] = v
    return m


@dataclass
class ScalingCheck:
    a: Fraction
    b: Fraction
    s: Fraction
    eps: Fraction
    transported_ok: bool
    preserves_J: bool
    preserves_omega: bool

    @property
    def ok(self):
        return self.transported_ok and self.preserves_J and self.preserves_omega


def scaling_check(a, b, s, eps) -> ScalingCheck:
    """``ψ = diag(s, s, ε, ε, 1/s, 1/s)`` sends ``h_{a,b}`` to ``h_{ε a/s², ε b/s²}``."""
    p = family_point(a, b)
    psi = scaling_matrix(s, eps)
    moved = change_basis(p.algebra, la.inverse(psi))
    k = Fraction(eps) / Fraction(s) ** 2
    target = family_point(k * p.a, k * p.b).algebra
    J = p.J.J
    pJ = la.matmul(psi, la.matmul(J, la.inverse(psi))) == J
    pw = la.matmul(la.transpose(psi), la.matmul(p.omega.B, psi)) == p.omega.B
    return ScalingCheck(p.a, p.b, Fraction(s), Fraction(eps), moved == target, pJ, pw)


# --- explicit examples ------------------------------------------------------------


def h1_example(a=(1, 1, 1), rho=None):
    """``ℝⁿ ⋉ ℝⁿ`` with diagonal ``ρ(e_i)``, ``J e_i = v_i`` and ``ω_a = Σ a_i e^i ∧ v^i``."""
    n = len(a)
    rho = rho if rho is not None else (0,) * n
    mats = []
    for i in range(n):
        M = la.zeros(n, n)
        M[i][i] = Fraction(rho[i])
        mats.append(M)
    sd = build_semidirect(Representation(LieAlgebra.abelian(n), mats, n), interleaved_layout(n))
    J = ComplexStructure.standard(n)
    B = la.zeros(2 * n, 2 * n)
    for i in range(n):
        B[2 * i][2 * i + 1] = Fraction(a[i])
        B[2 * i + 1][2 * i] = -Fraction(a[i])
    return sd, J, TwoForm(B)


def solvable_example():
    """Solvable base ``[e1,e3] = -e5``, ``[e1,e5] = e3`` acting by a rotation on ``⟨e2,e4,e6⟩``."""
    g = LieAlgebra(3, {(0, 1): {2: -ONE}, (0, 2): {1: ONE}}, labels=["e1", "e3", "e5"])
    gamma = [[[ZERO, ZERO, ZERO], [ZERO, ZERO, ONE], [ZERO, -ONE, ZERO]], _zero3(), _zero3()]
    sd = build_semidirect(Representation(g, gamma, 3), interleaved_layout(3))
    return sd, ComplexStructure.standard(3), TwoForm.from_ext(parse_form("e12+e34+e56", 6))


def four_dim_example():
    """``[e1, e2] = -e3`` with base ``⟨e2, e4⟩``, fiber ``⟨e1, e3⟩`` and ``ω = e14 + e32``."""
    L = LieAlgebra(4, {(0, 1): {2: -ONE}})
    sd = split_semidirect(L, (1, 3), (0, 2))
    return sd, ComplexStructure.standard(2), TwoForm.from_ext(parse_form("e14+e32", 4))


def h8_example():
    """Flat torsion-free ``γ(e3)e3 = e1`` on abelian ``⟨e1, e3, e5⟩`` with ``G`` swapping e1, e3."""
    g = LieAlgebra.abelian(3)
    gamma = [_zero3(), _zero3(), _zero3()]
    gamma[1][0][1] = ONE
    G = [[ZERO, ONE, ZERO], [ONE, ZERO, ZERO], [ZERO, ZERO, ONE]]
    sd, J, omega = special_lagrangian_from_connection(Connection(g, gamma), G, interleaved_layout(3))
    return sd, J, omega, G


# --- example certificates ----------------------------------------------------------

H1_TUPLES = (
    (1, 1),
    (1, -1),
    (-2, Fraction(-1, 3)),
    (Fraction(1, 2), 3),
    (1, 1, 1),
    (1, -1, 2),
    (-1, -1, -1),
    (2, Fraction(1, 2), -3),
    (1, 1, 1, 1),
    (1, 2, 3, -1),
    (-1, -2, Fraction(-1, 2), -3),
    (1, -1, 1, -1),
)
H1_RHO = (1, 0, -2, 3)


@dataclass
class H1Check:
    a: tuple
    rho: tuple
    symplectic: bool
    integrable: bool
    signature: tuple

    @property
    def kahler(self):
        """``g`` definite; for all ``a_i < 0`` this is Kähler for ``-ω``."""
        p, q = self.signature
        return p == 0 or q == 0

    @property
    def ok(self):
        same_sign = all(x > 0 for x in self.a) or all(x < 0 for x in self.a)
        return self.symplectic and self.integrable and self.kahler == same_sign


def h1_check(a, rho=None) -> H1Check:
    from .structures import compatibility_metric, is_integrable, is_symplectic

    rho = tuple(H1_RHO[: len(a)]) if rho is None else tuple(rho)
    sd, J, omega = h1_example(a, rho)
    g = compatibility_metric(omega, J)
    return H1Check(tuple(Fraction(x) for x in a), rho, is_symplectic(sd.total, omega), is_integrable(sd.total, J)[0], g.signature)


def _labels(sd, dual):
    """``e1, e2, …`` on ``𝔥``; on ``𝔥^∨`` the fiber slots become ``e^2, e^4, …``."""
    n = sd.total.dim
    return [f"e^{k + 1}" if dual and k in sd.fiber_idx else f"e{k + 1}" for k in range(n)]


def _colabels(sd, dual):
    """Dual coframe labels: ``e^k`` on base slots, ``e_k`` on ``V*`` slots of ``𝔥^∨``."""
    n = sd.total.dim
    return [f"e_{k + 1}" if dual and k in sd.fiber_idx else f"e^{k + 1}" for k in range(n)]


def bracket_lines(L, labels):
    """``[x,y] = z`` for every nonzero basis bracket, in index order."""
    from .scalars import format_scalar

    out = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            v = L.basis_bracket(i, j)
            if any(v):
                out.append(f"[{labels[i]},{labels[j]}] = {_combo(v, labels, format_scalar)}")
    return out


def _combo(v, labels, fmt):
    parts = []
    for k, c in enumerate(v):
        if not c:
            continue
        if c == 1:
            t = labels[k]
        elif c == -1:
            t = "-" + labels[k]
        else:
            t = f"{fmt(c)}{labels[k]}"
        parts.append(t)
    if not parts:
        return "0"
    s = parts[0]
    for t in parts[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


def form_string(omega, colabels):
    """``Σ B[i][j] c^i∧c^j`` over ``i < j``."""
    from .scalars import format_scalar

    terms = []
    n = omega.dim
    for i in range(n):
        for j in range(i + 1, n):
            c = omega.B[i][j]
            if c:
                terms.append((c, f"{colabels[i]}∧{colabels[j]}"))
    if not terms:
        return "0"
    out = ""
    for k, (c, w) in enumerate(terms):
        mag = "" if abs(c) == 1 else format_scalar(abs(c))
        sign = ("-" if c < 0 else "") if k == 0 else (" - " if c < 0 else " + ")
        out += f"{sign}{mag}{w}"
    return out


def complex_lines(J, sd, labels):
    """``J(x) = y`` for the base vectors of ``sd``."""
    from .scalars import format_scalar

    return [f"J({labels[i]}) = {_combo([row[i] for row in J.J], labels, format_scalar)}" for i in sd.base_idx]


EXPECTED_SOLVABLE_DUAL = ("[e1,e3] = -e5", "[e1,e^6] = -e^4", "[e1,e5] = e3", "[e1,e^4] = e^6")
EXPECTED_SOLVABLE_OMEGA_J = "e^1∧e_2 + e^3∧e_4 + e^5∧e_6"
EXPECTED_SOLVABLE_J_OMEGA = ("J(e1) = e^2", "J(e3) = e^4", "J(e5) = e^6")


@dataclass
class SolvableCheck:
    kahler: bool
    signature: tuple
    dual_brackets: list
    omega_J: str
    J_omega: list
    omega_J_closed: bool
    J_omega_integrable: bool

    @property
    def brackets_match(self):
        return sorted(self.dual_brackets) == sorted(EXPECTED_SOLVABLE_DUAL)

    @property
    def omega_J_matches(self):
        return self.omega_J == EXPECTED_SOLVABLE_OMEGA_J

    @property
    def J_omega_matches(self):
        return list(self.J_omega) == list(EXPECTED_SOLVABLE_J_OMEGA)


def solvable_check() -> SolvableCheck:
    from .semidirect import J_from_omega, omega_from_J
    from .structures import compatibility_metric, is_closed, is_integrable, is_pseudo_kahler

    sd, J, omega = solvable_example()
    sig = compatibility_metric(omega, J).signature
    hv, omJ = omega_from_J(sd, J)
    _, Jom = J_from_omega(sd, omega, dual=hv)
    lab = _labels(hv, True)
    return SolvableCheck(
        is_pseudo_kahler(sd.total, J, omega) and sig == (6, 0),
        sig,
        bracket_lines(hv.total, lab),
        form_string(omJ, _colabels(hv, True)),
        complex_lines(Jom, hv, lab),
        is_closed(hv.total, omJ),
        is_integrable(hv.total, Jom)[0],
    )


def _signed_permutations(n):
    import itertools

    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            W = la.zeros(n, n)
            for col, (row, sg) in enumerate(zip(perm, signs)):
                W[row][col] = Fraction(sg)
            yield W


@dataclass
class SelfMirrorCheck:
    witness: list | None
    special_lagrangian: bool
    searched: int

    @property
    def ok(self):
        return self.witness is not None and self.special_lagrangian


def structure_witness(L, J, omega, L2, J2, omega2):
    """A signed permutation ``W`` with ``L`` in basis ``W`` equal to ``L2`` and ``J``, ``ω`` carried to ``J2``, ``ω2``."""
    searched = 0
    for W in _signed_permutations(L.dim):
        searched += 1
        if la.matmul(J.J, W) != la.matmul(W, J2.J):
            continue
        if la.matmul(la.transpose(W), la.matmul(omega.B, W)) != omega2.B:
            continue
        if verify_isomorphism(L, L2, W):
            return W, searched
    return None, searched


def four_dim_self_mirror() -> SelfMirrorCheck:
    from .semidirect import J_from_omega, omega_from_J

    sd, J, omega = four_dim_example()
    hv, omJ = omega_from_J(sd, J)
    _, Jom = J_from_omega(sd, omega, dual=hv)
    W, searched = structure_witness(sd.total, J, omega, hv.total, Jom, omJ)
    sl = _sl_report(sd, J, omega)["special_lagrangian"] and _sl_report(hv, Jom, omJ)["special_lagrangian"]
    return SelfMirrorCheck(W, sl, searched)


@dataclass
class VolumeCheck:
    point: tuple
    re_zero: bool
    im_nonzero: bool
    orthonormal: bool

    @property
    def ok(self):
        return self.re_zero and self.im_nonzero


VOLUME_POINTS = ((1, 0), (0, 1), (1, 1), (-2, 1), (2, -3))


def volume_check(a, b) -> VolumeCheck:
    from .structures import compatibility_metric, volume_form_check

    p = family_point(a, b)
    r = volume_form_check(p.sd, p.J, compatibility_metric(p.omega, p.J))
    return VolumeCheck((p.a, p.b), r.re_on_fiber.is_zero(), not r.im_on_fiber.is_zero(), r.orthonormal)


MIRROR_ROWS = (
    ("h1", "h1"),
    ("h4", "h7"),
    ("h7", "h4"),
    ("h8", "h8"),
    ("h9", "h9"),
    ("h10", "h10"),
    ("h11", "h11"),
)
SELF_MIRROR = ("h1", "h8", "h9", "h10")


def mirror_structure(name):
    """A special Lagrangian structure ``(sd, J, ω)`` on the named algebra."""
    points = {"h4": (0, 1), "h7": (-2, 1), "h9": (1, 0), "h10": (-1, 1), "h11": (1, 1)}
    if name == "h1":
        return h1_example()
    if name == "h8":
        return h8_example()[:3]
    if name in points:
        p = family_point(*points[name])
        return p.sd, p.J, p.omega
    raise UnknownEntry(f"no special Lagrangian structure recorded on {name}")


def identify_with_hints(L, budget=200000, seed=None, family=None):
    """:func:`identify`, seeded with the rational h11 basis for family points."""
    hints = {}
    if family is not None and all((family.a, family.b, family.c, family.d)):
        ref = reference_algebra("h11")
        to_ref = h11_witness(family.a, family.b, family.c, family.d)
        w = find_isomorphism(catalog_algebra("h11"), ref, budget=budget, seed=seed)
        if w and verify_isomorphism(L, ref, to_ref):
            # catalog → ref⁻¹ → L
            hints["h11"] = [la.matmul(to_ref, la.inverse(w.as_list()))]
    return identify(L, budget=budget, seed=seed, hints=hints)


STRUCTURE_NAMES = ("h1", "h4", "h7", "h8", "h9", "h10", "h11", "solvable", "four-dim")


def example_structure(name):
    """``(sd, J, ω)`` for a mirror-table name or one of the explicit examples."""
    if name == "solvable":
        return solvable_example()
    if name == "four-dim":
        return four_dim_example()
    return mirror_structure(name)


@dataclass
class CorrespondenceCheck:
    name: str
    complex_flat_torsion_free: bool
    complex_round_trip: bool
    complex_iso: bool
    symplectic_flat_torsion_free: bool
    symplectic_round_trip: bool

    @property
    def ok(self):
        return all(
            (
                self.complex_flat_torsion_free,
                self.complex_round_trip,
                self.complex_iso,
                self.symplectic_flat_torsion_free,
                self.symplectic_round_trip,
            )
        )


def correspondence_check(name) -> CorrespondenceCheck:
    """Connections from ``J`` and from ``ω``, and back.

    ``(𝔥, J) → γ → (𝔤 ⋉_γ 𝔤, J')`` is checked to be isomorphic to ``(𝔥, J)``
    via ``x ↦ x``, ``y_i ↦ J x_i``; ``γ → (𝔥', J') → γ`` and
    ``γ_ω → (𝔥', ω') → γ_ω`` are checked to be identities.
    """
    from .semidirect import (
        complex_from_connection,
        connection_check,
        connection_from_complex,
        connection_from_symplectic,
        symplectic_from_connection,
    )

    sd, J, omega = example_structure(name)
    layout = (sd.base_idx, sd.fiber_idx)
    g = connection_from_complex(sd, J)
    cc = connection_check(g)
    cft = cc.flat and cc.torsion_free
    c_rt = c_iso = False
    if cft:
        sd2, J2 = complex_from_connection(g, layout)
        c_rt = connection_from_complex(sd2, J2) == g
        n = sd.total.dim
        W = la.zeros(n, n)
        for bi, fi in zip(sd.base_idx, sd.fiber_idx):
            W[bi][bi] = ONE
            img = J([ONE if k == bi else ZERO for k in range(n)])
            for r in range(n):
                W[r][fi] = img[r]
        c_iso = verify_isomorphism(sd.total, sd2.total, W) and la.matmul(J.J, W) == la.matmul(W, J2.J)
    gw = connection_from_symplectic(sd, omega)
    sc = connection_check(gw)
    sft = sc.flat and sc.torsion_free
    s_rt = False
    if sft:
        sd3, om3 = symplectic_from_connection(gw, layout)
        s_rt = connection_from_symplectic(sd3, om3) == gw
    return CorrespondenceCheck(name, cft, c_rt, c_iso, sft, s_rt)


# --- mirror theorem and curve -----------------------------------------------------


def _sl_report(sd, J, omega):
    from .structures import special_lagrangian_report

    return special_lagrangian_report(sd.total, sd.base_vectors(), sd.fiber_vectors(), J, omega)


@dataclass
class MirrorRow:
    name: str
    expected: str
    h_found: str | None
    hv_found: str | None
    sl_h: dict
    sl_hv: dict
    certificate: object
    self_witness: object
    hv_shorthand: str
    omega_J: object
    J_omega: object

    @property
    def status(self):
        if self.h_found is None or self.hv_found is None:
            return "witness-not-found"
        if self.name in SELF_MIRROR and not self.self_witness:
            return "witness-not-found"
        ok = (
            self.h_found == self.name
            and self.hv_found == self.expected
            and self.sl_h["special_lagrangian"]
            and self.sl_hv["special_lagrangian"]
            and self.certificate.ok
        )
        return "verified" if ok else "refuted"


def mirror_row(name, expected, budget=200000, seed=None) -> MirrorRow:
    from .dga import mirror_certificate
    from .semidirect import J_from_omega, omega_from_J
    from .shorthand import format_shorthand

    sd, J, omega = mirror_structure(name)
    hv = dual_semidirect(sd)
    _, omJ = omega_from_J(sd, J, dual=hv)
    _, Jom = J_from_omega(sd, omega, dual=hv)
    fam = None
    points = {"h4": (0, 1), "h7": (-2, 1), "h9": (1, 0), "h10": (-1, 1), "h11": (1, 1)}
    if name in points:
        fam = family_point(*points[name])
    ih = identify_with_hints(sd.total, budget, seed, family=fam)
    self_w = None
    hv_name = None
    if name in SELF_MIRROR or expected == name:
        self_w = find_isomorphism(hv.total, sd.total, budget=budget, seed=seed)
        if self_w and ih.found:
            # catalog → 𝔥 → 𝔥^∨
            hv_name = ih.name
    if hv_name is None:
        ihv = identify(hv.total, budget, seed)
        hv_name = ihv.name
    return MirrorRow(
        name,
        expected,
        ih.name,
        hv_name,
        _sl_report(sd, J, omega),
        _sl_report(hv, Jom, omJ),
        mirror_certificate(sd, J),
        self_w,
        format_shorthand(hv.total),
        omJ,
        Jom,
    )


def mirror_theorem_report(budget=200000, seed=None):
    return [mirror_row(n, e, budget, seed) for n, e in MIRROR_ROWS]


@dataclass
class CurveRow:
    a: Fraction
    b: Fraction
    special_lagrangian: bool
    identification: Identification
    scaling: list

    @property
    def status(self):
        if not self.identification.found:
            return "witness-not-found"
        return "verified" if self.special_lagrangian and all(s.ok for s in self.scaling) else "refuted"


CURVE_POINTS = ((1, 0), (0, 1), (-1, 1), (-2, 1), (1, 1), (-1, 0))
EXPECTED_CURVE = {(1, 0): "h9", (-1, 0): "h9", (0, 1): "h4", (-1, 1): "h10", (-2, 1): "h7", (1, 1): "h11"}
SCALES = (1, 2, 3, Fraction(1, 2))


def curve_report(points=CURVE_POINTS, budget=200000, seed=None):
    rows = []
    for a, b in points:
        p = family_point(a, b)
        sl = _sl_report(p.sd, p.J, p.omega)["special_lagrangian"]
        ident = identify_with_hints(p.algebra, budget, seed, family=p)
        sc = [scaling_check(a, b, s, e) for s in SCALES for e in (1, -1)]
        rows.append(CurveRow(p.a, p.b, sl, ident, sc))
    return rows


__all__ = [
    "CatalogEntry",
    "ENTRIES",
    "ABELIAN_ROWS",
    "HEISENBERG_ROWS",
    "CANONICAL",
    "REFERENCE",
    "H19_PARAMS",
    "base_algebra",
    "lookup",
    "entry",
    "all_constructions",
    "catalog_algebra",
    "reference_algebra",
    "Identification",
    "identify",
    "identify_with_hints",
    "DualRow",
    "reproduce_dual_table",
    "FamilyPoint",
    "family_algebra",
    "family_point",
    "h11_witness",
    "h11_cube_root_witness",
    "GRID9",
    "CD_VALUES",
    "FamilySweep",
    "family_sweep",
    "DualityCheck",
    "duality_check",
    "DUALITY_POINTS",
    "H1_TUPLES",
    "H1Check",
    "h1_check",
    "bracket_lines",
    "form_string",
    "complex_lines",
    "EXPECTED_SOLVABLE_DUAL",
    "EXPECTED_SOLVABLE_OMEGA_J",
    "EXPECTED_SOLVABLE_J_OMEGA",
    "SolvableCheck",
    "solvable_check",
    "SelfMirrorCheck",
    "structure_witness",
    "four_dim_self_mirror",
    "VOLUME_POINTS",
    "VolumeCheck",
    "volume_check",
    "STRUCTURE_NAMES",
    "example_structure",
    "CorrespondenceCheck",
    "correspondence_check",
    "StatedWitness",
    "stated_witness_checks",
    "scaling_matrix",
    "ScalingCheck",
    "scaling_check",
    "h1_example",
    "solvable_example",
    "four_dim_example",
    "h8_example",
    "MIRROR_ROWS",
    "SELF_MIRROR",
    "mirror_structure",
    "MirrorRow",
    "mirror_row",
    "mirror_theorem_report",
    "CurveRow",
    "CURVE_POINTS",
    "EXPECTED_CURVE",
    "SCALES",
    "curve_report",
]
