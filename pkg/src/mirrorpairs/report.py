"""Replayable verification reports.

A report is a list of rows ``{section, subject, claim, status, evidence, check}``.
``check`` names a row builder and its arguments; :func:`replay_row` rebuilds the
row from it and re-verifies every embedded witness matrix, so a saved report
can be re-checked without trusting its statuses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import catalog as cat
from . import linalg as la
from .isomorphism import verify_isomorphism
from .lie import check_jacobi, d_matrix, is_nilpotent
from .scalars import I, format_scalar, parse_scalar
from .shorthand import format_shorthand, parse_shorthand

VERIFIED = "verified"
REFUTED = "refuted"
NOT_FOUND = "witness-not-found"
EXTERNAL = "external-citation"
STATUSES = (VERIFIED, REFUTED, NOT_FOUND, EXTERNAL)
FAILING = (REFUTED, NOT_FOUND)

DEFAULT_BUDGET = 200000


def _q(x):
    return format_scalar(x)


def _mat(m):
    return [[_q(c) for c in row] for row in m]


def _unmat(m):
    return [[parse_scalar(c) for c in row] for row in m]


def _status(ok):
    return VERIFIED if ok else REFUTED


def _witness(source, target, W):
    """Evidence that ``W`` (columns: basis of ``source``) realises ``target``'s constants."""
    return {"source": format_shorthand(source), "target": format_shorthand(target), "matrix": _mat(W)}


def check_witness(w) -> bool:
    return verify_isomorphism(parse_shorthand(w["source"]), parse_shorthand(w["target"]), _unmat(w["matrix"]))


@dataclass
class Row:
    section: str
    subject: str
    claim: str
    status: str
    evidence: dict = field(default_factory=dict)
    check: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "section": self.section,
            "subject": self.subject,
            "claim": self.claim,
            "status": self.status,
            "evidence": self.evidence,
            "check": self.check,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["section"], d["subject"], d["claim"], d["status"], d.get("evidence", {}), d.get("check", {}))


@dataclass
class Report:
    title: str
    rows: list = field(default_factory=list)

    @property
    def ok(self):
        return not any(r.status in FAILING for r in self.rows)

    def first_failure(self):
        return next((r for r in self.rows if r.status in FAILING), None)

    def counts(self):
        return {s: sum(r.status == s for r in self.rows) for s in STATUSES}

    def to_json(self):
        return {"title": self.title, "counts": self.counts(), "rows": [r.to_json() for r in self.rows]}

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def loads(cls, text):
        d = json.loads(text)
        return cls(d["title"], [Row.from_json(r) for r in d["rows"]])

    def to_markdown(self):
        out = [f"# {self.title}", ""]
        c = self.counts()
        out.append(", ".join(f"{k}: {v}" for k, v in c.items()))
        out.append("")
        sections = []
        for r in self.rows:
            if r.section not in sections:
                sections.append(r.section)
        for s in sections:
            rows = [r for r in self.rows if r.section == s]
            out.append(f"## {s}")
            out.append("")
            if s == DUAL_SECTION:
                out.extend(_dual_matrix(rows))
                out.append("")
            out.append("| subject | claim | status | evidence |")
            out.append("|---|---|---|---|")
            for r in rows:
                out.append(f"| {_cell(r.subject)} | {_cell(r.claim)} | {r.status} | {_cell(_brief(r.evidence))} |")
            out.append("")
        return "\n".join(out)


def _cell(text):
    return str(text).replace("|", "\\|").replace("\n", " ")


def _brief(ev):
    parts = []
    for k in sorted(ev):
        v = ev[k]
        if k in ("witness", "witnesses", "self_witness", "structure_witness"):
            parts.append(f"{k}: embedded")
        elif isinstance(v, (dict, list)) and len(json.dumps(v, ensure_ascii=False)) > 80:
            parts.append(f"{k}: see json")
        else:
            parts.append(f"{k}: {json.dumps(v, ensure_ascii=False)}")
    return "; ".join(parts)


DUAL_COLUMNS = ("h3", "h4", "h6", "h7", "h8", "h9", "h10", "h11", "h17", "h19")


def _dual_matrix(rows):
    """Rows ``𝔥``, columns the identified ``𝔥^∨``; ✓ where expected and found."""
    head = "| 𝔥 | base | " + " | ".join(DUAL_COLUMNS) + " |"
    lines = [head, "|---|---|" + "---|" * len(DUAL_COLUMNS)]
    for r in rows:
        ev = r.evidence
        cells = []
        for c in DUAL_COLUMNS:
            if c == ev["expected"] and c == ev["found"]:
                cells.append("✓ verified")
            elif c == ev["expected"]:
                cells.append("✓ " + r.status)
            elif c == ev["found"]:
                cells.append("found")
            else:
                cells.append("")
        lines.append(f"| {ev['name']} | {ev['base_kind']} | " + " | ".join(cells) + " |")
    return lines


# --- row builders -------------------------------------------------------------------

FOUNDATIONS = "Foundations"
CORRESPONDENCE = "Connections and round trips"
DUALITY = "Duality formulas"
FAMILY = "Family sweep"
DUAL_SECTION = "Dual table"
WITNESSES = "Explicit bases"
MIRROR = "Mirror theorem"
DGA = "DGA certificates"
CURVE = "Curve"
OBSTRUCTIONS = "Obstructions"
EXAMPLES = "Examples"
VOLUME = "Volume form"
SCALING = "Scaling law"


def foundations_row(name):
    L = cat.all_constructions()[name].total
    jac = check_jacobi(L)
    nil = is_nilpotent(L)
    d2 = []
    for k in range(L.dim - 1):
        prod = la.matmul(d_matrix(L, k + 1), d_matrix(L, k))
        if not la.is_zero_matrix(prod):
            d2.append(k)
    ok = not jac and nil and not d2
    ev = {"structure_equations": format_shorthand(L), "jacobi_violations": len(jac), "nilpotent": nil, "d2_failures": d2}
    return Row(FOUNDATIONS, name, "Jacobi, nilpotent, d∘d = 0 in every degree", _status(ok), ev, {"kind": "foundations", "args": {"name": name}})


def correspondence_row(name):
    c = cat.correspondence_check(name)
    ev = {
        "complex_flat_torsion_free": c.complex_flat_torsion_free,
        "complex_round_trip": c.complex_round_trip,
        "complex_isomorphism": c.complex_iso,
        "symplectic_flat_torsion_free": c.symplectic_flat_torsion_free,
        "symplectic_round_trip": c.symplectic_round_trip,
    }
    claim = "γ from J and from ω flat and torsion-free; round trips are identities"
    return Row(CORRESPONDENCE, name, claim, _status(c.ok), ev, {"kind": "correspondence", "args": {"name": name}})


def duality_row(a, b, c, d):
    r = cat.duality_check(a, b, c, d)
    ev = {
        "J_integrable": r.J_integrable,
        "omega_J_closed": r.omega_J_closed,
        "omega_closed": r.omega_closed,
        "J_omega_integrable": r.J_omega_integrable,
        "J_round_trip": r.J_round_trip,
        "omega_round_trip": r.omega_round_trip,
    }
    subject = "(a,b,c,d) = (" + ",".join(_q(x) for x in r.point) + ")"
    claim = "ω_J closed ⇔ J integrable; J_ω integrable ⇔ ω closed; round trips exact"
    args = {"point": [_q(x) for x in r.point]}
    return Row(DUALITY, subject, claim, _status(r.ok), ev, {"kind": "duality", "args": args})


@lru_cache(maxsize=None)
def _sweep():
    return cat.family_sweep()


def family_rows():
    s = _sweep()
    fmt = lambda pts: [[_q(x) for x in p] for p in pts]  # noqa: E731
    grid = [_q(x) for x in cat.GRID9]
    chk = {"kind": "family", "args": {}}
    rows = [
        Row(FAMILY, "h_{a,b,c,d}", "ω closed ⇔ a + b + d = 0", _status(not s.closed_mismatches),
            {"grid": grid, "points": s.points, "closed": s.closed, "mismatches": fmt(s.closed_mismatches)}, chk),
        Row(FAMILY, "h_{a,b,c,d}", "J integrable ⇔ b - c - d = 0", _status(not s.integrable_mismatches),
            {"grid": grid, "points": s.points, "integrable": s.integrable, "mismatches": fmt(s.integrable_mismatches)}, chk),
    ]
    sigs = sorted({tuple(v) for v in s.signatures.values()})
    rows.append(Row(FAMILY, "h_{a,b} (c = a+2b, d = -(a+b))", "g = ω(-,J-) has signature (4,2)",
                    _status(sigs == [(4, 2)]), {"signatures": [list(x) for x in sigs], "points": len(s.signatures)}, chk))
    return rows


def dual_row(key, budget=DEFAULT_BUDGET, seed=None):
    from .semidirect import dual_semidirect

    e = cat.ENTRIES[key]
    sd = cat.entry(key)
    hv = dual_semidirect(sd)
    involution = dual_semidirect(hv).total == sd.total
    ident = cat.identify(hv.total, budget=budget, seed=seed)
    ev = {
        "name": e.name,
        "base_kind": e.base_kind,
        "expected": e.expected_dual,
        "found": ident.name,
        "involution": involution,
        "dual_structure_equations": format_shorthand(hv.total),
    }
    if ident.found:
        ev["witness"] = _witness(hv.total, cat.catalog_algebra(ident.name), ident.witness.as_list())
        status = _status(ident.name == e.expected_dual and involution)
    else:
        ev["reason"] = ident.reason
        status = NOT_FOUND
    claim = f"𝔥^∨ ≅ {e.expected_dual}"
    return Row(DUAL_SECTION, f"{e.name} ({e.base_kind})", claim, status, ev,
               {"kind": "dual", "args": {"key": key, "budget": budget, "seed": seed}})


def witness_rows():
    rows = []
    for w in cat.stated_witness_checks():
        ev = {"witness": _witness(w.algebra, cat.reference_algebra(w.target), w.matrix)}
        rows.append(Row(WITNESSES, w.label, "the stated basis is an isomorphism", _status(w.ok), ev,
                        {"kind": "witnesses", "args": {}}))
    # the same isomorphism class, with a searched basis where the stated one fails
    p = cat.family_point(-1, 0)
    ident = cat.identify(p.algebra)
    ev = {}
    if ident.found:
        ev["witness"] = _witness(p.algebra, cat.catalog_algebra(ident.name), ident.witness.as_list())
    st = NOT_FOUND if not ident.found else _status(ident.name == "h9")
    rows.append(Row(WITNESSES, "h_{-1,0}", "≅ h9 (searched basis)", st, ev, {"kind": "witnesses", "args": {}}))
    return rows


def _sl_ok(rep):
    return bool(rep["special_lagrangian"])


def mirror_row(name, expected, budget=DEFAULT_BUDGET, seed=None):
    from .exterior import format_form

    r = cat.mirror_row(name, expected, budget, seed)
    ev = {
        "h_found": r.h_found,
        "hv_found": r.hv_found,
        "dual_structure_equations": r.hv_shorthand,
        "omega_J": format_form(r.omega_J.to_ext()),
        "J_omega": _mat(r.J_omega.J),
        "special_lagrangian_h": _sl_ok(r.sl_h),
        "special_lagrangian_hv": _sl_ok(r.sl_hv),
        "certificate": r.certificate.to_json(),
    }
    if r.self_witness:
        sd = cat.mirror_structure(name)[0]
        from .semidirect import dual_semidirect

        ev["self_witness"] = _witness(dual_semidirect(sd).total, sd.total, r.self_witness.as_list())
    return Row(MIRROR, name, f"mirror is {expected}; both sides special Lagrangian", r.status, ev,
               {"kind": "mirror", "args": {"name": name, "expected": expected, "budget": budget, "seed": seed}})


H11_EQUIVALENCE = (
    "the two pseudo-Kähler structures on h11 are inequivalent",
    "external classification of pseudo-Kähler structures on h11; no distinguishing invariant is computed here",
)


def h11_equivalence_row():
    return Row(MIRROR, "h11", H11_EQUIVALENCE[0], EXTERNAL, {"source": H11_EQUIVALENCE[1]},
               {"kind": "h11-equivalence", "args": {}})


def dga_row(name):
    from .dga import mirror_certificate

    sd, J, _ = cat.example_structure(name)
    c = mirror_certificate(sd, J)
    ok = c.ok and c.lam == 2 * I
    return Row(DGA, name, "DGA(𝔥,J) ≅ DGA(𝔥^∨,ω_J) with λ = 2i and equal Betti numbers", _status(ok), c.to_json(),
               {"kind": "dga", "args": {"name": name}})


def curve_row(a, b, budget=DEFAULT_BUDGET, seed=None):
    r = cat.curve_report(((a, b),), budget, seed)[0]
    exp = cat.EXPECTED_CURVE.get((r.a, r.b))
    ev = {
        "special_lagrangian": r.special_lagrangian,
        "found": r.identification.name,
        "expected": exp,
        "scaling_checks": len(r.scaling),
        "scaling_ok": all(s.ok for s in r.scaling),
    }
    status = r.status
    if r.identification.found:
        ev["witness"] = _witness(family_algebra_of(r.a, r.b), cat.catalog_algebra(r.identification.name),
                                 r.identification.witness.as_list())
        if exp is not None and r.identification.name != exp:
            status = REFUTED
    else:
        ev["reason"] = r.identification.reason
    return Row(CURVE, f"h_{{{_q(r.a)},{_q(r.b)}}}", f"special Lagrangian, ≅ {exp}, scaling law", status, ev,
               {"kind": "curve", "args": {"a": _q(r.a), "b": _q(r.b), "budget": budget, "seed": seed}})


def family_algebra_of(a, b):
    return cat.family_point(a, b).algebra


def scaling_row(a, b):
    checks = [cat.scaling_check(a, b, s, e) for s in cat.SCALES for e in (1, -1)]
    ok = all(c.ok for c in checks)
    ev = {"scales": [_q(Fraction(s)) for s in cat.SCALES], "signs": [1, -1], "checks": len(checks),
          "failures": [[_q(c.s), _q(c.eps)] for c in checks if not c.ok]}
    return Row(SCALING, f"h_{{{_q(Fraction(a))},{_q(Fraction(b))}}}", "ψ = diag(s,s,±1,±1,1/s,1/s) sends (a,b) to ±(a,b)/s²",
               _status(ok), ev, {"kind": "scaling", "args": {"a": _q(Fraction(a)), "b": _q(Fraction(b))}})


def obstruction_rows():
    from .obstructions import H17_CITATION, h6_certificate, no_symplectic_certificate

    h3 = no_symplectic_certificate(cat.entry("h3").total)
    rows = [Row(OBSTRUCTIONS, "h3", "no symplectic form: every closed 2-form is degenerate", _status(h3.holds),
                {"closed_dim": h3.closed_dim, "common_radical": _mat(h3.common_radical)},
                {"kind": "obstructions", "args": {}})]
    h6 = h6_certificate()
    ev = {
        "grid_size": h6.grid_size,
        "swept": h6.swept,
        "closed_lagrangian_dim": h6.closed_lagrangian_dim,
        "nijenhuis_cross_checks": h6.nijenhuis_cross_checks,
        "violations": [[v[0], v[1]] for v in h6.violations[:5]],
    }
    rows.append(Row(OBSTRUCTIONS, "h6 (heisenberg)", "every compatible closed Lagrangian ω has b43 = b52 = b54 = b56 = 0",
                    _status(h6.holds), ev, {"kind": "obstructions", "args": {}}))
    rows.append(Row(OBSTRUCTIONS, H17_CITATION.subject, H17_CITATION.claim, EXTERNAL, {"source": H17_CITATION.source},
                    {"kind": "obstructions", "args": {}}))
    return rows


def h1_row(a):
    c = cat.h1_check(a)
    ev = {"rho": [_q(Fraction(x)) for x in c.rho], "symplectic": c.symplectic, "integrable": c.integrable,
          "signature": list(c.signature), "kahler": c.kahler}
    subject = "ℝⁿ⋉ℝⁿ, a = (" + ",".join(_q(x) for x in c.a) + ")"
    return Row(EXAMPLES, subject, "ω_a symplectic; Kähler ⇔ all a_i of one sign", _status(c.ok), ev,
               {"kind": "h1", "args": {"a": [_q(x) for x in c.a]}})


def solvable_rows():
    s = cat.solvable_check()
    chk = {"kind": "solvable", "args": {}}
    return [
        Row(EXAMPLES, "solvable base", "Kähler with signature (6,0)", _status(s.kahler), {"signature": list(s.signature)}, chk),
        Row(EXAMPLES, "solvable base", "𝔥^∨ structure equations: " + ", ".join(cat.EXPECTED_SOLVABLE_DUAL),
            _status(s.brackets_match),
            {"emitted": s.dual_brackets, "omega_J_closed_with_emitted": s.omega_J_closed,
             "J_omega_integrable_with_emitted": s.J_omega_integrable}, chk),
        Row(EXAMPLES, "solvable base", "ω_J = " + cat.EXPECTED_SOLVABLE_OMEGA_J, _status(s.omega_J_matches),
            {"emitted": s.omega_J}, chk),
        Row(EXAMPLES, "solvable base", "J_ω: " + ", ".join(cat.EXPECTED_SOLVABLE_J_OMEGA), _status(s.J_omega_matches),
            {"emitted": s.J_omega}, chk),
    ]


def four_dim_row():
    m = cat.four_dim_self_mirror()
    ev = {"special_lagrangian": m.special_lagrangian, "signed_permutations_tried": m.searched}
    if m.witness is not None:
        from .semidirect import dual_semidirect

        sd = cat.four_dim_example()[0]
        ev["structure_witness"] = _witness(sd.total, dual_semidirect(sd).total, m.witness)
    st = NOT_FOUND if m.witness is None else _status(m.ok)
    return Row(EXAMPLES, "four-dimensional (0,0,12,0)", "(𝔥^∨, J_ω, ω_J) ≅ (𝔥, J, ω)", st, ev, {"kind": "four-dim", "args": {}})


def volume_row(a, b):
    v = cat.volume_check(a, b)
    ev = {"re_on_fiber_zero": v.re_zero, "im_on_fiber_nonzero": v.im_nonzero, "rational_orthonormal": v.orthonormal}
    return Row(VOLUME, f"h_{{{_q(v.point[0])},{_q(v.point[1])}}}", "Re Φ|_V = 0, Im Φ|_V ≠ 0", _status(v.ok), ev,
               {"kind": "volume", "args": {"a": _q(v.point[0]), "b": _q(v.point[1])}})


# --- sections ----------------------------------------------------------------------


def foundations_section():
    return [foundations_row(k) for k in cat.all_constructions()]


def correspondence_section():
    return [correspondence_row(n) for n in cat.STRUCTURE_NAMES]


def duality_section():
    return [duality_row(*p) for p in cat.DUALITY_POINTS]


def dual_table_section(budget=DEFAULT_BUDGET, seed=None):
    return [dual_row(k, budget, seed) for k in cat.ABELIAN_ROWS + cat.HEISENBERG_ROWS]


def mirror_section(budget=DEFAULT_BUDGET, seed=None):
    rows = [mirror_row(n, e, budget, seed) for n, e in cat.MIRROR_ROWS]
    rows.append(h11_equivalence_row())
    return rows


def dga_section():
    return [dga_row(n) for n in cat.STRUCTURE_NAMES]


def curve_section(points=cat.CURVE_POINTS, budget=DEFAULT_BUDGET, seed=None):
    return [curve_row(a, b, budget, seed) for a, b in points]


SCALING_POINTS = ((1, 0), (1, 1), (-2, 1))


def scaling_section(points=SCALING_POINTS):
    return [scaling_row(a, b) for a, b in points]


def examples_section():
    rows = [h1_row(a) for a in cat.H1_TUPLES]
    rows.extend(solvable_rows())
    rows.append(four_dim_row())
    return rows


def volume_section():
    return [volume_row(a, b) for a, b in cat.VOLUME_POINTS]


def full_report(budget=DEFAULT_BUDGET, seed=None) -> Report:
    rows = []
    rows += foundations_section()
    rows += correspondence_section()
    rows += duality_section()
    rows += family_rows()
    rows += dual_table_section(budget, seed)
    rows += witness_rows()
    rows += mirror_section(budget, seed)
    rows += dga_section()
    rows += curve_section(budget=budget, seed=seed)
    rows += scaling_section()
    rows += obstruction_rows()
    rows += examples_section()
    rows += volume_section()
    return Report("Mirror pairs verification", rows)


# --- replay --------------------------------------------------------------------------


def _rebuild(check):
    kind, a = check["kind"], check.get("args", {})
    q = parse_scalar
    if kind == "foundations":
        return [foundations_row(a["name"])]
    if kind == "correspondence":
        return [correspondence_row(a["name"])]
    if kind == "duality":
        return [duality_row(*(q(x) for x in a["point"]))]
    if kind == "family":
        return family_rows()
    if kind == "dual":
        return [dual_row(a["key"], a["budget"], a["seed"])]
    if kind == "witnesses":
        return witness_rows()
    if kind == "mirror":
        return [mirror_row(a["name"], a["expected"], a["budget"], a["seed"])]
    if kind == "h11-equivalence":
        return [h11_equivalence_row()]
    if kind == "dga":
        return [dga_row(a["name"])]
    if kind == "curve":
        return [curve_row(q(a["a"]), q(a["b"]), a["budget"], a["seed"])]
    if kind == "scaling":
        return [scaling_row(q(a["a"]), q(a["b"]))]
    if kind == "obstructions":
        return obstruction_rows()
    if kind == "h1":
        return [h1_row(tuple(q(x) for x in a["a"]))]
    if kind == "solvable":
        return solvable_rows()
    if kind == "four-dim":
        return [four_dim_row()]
    if kind == "volume":
        return [volume_row(q(a["a"]), q(a["b"]))]
    raise ValueError(f"unknown check kind {kind!r}")


def _embedded_witnesses(ev):
    out = []
    for k in ("witness", "self_witness", "structure_witness"):
        if k in ev:
            out.append(ev[k])
    return out


def replay_row(row: Row) -> str:
    """Status recomputed from ``row.check``; a stored witness that fails to verify refutes the row."""
    for w in _embedded_witnesses(row.evidence):
        if not check_witness(w):
            return REFUTED
    fresh = [r for r in _rebuild(row.check) if r.subject == row.subject and r.claim == row.claim]
    if not fresh:
        return REFUTED
    return fresh[0].status


def replay(report: Report):
    """``[(row, replayed_status)]`` for every row."""
    return [(r, replay_row(r)) for r in report.rows]


__all__ = [
    "VERIFIED",
    "REFUTED",
    "NOT_FOUND",
    "EXTERNAL",
    "STATUSES",
    "Row",
    "Report",
    "check_witness",
    "foundations_section",
    "correspondence_section",
    "duality_section",
    "family_rows",
    "dual_table_section",
    "witness_rows",
    "mirror_section",
    "dga_section",
    "curve_section",
    "scaling_section",
    "obstruction_rows",
    "examples_section",
    "volume_section",
    "full_report",
    "replay_row",
    "replay",
]
