"""Command-line entry point.

Every command prints a result in Markdown (default) or JSON.  Exit status is
0 when no row is refuted or witness-not-found, 1 otherwise, and 2 for usage,
parse and validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as cat
from . import report as rep
from .errors import MirrorPairsError, ParseError
from .exterior import format_form
from .lie import LieAlgebra, betti_numbers
from .loaders import load_algebra, load_complex, load_form, load_semidirect, parse_indices, rational, split_algebra
from .scalars import format_scalar
from .semidirect import (
    J_from_omega,
    complex_from_connection,
    connection_check,
    connection_from_complex,
    connection_from_symplectic,
    dual_semidirect,
    omega_from_J,
)
from .shorthand import format_shorthand
from .structures import special_lagrangian_report


class Result:
    def __init__(self, title, data=None, rows=None):
        self.title = title
        self.data = data or {}
        self.rows = rows or []

    @property
    def report(self):
        return rep.Report(self.title, self.rows)

    def render(self, fmt):
        if fmt == "json":
            d = {"title": self.title, "data": self.data}
            if self.rows:
                r = self.report.to_json()
                d["counts"], d["rows"] = r["counts"], r["rows"]
            return json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        out = []
        if self.rows:
            out.append(self.report.to_markdown())
        else:
            out.append(f"# {self.title}\n")
        if self.data:
            out.append("```json")
            out.append(json.dumps(self.data, indent=2, sort_keys=True, ensure_ascii=False))
            out.append("```")
        return "\n".join(out) + "\n"


def _mat(m):
    return [[format_scalar(c) for c in row] for row in m]


# --- structure inputs ---------------------------------------------------------------


def _add_structure_args(p, need_J=True, need_omega=True):
    g = p.add_argument_group("structure")
    g.add_argument("--entry", help="named structure: " + ", ".join(cat.STRUCTURE_NAMES))
    g.add_argument("--family", metavar="A,B", help="family point h_{a,b} with its fixed J and ω")
    g.add_argument("--algebra", help="shorthand or JSON (inline or file path)")
    g.add_argument("--base-idx", help="1-based base slots, default 1,3,5,…")
    g.add_argument("--fiber-idx", help="1-based fiber slots, default 2,4,6,…")
    if need_J:
        g.add_argument("--J", dest="J", help='"standard", {"J": M} or {"a": A}')
    if need_omega:
        g.add_argument("--omega", help="two-form, e.g. e16-e25+e34")


def _structure(args, need_J=True, need_omega=True, need_split=True):
    """``(sd, J, ω)``; entries not requested or not supplied are ``None``.

    Without ``need_split`` an algebra that is not a semi-direct product in the
    given slots comes back as a bare :class:`LieAlgebra` in place of ``sd``.
    """
    if args.entry:
        return cat.example_structure(args.entry)
    if args.family:
        a, b = (rational(t) for t in args.family.split(","))
        p = cat.family_point(a, b)
        return p.sd, p.J, p.omega
    if not args.algebra:
        raise MirrorPairsError("one of --entry, --family, --algebra is required")
    L = load_algebra(args.algebra)
    if L.dim % 2:
        raise ParseError(f"expected an even number of entries, got {L.dim}")
    base = parse_indices(args.base_idx) if args.base_idx else None
    fiber = parse_indices(args.fiber_idx) if args.fiber_idx else None
    try:
        sd = split_algebra(L, base, fiber)
    except MirrorPairsError:
        if need_split:
            raise
        sd = None
    J = omega = None
    if need_J and getattr(args, "J", None):
        J = load_complex(args.J, sd.base_idx if sd else None, sd.fiber_idx if sd else None)
        if J.dim != L.dim:
            raise ParseError(f"J has size {J.dim}, algebra has dimension {L.dim}")
    if need_omega and getattr(args, "omega", None):
        omega = load_form(args.omega, L.dim)
    return (sd if sd is not None else L), J, omega


def _total(x):
    return x if isinstance(x, LieAlgebra) else x.total


def _need(x, flag):
    if x is None:
        raise MirrorPairsError(f"{flag} is required with --algebra")
    return x


# --- catalog ------------------------------------------------------------------------


def cmd_catalog_list(args):
    items = []
    for key, e in cat.ENTRIES.items():
        items.append(
            {
                "key": key,
                "name": e.name,
                "base_kind": e.base_kind,
                "source": e.source_eq,
                "expected_dual": e.expected_dual,
                "structure_equations": format_shorthand(cat.entry(key).total),
            }
        )
    items.append({"key": "h1", "name": "h1", "base_kind": "abelian", "source": "h1", "expected_dual": "h1",
                  "structure_equations": format_shorthand(cat.entry("h1").total)})
    return Result("Catalog", {"entries": items})


def cmd_catalog_entry(args):
    if args.name == "h1":
        sd = cat.entry("h1")
        data = {"key": "h1", "name": "h1", "base_kind": "abelian", "structure_equations": format_shorthand(sd.total),
                "rho": [_mat(M) for M in sd.rep.rho]}
        if args.dual:
            data["dual_structure_equations"] = format_shorthand(dual_semidirect(sd).total)
        return Result("Catalog entry h1 (abelian)", data)
    e = cat.lookup(args.name, args.base)
    sd = cat.entry(e.key)
    data = {
        "key": e.key,
        "name": e.name,
        "base_kind": e.base_kind,
        "structure_equations": format_shorthand(sd.total),
        "rho": [_mat(M) for M in sd.rep.rho],
    }
    rows = []
    if args.dual:
        row = rep.dual_row(e.key, args.budget, args.seed)
        data["dual_structure_equations"] = row.evidence["dual_structure_equations"]
        data["dual_identified_as"] = row.evidence["found"]
        rows.append(row)
    return Result(f"Catalog entry {e.name} ({e.base_kind})", data, rows)


def cmd_catalog_dual_table(args):
    return Result("Dual table", rows=rep.dual_table_section(args.budget, args.seed))


def cmd_catalog_family(args):
    a, b = rational(args.a), rational(args.b)
    c = rational(args.c) if args.c is not None else None
    d = rational(args.d) if args.d is not None else None
    p = cat.family_point(a, b, c, d)
    sl = special_lagrangian_report(p.algebra, p.sd.base_vectors(), p.sd.fiber_vectors(), p.J, p.omega)
    data = {
        "point": [format_scalar(x) for x in (p.a, p.b, p.c, p.d)],
        "structure_equations": format_shorthand(p.algebra),
        "omega": format_form(p.omega.to_ext()),
        "closed_condition": p.a + p.b + p.d == 0,
        "integrable_condition": p.b - p.c - p.d == 0,
        "special_lagrangian": sl,
    }
    rows = [rep.duality_row(p.a, p.b, p.c, p.d)]
    if sl["special_lagrangian"]:
        ident = cat.identify_with_hints(p.algebra, args.budget, args.seed, family=p)
        data["identified_as"] = ident.name
        if not ident.found:
            data["reason"] = ident.reason
    return Result(f"Family point h_{{{format_scalar(p.a)},{format_scalar(p.b)}}}", data, rows)


def _points(text):
    out = []
    for chunk in text.replace(";", " ").split():
        a, b = chunk.split(",")
        out.append((rational(a), rational(b)))
    return tuple(out)


def cmd_catalog_curve(args):
    pts = _points(args.points) if args.points else cat.CURVE_POINTS
    return Result("Curve", rows=rep.curve_section(pts, args.budget, args.seed))


def cmd_catalog_mirror(args):
    return Result("Mirror theorem", rows=rep.mirror_section(args.budget, args.seed))


def cmd_catalog_obstructions(args):
    return Result("Obstructions", rows=rep.obstruction_rows())


# --- semidirect, bridge, connection -------------------------------------------------


def _sd_input(args):
    if getattr(args, "entry_key", None):
        return cat.entry(cat.lookup(args.entry_key, args.base).key)
    if not args.input:
        raise MirrorPairsError("give a representation JSON or --entry")
    return load_semidirect(args.input, args.layout)


def cmd_semidirect_build(args):
    sd = _sd_input(args)
    return Result("Semi-direct product", {"structure_equations": format_shorthand(sd.total), "json": sd.to_json()})


def cmd_semidirect_dual(args):
    sd = _sd_input(args)
    hv = dual_semidirect(sd)
    return Result(
        "Dual semi-direct product",
        {
            "structure_equations": format_shorthand(sd.total),
            "dual_structure_equations": format_shorthand(hv.total),
            "involution": dual_semidirect(hv).total == sd.total,
            "json": hv.to_json(),
        },
    )


def _sl(sd, J, omega):
    return special_lagrangian_report(sd.total, sd.base_vectors(), sd.fiber_vectors(), J, omega)


def cmd_bridge_omega(args):
    sd, J, _ = _structure(args, need_omega=False)
    J = _need(J, "--J")
    hv, om = omega_from_J(sd, J)
    from .structures import is_closed, is_integrable

    return Result(
        "ω_J on the dual product",
        {
            "dual_structure_equations": format_shorthand(hv.total),
            "omega_J": format_form(om.to_ext()),
            "J_integrable": is_integrable(sd.total, J)[0],
            "omega_J_closed": is_closed(hv.total, om),
        },
    )


def cmd_bridge_J(args):
    sd, _, omega = _structure(args, need_J=False)
    omega = _need(omega, "--omega")
    hv, J = J_from_omega(sd, omega)
    from .structures import is_closed, is_integrable

    return Result(
        "J_ω on the dual product",
        {
            "dual_structure_equations": format_shorthand(hv.total),
            "J_omega": _mat(J.J),
            "omega_closed": is_closed(sd.total, omega),
            "J_omega_integrable": is_integrable(hv.total, J)[0],
        },
    )


def cmd_connection_check(args):
    sd, J, omega = _structure(args)
    data = {}
    if J is not None:
        g = connection_from_complex(sd, J)
        c = connection_check(g)
        data["from_J"] = {"gamma": [_mat(M) for M in g.gamma], "flat": c.flat, "torsion_free": c.torsion_free}
        if c.flat and c.torsion_free:
            sd2, J2 = complex_from_connection(g, (sd.base_idx, sd.fiber_idx))
            data["from_J"]["round_trip"] = connection_from_complex(sd2, J2) == g
    if omega is not None:
        g = connection_from_symplectic(sd, omega)
        c = connection_check(g)
        data["from_omega"] = {"gamma": [_mat(M) for M in g.gamma], "flat": c.flat, "torsion_free": c.torsion_free}
    if not data:
        raise MirrorPairsError("give --J and/or --omega")
    rows = [rep.correspondence_row(args.entry)] if args.entry else []
    return Result("Connections", data, rows)


# --- dga ---------------------------------------------------------------------------


def cmd_dga_complex(args):
    from .dga import build_complex_dga

    sd, J, _ = _structure(args, need_omega=False, need_split=False)
    A = build_complex_dga(_total(sd), _need(J, "--J"))
    return Result("DGA(𝔥, J)", A.to_json())


def cmd_dga_symplectic(args):
    from .dga import build_symplectic_dga

    sd, _, omega = _structure(args, need_J=False, need_split=False)
    S = build_symplectic_dga(_total(sd), _need(omega, "--omega"))
    return Result("DGA(𝔥, ω)", S.to_json())


def cmd_dga_mirror_check(args):
    from .dga import mirror_certificate

    sd, J, _ = _structure(args, need_omega=False)
    c = mirror_certificate(sd, _need(J, "--J"))
    rows = [rep.dga_row(args.entry)] if args.entry else []
    return Result("Mirror DGA certificate", c.to_json(), rows)


def cmd_dga_betti(args):
    from .dga import build_complex_dga, build_symplectic_dga

    sd, J, omega = _structure(args, need_split=False)
    L = _total(sd)
    data = {"lie_algebra": betti_numbers(L)}
    if J is not None:
        data["complex"] = build_complex_dga(L, J).betti_numbers()
        if not isinstance(sd, LieAlgebra):
            hv, om = omega_from_J(sd, J)
            data["mirror_symplectic"] = build_symplectic_dga(hv.total, om).betti_numbers()
    if omega is not None:
        data["symplectic"] = build_symplectic_dga(L, omega).betti_numbers()
    return Result("Betti numbers", data)


# --- verify -------------------------------------------------------------------------

SECTIONS = {
    "foundations": lambda a: rep.foundations_section(),
    "correspondence": lambda a: rep.correspondence_section(),
    "duality": lambda a: rep.duality_section(),
    "family": lambda a: rep.family_rows(),
    "dual-table": lambda a: rep.dual_table_section(a.budget, a.seed),
    "witnesses": lambda a: rep.witness_rows(),
    "mirror-theorem": lambda a: rep.mirror_section(a.budget, a.seed),
    "dga": lambda a: rep.dga_section(),
    "curve": lambda a: rep.curve_section(budget=a.budget, seed=a.seed),
    "scaling": lambda a: rep.scaling_section(),
    "obstructions": lambda a: rep.obstruction_rows(),
    "examples": lambda a: rep.examples_section(),
    "volume": lambda a: rep.volume_section(),
}


def cmd_verify(args):
    if args.replay:
        from .loaders import read_text

        old = rep.Report.loads(read_text(args.replay))
        rows = []
        for row, status in rep.replay(old):
            rows.append(rep.Row(row.section, row.subject, row.claim, status,
                                {"stored_status": row.status, "reproduced": status == row.status}, row.check))
        return Result(f"Replay of {old.title}", rows=rows)
    names = list(SECTIONS) if args.all or not args.section else args.section
    rows = []
    for n in names:
        rows.extend(SECTIONS[n](args))
    return Result("Mirror pairs verification", rows=rows)


# --- parser -------------------------------------------------------------------------


def _common(p):
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--seed", type=int, default=None, help="fixes the witness-search enumeration order")
    p.add_argument("--budget", type=int, default=rep.DEFAULT_BUDGET, help="isomorphism search node budget")
    p.add_argument("--output", "-o", help="write the result here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="mirrorpairs", description="Exact mirror symmetry checks for semi-direct Lie algebras.")
    top = parser.add_subparsers(dest="group", required=True)

    g = top.add_parser("catalog", help="named algebras, tables and the family h_{a,b}")
    sub = g.add_subparsers(dest="command", required=True)
    p = sub.add_parser("list")
    _common(p)
    p.set_defaults(func=cmd_catalog_list)
    p = sub.add_parser("entry")
    p.add_argument("name")
    p.add_argument("--base", choices=("abelian", "heisenberg"))
    p.add_argument("--dual", action="store_true", help="build and identify the dual product")
    _common(p)
    p.set_defaults(func=cmd_catalog_entry)
    p = sub.add_parser("dual-table")
    _common(p)
    p.set_defaults(func=cmd_catalog_dual_table)
    p = sub.add_parser("family")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", help="default a + 2b")
    p.add_argument("--d", help="default -(a + b)")
    _common(p)
    p.set_defaults(func=cmd_catalog_family)
    p = sub.add_parser("curve")
    p.add_argument("--points", help='e.g. "1,0 -1,1 -2,1"')
    _common(p)
    p.set_defaults(func=cmd_catalog_curve)
    p = sub.add_parser("mirror-theorem")
    _common(p)
    p.set_defaults(func=cmd_catalog_mirror)
    p = sub.add_parser("obstructions")
    _common(p)
    p.set_defaults(func=cmd_catalog_obstructions)

    g = top.add_parser("semidirect", help="build semi-direct products and their duals")
    sub = g.add_subparsers(dest="command", required=True)
    for name, fn in (("build", cmd_semidirect_build), ("dual", cmd_semidirect_dual)):
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="representation JSON (inline or path)")
        p.add_argument("--entry", dest="entry_key", help="catalog entry instead of JSON")
        p.add_argument("--base", choices=("abelian", "heisenberg"))
        p.add_argument("--layout", choices=("interleaved", "blocked"), default="interleaved")
        _common(p)
        p.set_defaults(func=fn)

    g = top.add_parser("bridge", help="ω_J and J_ω")
    sub = g.add_subparsers(dest="command", required=True)
    p = sub.add_parser("omega-from-j")
    _add_structure_args(p, need_omega=False)
    _common(p)
    p.set_defaults(func=cmd_bridge_omega)
    p = sub.add_parser("j-from-omega")
    _add_structure_args(p, need_J=False)
    _common(p)
    p.set_defaults(func=cmd_bridge_J)

    g = top.add_parser("connection", help="connections from J and from ω")
    sub = g.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check")
    _add_structure_args(p)
    _common(p)
    p.set_defaults(func=cmd_connection_check)

    g = top.add_parser("dga", help="differential Gerstenhaber algebras")
    sub = g.add_subparsers(dest="command", required=True)
    for name, fn, nj, no in (
        ("complex", cmd_dga_complex, True, False),
        ("symplectic", cmd_dga_symplectic, False, True),
        ("mirror-check", cmd_dga_mirror_check, True, False),
        ("betti", cmd_dga_betti, True, True),
    ):
        p = sub.add_parser(name)
        _add_structure_args(p, need_J=nj, need_omega=no)
        _common(p)
        p.set_defaults(func=fn)

    p = top.add_parser("verify", help="run verification sections and emit a report")
    p.add_argument("--all", action="store_true")
    p.add_argument("--section", action="append", choices=tuple(SECTIONS))
    p.add_argument("--replay", help="re-run every row of a saved JSON report")
    _common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        res = args.func(args)
    except (MirrorPairsError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    text = res.render(args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = res.report.first_failure()
    if bad is not None:
        print(f"first failure: {bad.section}: {bad.subject}: {bad.claim} ({bad.status})", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
