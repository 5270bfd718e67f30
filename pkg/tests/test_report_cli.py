import json

import pytest

from mirrorpairs import report as rep
from mirrorpairs.cli import run
from mirrorpairs.errors import ParseError, ValidationError
from mirrorpairs.loaders import load, load_algebra, load_complex, load_form, parse_indices, rational, split_algebra
from mirrorpairs.shorthand import parse_shorthand


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- loaders -------------------------------------------------------------------------


def test_load_algebra_forms(tmp_path):
    L = load_algebra("(0,0,12)")
    assert L.dim == 3
    f = tmp_path / "alg.json"
    f.write_text(json.dumps(L.to_json()))
    assert load_algebra(str(f)) == L
    with pytest.raises(ParseError):
        load_algebra("(0,0,12)", expected_dim=6)
    with pytest.raises(ParseError):
        load_algebra("{not json")


def test_load_complex_variants():
    assert load_complex("standard:2").dim == 4
    J = load_complex('{"a": [[1,0,0],[0,1,0],[0,0,1]]}')
    assert J.J == load_complex("standard").J
    with pytest.raises(ValidationError):
        load_complex('{"a": [[1,1],[1,1]]}')
    with pytest.raises(ParseError):
        load_complex('{"b": 1}')
    with pytest.raises(ParseError):
        load_complex('{"J": [[1,2],[3]]}')


def test_load_form_variants():
    w = load_form("e16-e25+e34", 6)
    assert load_form('{"omega": "e16-e25+e34"}', 6) == w
    assert load_form(json.dumps({"omega": [[str(c) for c in r] for r in w.B]}), 6) == w
    with pytest.raises(ParseError):
        load_form('{"x": 1}', 6)


def test_indices_and_split():
    assert parse_indices("1,3,5") == (0, 2, 4)
    with pytest.raises(ParseError):
        parse_indices("a,b")
    L = parse_shorthand("(0,0,0,0,0,12)")
    with pytest.raises(ParseError):
        split_algebra(L, (0, 2, 4), (1, 3, 3))
    assert split_algebra(L).base_idx == (0, 2, 4)


def test_rational_and_dispatch():
    assert rational("-3/4") * 4 == -3
    with pytest.raises(ParseError):
        rational("i")
    with pytest.raises(ParseError):
        load("x", kind="nope")


# --- report rows and replay --------------------------------------------------------------


def test_row_json_round_trip():
    rows = rep.foundations_section()[:3] + rep.duality_section()[:2]
    report = rep.Report("t", rows)
    again = rep.Report.loads(report.dumps())
    assert again.to_json() == report.to_json()
    assert report.dumps() == again.dumps()


def test_replay_reproduces_quick_sections():
    rows = rep.foundations_section() + rep.witness_rows() + rep.examples_section()
    report = rep.Report("quick", rows)
    for row, status in rep.replay(rep.Report.loads(report.dumps())):
        assert status == row.status, row.subject


def test_tampered_witness_refuted():
    row = next(r for r in rep.witness_rows() if r.subject == "h_{1,0} ≅ h9")
    assert row.status == rep.VERIFIED
    d = row.to_json()
    d["evidence"]["witness"]["matrix"][0][0] = "7"
    assert not rep.check_witness(d["evidence"]["witness"])


def test_report_counts_and_failure():
    rows = rep.witness_rows()
    report = rep.Report("w", rows)
    assert report.counts()[rep.REFUTED] == 1
    assert report.first_failure().subject == "h_{-1,0} ≅ h9"
    assert "h_{-1,0}" in report.to_markdown()


# --- CLI ---------------------------------------------------------------------------------


def test_cli_catalog_list(capsys):
    code, out, _ = cli(capsys, "catalog", "list", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["data"]["entries"]) >= 12


def test_cli_bridge_family(capsys):
    code, out, _ = cli(capsys, "bridge", "omega-from-j", "--family", "1,1", "--format", "json")
    d = json.loads(out)["data"]
    assert code == 0 and d["omega_J_closed"] and d["J_integrable"]


def test_cli_parse_error_exit_2(capsys):
    code, _, err = cli(capsys, "connection", "check", "--algebra", "(0,0,12)", "--J", "standard")
    assert code == 2 and err.startswith("error:")
    code, _, err = cli(capsys, "dga", "betti", "--algebra", "(0,0,1x,0)")
    assert code == 2


def test_cli_unknown_entry_exit_2(capsys):
    code, _, err = cli(capsys, "catalog", "entry", "h99")
    assert code == 2 and "error" in err


def test_cli_refuted_exit_1(capsys):
    code, out, err = cli(capsys, "verify", "--section", "witnesses", "--format", "json")
    assert code == 1
    assert "first failure: Explicit bases: h_{-1,0} ≅ h9" in err
    assert json.loads(out)["counts"]["refuted"] == 1


def test_cli_verify_clean_section(capsys):
    code, out, _ = cli(capsys, "verify", "--section", "foundations")
    assert code == 0 and "verified: 13" in out


def test_cli_output_and_replay(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = cli(capsys, "verify", "--section", "foundations", "--section", "volume",
                     "--format", "json", "-o", str(path))
    assert code == 0 and path.exists()
    code, out, _ = cli(capsys, "verify", "--replay", str(path), "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == 0 and rows and all(r["evidence"]["reproduced"] for r in rows)


def test_cli_dga_mirror_check(capsys):
    code, out, _ = cli(capsys, "dga", "mirror-check", "--entry", "h7", "--format", "json")
    assert code == 0
    assert '"2*i"' in out


def test_cli_algebra_input(capsys):
    code, out, _ = cli(capsys, "dga", "betti", "--algebra", "(0,0,0,0,0,12)", "--J", "standard",
                       "--omega", "e16+e23+e45", "--format", "json")
    assert code == 0, out
