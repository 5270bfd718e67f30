from fractions import Fraction

import pytest

from mirrorpairs import catalog as cat
from mirrorpairs.errors import UnknownEntry
from mirrorpairs.isomorphism import verify_isomorphism
from mirrorpairs import linalg as la
from mirrorpairs.lie import change_basis, is_nilpotent
from mirrorpairs.semidirect import dual_semidirect
from mirrorpairs.shorthand import format_shorthand, parse_shorthand


def test_thirteen_constructions():
    cons = cat.all_constructions()
    assert len(cons) == 13
    assert all(is_nilpotent(sd.total) for sd in cons.values())


def test_unknown_entry():
    with pytest.raises((UnknownEntry, KeyError)):
        cat.entry("h99")


def test_family_defaults():
    p = cat.family_point(1, 2)
    assert (p.c, p.d) == (Fraction(5), Fraction(-3))
    assert format_shorthand(p.algebra) == "(0,0,0,12,2*13,5*14-3*23)"


def test_reference_forms_parse():
    for name, text in cat.REFERENCE.items():
        assert is_nilpotent(parse_shorthand(text)), name


@pytest.mark.parametrize("point", cat.DUALITY_POINTS)
def test_duality_points(point):
    assert cat.duality_check(*point).ok


@pytest.mark.parametrize("a", cat.H1_TUPLES)
def test_h1_kahler_iff_same_sign(a):
    c = cat.h1_check(a)
    assert c.ok and c.symplectic and c.integrable
    same = all(x > 0 for x in a) or all(x < 0 for x in a)
    assert c.kahler == same


def test_solvable_strings():
    s = cat.solvable_check()
    assert s.kahler and tuple(s.signature) == (6, 0)
    assert s.omega_J == cat.EXPECTED_SOLVABLE_OMEGA_J == "e^1∧e_2 + e^3∧e_4 + e^5∧e_6"
    assert s.J_omega_matches
    # the emitted dual carries ρ* = -ρᵀ; it makes ω_J closed and J_ω integrable
    assert set(s.dual_brackets) == {"[e1,e3] = -e5", "[e1,e5] = e3", "[e1,e^4] = -e^6", "[e1,e^6] = e^4"}
    assert s.omega_J_closed and s.J_omega_integrable
    assert not s.brackets_match


def test_four_dim_self_mirror():
    m = cat.four_dim_self_mirror()
    assert m.ok and m.special_lagrangian
    assert 0 < m.searched <= 2 ** 4 * 24


@pytest.mark.parametrize("ab", cat.VOLUME_POINTS)
def test_volume(ab):
    v = cat.volume_check(*ab)
    assert v.ok and v.re_zero and v.im_nonzero


@pytest.mark.parametrize("ab", [(1, 0), (1, 1), (-2, 1)])
@pytest.mark.parametrize("s", cat.SCALES)
def test_scaling(ab, s):
    for eps in (1, -1):
        assert cat.scaling_check(*ab, s, eps).ok


def test_scaling_moves_point():
    # ψ with s = 2 sends h_{1,1} to h_{1/4,1/4}, not back to h_{1,1}
    moved = change_basis(cat.family_point(1, 1).algebra, la.inverse(cat.scaling_matrix(2, 1)))
    assert moved == cat.family_point(Fraction(1, 4), Fraction(1, 4)).algebra
    assert moved != cat.family_point(1, 1).algebra


def test_h11_cube_root_witness():
    a, b, r = Fraction(1), Fraction(-7, 6), Fraction(-1, 2)
    assert r ** 3 == -(a + b) / (a * (a + 2 * b))
    W = cat.h11_cube_root_witness(a, b, r)
    assert verify_isomorphism(cat.family_point(a, b).algebra, cat.reference_algebra("h11"), W)


def test_stated_witnesses():
    res = {w.label: w.ok for w in cat.stated_witness_checks()}
    assert res.pop("h_{-1,0} ≅ h9") is False
    assert all(res.values())


@pytest.mark.parametrize("name", cat.STRUCTURE_NAMES)
def test_correspondences(name):
    assert cat.correspondence_check(name).ok


@pytest.mark.parametrize("key", ["h7", "h4", "h9", "h8-heis"])
def test_dual_identification(key):
    sd = cat.entry(key)
    hv = dual_semidirect(sd)
    ident = cat.identify(hv.total)
    assert ident.found and ident.name == cat.ENTRIES[key].expected_dual
    assert verify_isomorphism(hv.total, cat.catalog_algebra(ident.name), ident.witness)


def test_identify_unknown_fingerprint():
    ident = cat.identify(parse_shorthand("(0,0,12,13,14,15)"))
    assert not ident.found and ident.reason


def test_bracket_lines_format():
    sd = cat.solvable_example()[0]
    labels = ["e1", "e2", "e3", "e4", "e5", "e6"]
    lines = cat.bracket_lines(sd.total, labels)
    assert "[e1,e3] = -e5" in lines and "[e1,e5] = e3" in lines
