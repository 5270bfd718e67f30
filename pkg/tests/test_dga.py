from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorpairs import catalog as cat
from mirrorpairs import linalg as la
from mirrorpairs.dga import (
    DGAMorphism,
    build_complex_dga,
    build_symplectic_dga,
    dbar_oracle_violations,
    mirror_certificate,
    mirror_morphism,
    natural_pairing,
    pairing_check,
    phi_map,
    schouten_bracket,
    verify_dga_isomorphism,
)
from mirrorpairs.errors import NotIntegrable, NotSymplectic
from mirrorpairs.exterior import ExtElement, contract, parse_form
from mirrorpairs.lie import ce_differential
from mirrorpairs.scalars import I
from mirrorpairs.semidirect import dual_semidirect, omega_from_J
from mirrorpairs.shorthand import parse_shorthand
from mirrorpairs.structures import ComplexStructure, TwoForm
from oracles import unit

H9 = parse_shorthand("(0,0,0,0,12,14+25)")
FAST = ("h1", "h7", "h9", "solvable", "four-dim")
coef = st.integers(-2, 2).map(Fraction)
elem12 = st.lists(coef, min_size=12, max_size=12)


def test_schouten_covectors_commute():
    a = [Fraction(0)] * 6 + unit(6, 2)
    b = [Fraction(0)] * 6 + unit(6, 4)
    assert not any(schouten_bracket(a, b, H9))


def test_schouten_contraction_component():
    # [e1 • e^6] has covector part ι_{e1} d e^6
    x = unit(6, 0) + [Fraction(0)] * 6
    beta = [Fraction(0)] * 6 + unit(6, 5)
    got = schouten_bracket(x, beta, H9)[6:]
    de6 = ce_differential(H9, ExtElement.basis(6, 5))
    want = contract(unit(6, 0), de6)
    assert got == [want.coefficient(k) for k in range(6)]


@given(elem12, elem12, elem12)
@settings(max_examples=40, deadline=None)
def test_schouten_lie_axioms(a, b, c):
    L = cat.family_point(1, 1).algebra
    ab = schouten_bracket(a, b, L)
    assert ab == [-x for x in schouten_bracket(b, a, L)]
    s = [
        p + q + r
        for p, q, r in zip(
            schouten_bracket(a, schouten_bracket(b, c, L), L),
            schouten_bracket(b, schouten_bracket(c, a, L), L),
            schouten_bracket(c, schouten_bracket(a, b, L), L),
        )
    ]
    assert not any(s)


@pytest.mark.parametrize("name", FAST)
def test_complex_dga_axioms_and_oracle(name):
    sd, J, _ = cat.example_structure(name)
    A = build_complex_dga(sd.total, J)
    assert A.check_axioms()
    assert not dbar_oracle_violations(sd.total, A)


@pytest.mark.parametrize("name", FAST)
def test_symplectic_dga_axioms(name):
    sd, J, _ = cat.example_structure(name)
    hv, om = omega_from_J(sd, J)
    S = build_symplectic_dga(hv.total, om)
    assert S.check_axioms()


@pytest.mark.parametrize("name", FAST)
def test_lambda_is_2i(name):
    sd, J, _ = cat.example_structure(name)
    assert pairing_check(sd, J) == 2 * I


@pytest.mark.parametrize("name", FAST)
def test_mirror_isomorphism(name):
    sd, J, _ = cat.example_structure(name)
    c = mirror_certificate(sd, J)
    assert c.ok
    if not sd.total.is_abelian():
        assert c.iso.constant == -2 * I
    assert c.betti_complex == c.betti_symplectic


def test_phi_is_bracket_isomorphism():
    sd, J, _ = cat.example_structure("h7")
    m = phi_map(sd, J)
    assert la.rank(m.degree_one_map) == 6


def test_wrong_morphism_rejected():
    sd, J, _ = cat.example_structure("h7")
    hv, om = omega_from_J(sd, J)
    A = build_complex_dga(sd.total, J)
    S = build_symplectic_dga(hv.total, om)
    good = mirror_morphism(sd, J, A, hv, om)
    assert verify_dga_isomorphism(S, A, good)
    bad = DGAMorphism(la.scale(Fraction(2), good.degree_one_map))
    assert not verify_dga_isomorphism(S, A, bad)
    assert not verify_dga_isomorphism(S, A, DGAMorphism(la.zeros(6, 6)))


def test_h4_h9_betti_mismatch():
    sd4, J4, _ = cat.example_structure("h4")
    sd9, J9, _ = cat.example_structure("h9")
    A4 = build_complex_dga(sd4.total, J4)
    hv9, om9 = omega_from_J(sd9, J9)
    S9 = build_symplectic_dga(hv9.total, om9)
    assert A4.betti_numbers() != S9.betti_numbers()


def test_pairing_is_symmetric():
    a = [Fraction(1)] * 12
    b = list(range(12))
    assert natural_pairing(a, b) == natural_pairing(b, a)


def test_non_integrable_rejected():
    L = cat.family_point(1, 1, 1, -2).algebra
    with pytest.raises(NotIntegrable):
        build_complex_dga(L, ComplexStructure.standard(3))


def test_degenerate_form_rejected():
    with pytest.raises(NotSymplectic):
        build_symplectic_dga(H9, TwoForm.from_ext(parse_form("e12", 6)))


def test_betti_lengths():
    sd, J, _ = cat.example_structure("h9")
    A = build_complex_dga(sd.total, J)
    b = A.betti_numbers()
    assert len(b) == 7 and b[0] == 1
    assert sum((-1) ** k * x for k, x in enumerate(b)) == 0
    hv = dual_semidirect(sd)
    assert hv.total.dim == 6
