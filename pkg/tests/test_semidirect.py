from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorpairs import catalog as cat
from mirrorpairs import linalg as la
from mirrorpairs.errors import NotARepresentation, NotFlatOrTorsionFree, NotLagrangian
from mirrorpairs.lie import LieAlgebra, check_jacobi
from mirrorpairs.semidirect import (
    Connection,
    J_from_omega,
    Representation,
    build_semidirect,
    complex_from_connection,
    connection_check,
    connection_from_complex,
    connection_from_symplectic,
    dual_connection,
    dual_representation,
    dual_semidirect,
    homomorphism_violations,
    interleaved_layout,
    omega_from_J,
    semidirect_invariants_hold,
    split_semidirect,
    symplectic_from_connection,
)
from mirrorpairs.structures import TwoForm, is_closed, is_integrable
from mirrorpairs.exterior import parse_form
from oracles import unit

KEYS = list(cat.ENTRIES) + ["h1"]


@pytest.mark.parametrize("key", KEYS)
def test_dual_is_involution(key):
    sd = cat.entry(key)
    assert dual_semidirect(dual_semidirect(sd)).total == sd.total
    assert not homomorphism_violations(dual_representation(sd.rep))
    assert semidirect_invariants_hold(sd) and semidirect_invariants_hold(dual_semidirect(sd))


@pytest.mark.parametrize("key", KEYS)
def test_split_recovers_representation(key):
    sd = cat.entry(key)
    again = split_semidirect(sd.total, sd.base_idx, sd.fiber_idx)
    assert again.rep.rho == sd.rep.rho


@pytest.mark.parametrize("key", KEYS)
def test_brackets_of_product(key):
    sd = cat.entry(key)
    n = sd.total.dim
    for a, bi in enumerate(sd.base_idx):
        for k, fk in enumerate(sd.fiber_idx):
            want = [Fraction(0)] * n
            for r, fr in enumerate(sd.fiber_idx):
                want[fr] = sd.rep.rho[a][r][k]
            assert sd.total.bracket(unit(n, bi), unit(n, fk)) == want
        for fj in sd.fiber_idx:
            for fk in sd.fiber_idx:
                assert not any(sd.total.bracket(unit(n, fj), unit(n, fk)))


def test_dual_matrices_are_negative_transpose():
    rep = cat.entry("h7").rep
    for M, D in zip(rep.rho, dual_representation(rep).rho):
        assert D == la.neg(la.transpose(M))


def test_not_a_representation():
    g = LieAlgebra(2, {(0, 1): {1: Fraction(1)}})
    with pytest.raises(NotARepresentation):
        Representation(g, [[[1]], [[1]]])


@pytest.mark.parametrize("name", cat.STRUCTURE_NAMES)
def test_complex_connection_round_trip(name):
    sd, J, _ = cat.example_structure(name)
    gamma = connection_from_complex(sd, J)
    chk = connection_check(gamma)
    assert chk.flat and chk.torsion_free
    sd2, J2 = complex_from_connection(gamma, (sd.base_idx, sd.fiber_idx))
    assert connection_from_complex(sd2, J2) == gamma
    assert is_integrable(sd2.total, J2)[0]


@pytest.mark.parametrize("name", cat.STRUCTURE_NAMES)
def test_symplectic_connection_round_trip(name):
    sd, _, omega = cat.example_structure(name)
    gamma = connection_from_symplectic(sd, omega)
    chk = connection_check(gamma)
    assert chk.flat and chk.torsion_free
    sd2, om2 = symplectic_from_connection(gamma, (sd.base_idx, sd.fiber_idx))
    assert connection_from_symplectic(sd2, om2) == gamma


def test_torsion_detected():
    g = LieAlgebra.abelian(2)
    gamma = Connection(g, [[[0, 1], [0, 0]], [[0, 0], [0, 0]]])
    chk = connection_check(gamma)
    assert not chk.torsion_free
    with pytest.raises(NotFlatOrTorsionFree):
        complex_from_connection(gamma)


def test_solvable_connection_is_skew():
    sd, J, _ = cat.solvable_example()
    gamma = connection_from_complex(sd, J)
    for M in gamma.gamma:
        assert la.neg(la.transpose(M)) == M
    assert dual_connection(gamma, la.identity(3)) == gamma


def test_h8_dual_connection():
    sd, J, omega, G = cat.h8_example()
    gamma = connection_from_complex(sd, J)
    dual = dual_connection(gamma, G)
    chk = connection_check(dual)
    assert chk.flat and chk.torsion_free


small = st.integers(-2, 2)


@given(small, small, small, small)
@settings(max_examples=30, deadline=None)
def test_duality_equivalences(a, b, c, d):
    p = cat.family_point(a, b, c, d)
    hv, omJ = omega_from_J(p.sd, p.J)
    assert is_closed(hv.total, omJ) == is_integrable(p.algebra, p.J)[0] == (b - c - d == 0)
    _, Jom = J_from_omega(p.sd, p.omega, dual=hv)
    assert is_integrable(hv.total, Jom)[0] == is_closed(p.algebra, p.omega) == (a + b + d == 0)


def test_round_trips_on_dual():
    p = cat.family_point(1, 1)
    hv, omJ = omega_from_J(p.sd, p.J)
    back, J2 = J_from_omega(hv, omJ)
    assert back.total == p.algebra and J2.J == p.J.J
    _, Jom = J_from_omega(p.sd, p.omega, dual=hv)
    back, om2 = omega_from_J(hv, Jom)
    assert om2.B == p.omega.B


def test_J_from_omega_needs_lagrangian():
    sd = cat.entry("h1")
    bad = TwoForm.from_ext(parse_form("e13+e24+e56", 6))
    with pytest.raises(NotLagrangian):
        J_from_omega(sd, bad)


def test_interleaved_build():
    rep = cat.entry("h7").rep
    sd = build_semidirect(rep, interleaved_layout(3))
    assert sd.base_idx == (0, 2, 4) and sd.fiber_idx == (1, 3, 5)
    assert not check_jacobi(sd.total)
