from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorpairs import catalog as cat
from mirrorpairs import linalg as la
from mirrorpairs.errors import Incompatible, OddDimension, ValidationError
from mirrorpairs.exterior import parse_form
from mirrorpairs.lie import LieAlgebra
from mirrorpairs.semidirect import eq5_violations, split_semidirect
from mirrorpairs.structures import (
    ComplexStructure,
    TwoForm,
    closedness_by_triples,
    compatibility_metric,
    is_closed,
    is_compatible,
    is_integrable,
    is_lagrangian,
    is_nondegenerate,
    is_pseudo_kahler,
    is_special_lagrangian,
    is_totally_real,
    nijenhuis,
    top_power,
    volume_form_check,
)
from oracles import d_by_triples, unit

FAMILY_OMEGA = "e16-e25+e34"
coef = st.integers(-2, 2).map(Fraction)
vec6 = st.lists(coef, min_size=6, max_size=6)


def form(text, n=6):
    return TwoForm.from_ext(parse_form(text, n))


def test_complex_structure_rejects_non_square_root():
    with pytest.raises(ValidationError):
        ComplexStructure(la.identity(2))


def test_nijenhuis_abelian_zero():
    L = LieAlgebra.abelian(4)
    J = ComplexStructure.standard(2)
    for i in range(4):
        for j in range(4):
            assert not any(nijenhuis(L, J, unit(4, i), unit(4, j)))


def test_h1_nijenhuis_on_base():
    sd, J, _ = cat.h1_example((1, 2, 3), cat.H1_RHO[:3])
    for i in sd.base_idx:
        for j in sd.base_idx:
            assert not any(nijenhuis(sd.total, J, unit(6, i), unit(6, j)))


@pytest.mark.parametrize("name", cat.STRUCTURE_NAMES)
@given(x=vec6, y=vec6)
@settings(max_examples=10, deadline=None)
def test_nijenhuis_identities(name, x, y):
    sd, J, _ = cat.example_structure(name)
    n = sd.total.dim
    x, y = x[:n], y[:n]
    L = sd.total
    assert nijenhuis(L, J, x, y) == [-c for c in nijenhuis(L, J, y, x)]
    assert nijenhuis(L, J, x, y) == J(nijenhuis(L, J, x, J(y)))


def test_integrable_examples():
    sd, J, _ = cat.solvable_example()
    assert is_integrable(sd.total, J)[0]
    assert is_integrable(cat.family_point(1, 1, 3, -2).algebra, ComplexStructure.standard(3))[0]
    assert not is_integrable(cat.family_point(1, 1, 1, -2).algebra, ComplexStructure.standard(3))[0]


@pytest.mark.parametrize("point", [(1, 1, 3, -2), (1, 1, 1, -2), (1, 1, 0, 0), (2, -1, 0, 1)])
def test_integrability_two_routes(point):
    p = cat.family_point(*point)
    full = is_integrable(p.algebra, p.J)[0]
    base = is_integrable(p.algebra, p.J, p.sd.base_idx)[0]
    eq5 = not eq5_violations(p.sd, p.J)
    assert full == base == eq5 == (p.b - p.c - p.d == 0)


def test_closed_examples():
    assert is_closed(LieAlgebra.abelian(6), form("e13+e25"))
    sd, _, omega = cat.solvable_example()
    assert is_closed(sd.total, omega)
    assert not is_closed(cat.family_point(1, 1, 1, 0).algebra, form(FAMILY_OMEGA))


def test_evaluate_closedness_at_point():
    # (dω)(e1, e2, e6) = 0 on the family member (1,1,3,-2)
    L = cat.family_point(1, 1, 3, -2).algebra
    omega = form(FAMILY_OMEGA)
    assert d_by_triples(L, omega.to_ext().terms, 2, [unit(6, 0), unit(6, 1), unit(6, 5)]) == 0


@pytest.mark.parametrize("point", [(1, 1, 3, -2), (1, 1, 1, 0), (2, 1, 0, -3), (1, 2, 3, 4)])
def test_closedness_two_routes(point):
    L = cat.family_point(*point).algebra
    omega = form(FAMILY_OMEGA)
    assert is_closed(L, omega) == closedness_by_triples(L, omega) == (sum(point[:2]) + point[3] == 0)


def test_nondegenerate():
    assert is_nondegenerate(form("e12+e34", 4))
    assert not is_nondegenerate(form("e12", 4))
    with pytest.raises(OddDimension):
        is_nondegenerate(form("e12", 3))
    for a in cat.H1_TUPLES:
        assert is_nondegenerate(cat.h1_example(a)[2])


def test_top_power_matches_determinant():
    omega = form(FAMILY_OMEGA)
    top = top_power(omega)
    assert not top.is_zero()
    assert la.det(omega.B) != 0


def test_lagrangian_and_totally_real():
    omega = form(FAMILY_OMEGA)
    base = [unit(6, i) for i in (0, 2, 4)]
    fiber = [unit(6, i) for i in (1, 3, 5)]
    assert is_lagrangian(omega, base) and is_lagrangian(omega, fiber)
    J = ComplexStructure.standard(3)
    assert is_totally_real(J, base)
    assert not is_totally_real(J, [unit(6, i) for i in (0, 1, 2)])


def test_family_metric_signature():
    p = cat.family_point(1, 1)
    g = compatibility_metric(p.omega, p.J)
    assert tuple(g.signature)[:2] == (4, 2)
    G = g.as_list()
    assert G == la.transpose(G)
    assert la.matmul(la.transpose(p.J.J), la.matmul(G, p.J.J)) == G


def test_solvable_metric_definite():
    _, J, omega = cat.solvable_example()
    assert tuple(compatibility_metric(omega, J).signature)[:2] == (6, 0)


def test_h1_mixed_signs_indefinite():
    _, J, omega = cat.h1_example((1, -1))
    assert tuple(compatibility_metric(omega, J).signature)[:2] == (2, 2)


def test_incompatible_carries_pair():
    with pytest.raises(Incompatible):
        compatibility_metric(form("e14+e23", 4), ComplexStructure.standard(2))
    assert not is_compatible(form("e14+e23", 4), ComplexStructure.standard(2))


@pytest.mark.parametrize("ab", [(1, 0), (0, 1), (1, 1), (-2, 3), (Fraction(1, 2), Fraction(-1, 3))])
def test_family_pseudo_kahler_special_lagrangian(ab):
    p = cat.family_point(*ab)
    assert is_pseudo_kahler(p.algebra, p.J, p.omega)
    assert is_special_lagrangian(p.sd, p.J, p.omega)


def test_abelian_pseudo_kahler():
    assert is_pseudo_kahler(LieAlgebra.abelian(4), ComplexStructure.standard(2), form("e12+e34", 4))


def test_four_dim_special_lagrangian():
    sd, J, omega = cat.four_dim_example()
    assert is_special_lagrangian(sd, J, omega)
    assert not is_special_lagrangian(sd, J, form("e12+e34", 4))


def test_volume_form():
    p = cat.family_point(1, 1)
    rep = volume_form_check(p.sd, p.J, compatibility_metric(p.omega, p.J))
    assert rep.applicable and rep.holds
    L = LieAlgebra.abelian(2)
    sd = split_semidirect(L, (0,), (1,))
    J = ComplexStructure.standard(1)
    rep = volume_form_check(sd, J, compatibility_metric(form("e12", 2), J))
    assert rep.holds and rep.im_on_fiber.coefficient(1) != 0
    sd, J, omega = cat.four_dim_example()
    rep = volume_form_check(sd, J, compatibility_metric(omega, J))
    assert not rep.applicable
