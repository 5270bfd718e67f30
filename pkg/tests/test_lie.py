import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorpairs import linalg as la
from mirrorpairs.errors import DegreeOverflow, JacobiFailure, ParseError
from mirrorpairs.exterior import ExtElement
from mirrorpairs.lie import (
    LieAlgebra,
    betti_numbers,
    ce_differential,
    center,
    change_basis,
    check_jacobi,
    d_matrix,
    derived_algebra,
    fingerprint,
    is_nilpotent,
    series_profile,
)
from mirrorpairs.shorthand import format_shorthand, parse_shorthand
from oracles import brute_jacobi, d_by_triples, naive_rank

H7 = "(0,0,0,12,13,23)"
H4 = "(0,0,0,0,12,14+23)"
NILPOTENT = [
    "(0,0,0,0,0,0)",
    "(0,0,0,0,0,12)",
    "(0,0,0,12,13,23)",
    "(0,0,0,0,12,14+23)",
    "(0,0,0,12,13,14+23)",
    "(0,0,0,12,23,14-35)",
    "(0,0,12,13,14,15)",
]

coef = st.integers(-2, 2).map(Fraction)
vec6 = st.lists(coef, min_size=6, max_size=6)


def random_brackets(n):
    pairs = list(itertools.combinations(range(n), 2))
    return st.dictionaries(st.sampled_from(pairs), st.dictionaries(st.integers(0, n - 1), coef, max_size=2), max_size=4)


@given(random_brackets(4))
@settings(max_examples=150)
def test_jacobi_matches_brute_force(br):
    L = LieAlgebra(4, br, check=False)
    assert bool(check_jacobi(L)) == bool(brute_jacobi(L))
    assert [t for t, _ in check_jacobi(L)] == brute_jacobi(L)


def test_corrupted_h7_is_rejected():
    L = parse_shorthand(H7)
    br = {k: dict(v) for k, v in L.brackets.items()}
    br[(2, 3)] = {5: Fraction(1)}
    bad = LieAlgebra(6, br, check=False)
    assert brute_jacobi(bad) == [(0, 1, 2)]
    assert [t for t, _ in check_jacobi(bad)] == [(0, 1, 2)]
    with pytest.raises(JacobiFailure):
        LieAlgebra(6, br)


@pytest.mark.parametrize("text", NILPOTENT)
def test_d_squared_zero(text):
    L = parse_shorthand(text)
    for k in range(L.dim - 1):
        assert la.is_zero_matrix(la.matmul(d_matrix(L, k + 1), d_matrix(L, k)))


@pytest.mark.parametrize("text", NILPOTENT[1:5])
@given(vecs=st.lists(vec6, min_size=3, max_size=3), coeffs=st.lists(coef, min_size=15, max_size=15))
@settings(max_examples=20, deadline=None)
def test_d_matches_triple_formula(text, vecs, coeffs):
    L = parse_shorthand(text)
    alpha = ExtElement(6, 2, dict(zip(itertools.combinations(range(6), 2), coeffs)))
    da = ce_differential(L, alpha)
    assert d_by_triples(L, alpha.terms, 2, vecs) == sum(
        c * _det3([[v[i] for i in k] for v in vecs]) for k, c in da.terms.items()
    )


def _det3(m):
    return la.det([[Fraction(x) for x in r] for r in m])


def test_d_on_one_forms_sign():
    # (de^4)(e1, e2) = -e^4([e1, e2]) = 1 for the entry "12"
    L = parse_shorthand(H7)
    assert ce_differential(L, ExtElement.basis(6, 3)) == ExtElement.basis(6, 0, 1)
    assert L.basis_bracket(0, 1) == [0, 0, 0, -1, 0, 0]


def test_degree_overflow():
    with pytest.raises(DegreeOverflow):
        ce_differential(parse_shorthand(H7), ExtElement(6, 6, {(0, 1, 2, 3, 4, 5): Fraction(1)}))


def test_betti_frozen():
    # independent values: Künneth for heis3 ⊕ ℝ³ and binomials for the abelian case
    assert betti_numbers(parse_shorthand("(0,0,0,0,0,12)")) == [1, 5, 11, 14, 11, 5, 1]
    assert betti_numbers(parse_shorthand("(0,0,0,0,0,0)")) == [1, 6, 15, 20, 15, 6, 1]
    assert betti_numbers(parse_shorthand("(0,0,12)")) == [1, 2, 2, 1]


@pytest.mark.parametrize("text", NILPOTENT)
def test_betti_from_naive_ranks(text):
    L = parse_shorthand(text)
    from math import comb

    ranks = [naive_rank(d_matrix(L, k)) for k in range(L.dim)] + [0]
    expect = [comb(L.dim, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(L.dim + 1)]
    assert betti_numbers(L) == expect
    assert sum((-1) ** k * b for k, b in enumerate(expect)) == 0


def test_series_profiles():
    p = series_profile(parse_shorthand(H7))
    assert p.lcs_dims == (6, 3, 0) and p.center_dim == 3 and p.derived_dim == 3 and p.nilpotent
    p = series_profile(parse_shorthand("(0,0,12,13,14,15)"))
    assert p.lcs_dims == (6, 4, 3, 2, 1, 0)
    solv = LieAlgebra(2, {(0, 1): {1: Fraction(1)}})
    assert not is_nilpotent(solv)


def test_h11_member_invariants():
    L = parse_shorthand("(0,0,0,12,13,14+23)")
    assert len(derived_algebra(L)) == 3 and len(center(L)) == 2


def test_four_dim_invariants():
    L = parse_shorthand("(0,0,12,0)")
    assert len(derived_algebra(L)) == 1 and len(center(L)) == 2


def test_fingerprint_separates_h4_h7():
    assert fingerprint(parse_shorthand(H4)) != fingerprint(parse_shorthand(H7))


invertible = st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=6, max_size=6).filter(
    lambda m: la.det([[Fraction(x) for x in r] for r in m]) != 0
)


@pytest.mark.parametrize("text", [H4, H7, "(0,0,0,12,13,14+23)"])
@given(p=invertible)
@settings(max_examples=8, deadline=None)
def test_fingerprint_basis_invariant(text, p):
    L = parse_shorthand(text)
    M = change_basis(L, [[Fraction(x) for x in r] for r in p])
    assert not check_jacobi(M)
    assert fingerprint(M) == fingerprint(L)


@pytest.mark.parametrize("text", NILPOTENT)
def test_shorthand_round_trip(text):
    L = parse_shorthand(text)
    assert parse_shorthand(format_shorthand(L)) == L


def test_shorthand_params():
    L = parse_shorthand("(0,0,0,a*12,b*13,c*14+d*23)", {"a": 1, "b": 2, "c": 3, "d": -1})
    assert L.basis_bracket(1, 2)[5] == 1


@pytest.mark.parametrize("text", ["0,0,12", "(0,,12)", "(0,0,14)", "(0,0,1x)", "(0,0,11)"])
def test_shorthand_rejects(text):
    with pytest.raises(ParseError):
        parse_shorthand(text)


def test_json_round_trip():
    L = parse_shorthand(H4)
    assert LieAlgebra.from_json(L.to_json()) == L
    with pytest.raises(ParseError):
        LieAlgebra.from_json({"brackets": []})
