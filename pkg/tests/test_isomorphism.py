from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorpairs import catalog as cat
from mirrorpairs import linalg as la
from mirrorpairs.errors import DimensionMismatch
from mirrorpairs.isomorphism import IsoWitness, NotFound, find_isomorphism, verify_isomorphism
from mirrorpairs.lie import change_basis, fingerprint
from mirrorpairs.shorthand import parse_shorthand

H4 = parse_shorthand("(0,0,0,0,12,14+23)")
H7 = parse_shorthand("(0,0,0,12,13,23)")
H9 = parse_shorthand("(0,0,0,0,12,14+25)")

unipotent = st.lists(st.integers(-1, 1), min_size=15, max_size=15).map(
    lambda xs: [[Fraction(1) if i == j else (Fraction(xs[i * 6 + j - (i + 1) * (i + 2) // 2]) if j > i else Fraction(0))
                 for j in range(6)] for i in range(6)]
)
invertible = st.lists(st.lists(st.integers(-2, 2).map(Fraction), min_size=6, max_size=6), min_size=6, max_size=6).filter(
    lambda m: la.det(m) != 0
)


@given(invertible)
@settings(max_examples=15, deadline=None)
def test_change_of_basis_verifies(p):
    for A in (H4, H7, H9):
        B = change_basis(A, p)
        assert verify_isomorphism(A, B, p)
        assert fingerprint(A) == fingerprint(B)


@given(invertible)
@settings(max_examples=15, deadline=None)
def test_wrong_witness_rejected(p):
    B = change_basis(H7, p)
    q = [row[:] for row in p]
    q[0][0] += 1
    if la.det(q) != 0 and change_basis(H7, q) != B:
        assert not verify_isomorphism(H7, B, q)


@given(unipotent)
@settings(max_examples=10, deadline=None)
def test_search_recovers_basis_change(p):
    B = change_basis(H7, p)
    w = find_isomorphism(H7, B, budget=50000, seed=0)
    assert w and verify_isomorphism(H7, B, w)


def test_fingerprint_mismatch_is_not_found():
    r = find_isomorphism(H4, H7)
    assert isinstance(r, NotFound) and not r and "fingerprint" in r.reason


def test_singular_witness():
    assert not verify_isomorphism(H7, H7, la.zeros(6, 6))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        verify_isomorphism(H7, parse_shorthand("(0,0,12)"), la.identity(3))


def test_hint_tried_first():
    w = IsoWitness.of(la.identity(6))
    assert find_isomorphism(H7, H7, hints=(w,)) == w


def test_deterministic_with_seed():
    L = cat.family_point(-2, 1).algebra
    a = find_isomorphism(L, cat.catalog_algebra("h7"), seed=3)
    b = find_isomorphism(L, cat.catalog_algebra("h7"), seed=3)
    assert a and a == b


def test_stated_bases_h9():
    # h_{1,0} with the basis {e2, e1, e5, e3, -e4, -e6}
    W = la.from_columns([[1 if k == i else 0 for k in range(6)] for i in (1, 0, 4, 2)]
                        + [[-1 if k == 3 else 0 for k in range(6)], [-1 if k == 5 else 0 for k in range(6)]])
    W = [[Fraction(x) for x in r] for r in W]
    assert verify_isomorphism(cat.family_point(1, 0).algebra, H9, W)
    # on h_{-1,0} the literal basis flips every bracket sign; its negative works
    assert not verify_isomorphism(cat.family_point(-1, 0).algebra, H9, W)
    assert verify_isomorphism(cat.family_point(-1, 0).algebra, H9, la.scale(-1, W))
