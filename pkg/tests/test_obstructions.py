from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorpairs import catalog as cat
from mirrorpairs import linalg as la
from mirrorpairs.lie import LieAlgebra
from mirrorpairs.obstructions import (
    H17_CITATION,
    block_compatibility_agrees,
    closed_two_forms,
    h6_certificate,
    no_symplectic_certificate,
)
from mirrorpairs.structures import TwoForm, is_closed

coef = st.integers(-2, 2).map(Fraction)
mat3 = st.lists(st.lists(coef, min_size=3, max_size=3), min_size=3, max_size=3)


def test_h3_no_symplectic():
    L = cat.entry("h3").total
    cert = no_symplectic_certificate(L)
    assert cert.holds
    for B in closed_two_forms(L):
        assert is_closed(L, TwoForm(B))
        for v in cert.common_radical:
            assert not any(la.matvec(B, v))


def test_abelian_has_symplectic_forms():
    cert = no_symplectic_certificate(LieAlgebra.abelian(4))
    assert cert.closed_dim == 6 and not cert.holds


def test_closed_forms_on_h7_are_closed():
    L = cat.entry("h7").total
    forms = closed_two_forms(L)
    assert forms
    assert all(is_closed(L, TwoForm(B)) for B in forms)


@given(mat3, mat3)
@settings(max_examples=150, deadline=None)
def test_block_compatibility_agrees(a, Bm):
    if la.det(a) != 0:
        assert block_compatibility_agrees(a, Bm)


def test_h6_small_grid():
    cert = h6_certificate(values=(Fraction(1), Fraction(-1), Fraction(2)), cross_check_every=7)
    assert cert.holds
    assert cert.grid_size == 3 ** 6 and cert.swept > 0
    assert cert.closed_lagrangian_dim == 6
    assert cert.nijenhuis_cross_checks > 0


def test_h6_certificate_fails_on_abelian():
    # negative control: the abelian algebra carries compatible closed Lagrangian forms
    cert = h6_certificate(L=LieAlgebra.abelian(6), values=(Fraction(1), Fraction(-1)), cross_check_every=0)
    assert not cert.holds and cert.violations


def test_h17_is_external():
    assert H17_CITATION.subject == "h17" and H17_CITATION.source
