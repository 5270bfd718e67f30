import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorpairs import linalg as la
from mirrorpairs.errors import DegenerateForm
from oracles import naive_rank

small = st.integers(-3, 3).map(Fraction)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


sized = st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(lambda rc: matrices(*rc))
square = st.integers(1, 4).flatmap(lambda n: matrices(n, n))


def leibniz_det(m):
    n = len(m)
    total = Fraction(0)
    for p in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        prod = Fraction(sign)
        for i in range(n):
            prod *= m[i][p[i]]
        total += prod
    return total


@given(sized)
def test_rank_matches_naive(m):
    assert la.rank(m) == naive_rank(m)


@given(sized)
def test_kernel_is_kernel(m):
    ker = la.kernel_basis(m, len(m[0]))
    assert len(ker) == len(m[0]) - naive_rank(m)
    for v in ker:
        assert all(x == 0 for x in la.matvec(m, v))
    assert la.span_dim(ker) == len(ker)


@given(square)
def test_det_matches_leibniz(m):
    assert la.det(m) == leibniz_det(m)


@given(square)
@settings(max_examples=60)
def test_inverse(m):
    if leibniz_det(m) == 0:
        with pytest.raises(ArithmeticError):
            la.inverse(m)
    else:
        assert la.matmul(m, la.inverse(m)) == la.identity(len(m))


@given(square, st.lists(small, min_size=4, max_size=4))
def test_solve(m, b):
    b = b[: len(m)]
    if leibniz_det(m) != 0:
        x = la.solve(m, b)
        assert la.matvec(m, x) == b


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_signature_of_congruent_diagonal(m):
    s = la.add(m, la.transpose(m))
    if naive_rank(s) < len(s):
        with pytest.raises(DegenerateForm):
            la.signature(s)
    else:
        p, q = la.signature(s)[:2]
        assert p + q == len(s)


def test_signature_examples():
    assert tuple(la.signature([[1, 0], [0, -1]]))[:2] == (1, 1)
    assert tuple(la.signature([[0, 1], [1, 0]]))[:2] == (1, 1)
    assert tuple(la.signature([[2, 1], [1, 2]]))[:2] == (2, 0)


def test_intersect_and_annihilator():
    e = la.identity(3)
    u = [e[0], e[1]]
    w = [e[1], e[2]]
    inter = la.intersect(u, w, 3)
    assert la.span_dim(inter) == 1 and la.in_span(e[1], inter)
    ann = la.annihilator(u, 3)
    assert la.span_dim(ann) == 1 and la.in_span(e[2], ann)


def test_coordinate_solver():
    basis = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    cs = la.CoordinateSolver(basis)
    assert cs.coords([Fraction(2), Fraction(0)]) == [1, 1]
