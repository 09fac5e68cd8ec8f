import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from envalg.errors import GeneratorMismatch
from envalg.freealg import FreePoly, format_scalar, inversions, is_sorted_word, render_word, scalar
from envalg.parsing import parse_poly

from conftest import free_polys


def test_zero_has_negative_infinite_degree():
    z = FreePoly.zero(2)
    assert z.degree == -math.inf
    assert str(z) == "0"
    assert not z


def test_render_examples():
    p = FreePoly(2, {(2, 1): 1, (1, 2): Fraction(-1, 2), (): 3, (1,): -1})
    assert str(p) == "-1/2*X1*X2 + X2*X1 - X1 + 3"
    assert str(FreePoly(3, {(1, 2): 1, (3,): 1})) == "X1*X2 + X3"
    assert str(FreePoly(1, {(1,): -1})) == "-X1"
    assert str(FreePoly.one(4)) == "1"
    assert render_word((), None) == "1"
    assert FreePoly(3, {(1, 2): 1}).render(("P", "Q", "R")) == "P*Q"


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises((TypeError, ValueError)):
        scalar("1.5")
    assert scalar("3/4") == Fraction(3, 4)
    assert format_scalar(Fraction(-3, 4)) == "-3/4"


def test_generator_mismatch():
    with pytest.raises(GeneratorMismatch):
        FreePoly.gen(2, 1) + FreePoly.gen(3, 1)
    with pytest.raises(ValueError):
        FreePoly(2, {(3,): 1})


def test_noncommutative_product():
    x, y = FreePoly.gen(2, 1), FreePoly.gen(2, 2)
    assert x * y != y * x
    assert (x + y) ** 2 == FreePoly(2, {(1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 1})
    assert (x * y).degree == 2


def test_components_and_homogeneity():
    p = FreePoly(2, {(1, 2): 2, (1,): 1, (): 5})
    assert p.component(1) == FreePoly.gen(2, 1)
    assert p.component(7) == FreePoly.zero(2)
    assert not p.is_homogeneous()
    assert p.component(2).is_homogeneous()


def test_word_statistics():
    assert inversions((3, 1, 2)) == 2
    assert is_sorted_word((1, 1, 2, 3))
    assert not is_sorted_word((2, 1))


@settings(max_examples=60, deadline=None)
@given(free_polys(n=2), free_polys(n=2), free_polys(n=2))
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p - p == FreePoly.zero(2)
    assert p * FreePoly.one(2) == p


@settings(max_examples=80, deadline=None)
@given(free_polys(), free_polys())
def test_degree_of_product(p, q):
    if p.n != q.n:
        return
    if p and q:
        assert (p * q).degree == p.degree + q.degree
    else:
        assert (p * q).degree == -math.inf


@settings(max_examples=200, deadline=None)
@given(free_polys(max_deg=4, max_terms=6))
def test_render_parse_round_trip(p):
    assert parse_poly(str(p), n=p.n) == p


@settings(max_examples=50, deadline=None)
@given(free_polys(n=3))
def test_components_sum_back(p):
    total = FreePoly.zero(3)
    top = 0 if not p else p.degree
    for m in range(top + 1):
        total = total + p.component(m)
    assert total == p
