"""Grassmann bit-set arithmetic: examples and algebra laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lienil.grassmann import (GrassmannElem, gcommutator, generator, gmul,
                              mono_degree, mono_mul, mono_str, monomial, unit)


def test_product_no_inversion():
    e1, e2 = generator(1, 4), generator(2, 4)
    assert gmul(e1, e2) == monomial([1, 2], 4)


def test_product_one_inversion():
    e1, e2 = generator(1, 4), generator(2, 4)
    assert gmul(e2, e1) == monomial([1, 2], 4).scale(-1)


def test_square_vanishes():
    e1 = generator(1, 4)
    assert gmul(e1, e1).is_zero()


def test_commutator_of_generators():
    e1, e2 = generator(1, 4), generator(2, 4)
    assert gcommutator(e1, e2) == monomial([1, 2], 4).scale(2)


def test_even_monomial_is_central():
    e12 = monomial([1, 2], 4)
    e3 = generator(3, 4)
    assert gcommutator(e12, e3).is_zero()


def test_commutator_bilinear():
    a = generator(1, 4) + monomial([2, 3], 4)
    assert gcommutator(a, generator(4, 4)) == monomial([1, 4], 4).scale(2)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        gmul(generator(1, 2), generator(1, 3))


def test_generator_outside_dim():
    with pytest.raises(ValueError):
        generator(3, 2)


def test_rendering():
    assert mono_str(0) == "1"
    assert str(monomial([1, 3], 4)) == "e1e3"
    assert str(unit(4) - generator(2, 4)) == "1 - e2"


def test_mono_mul_sign_rule():
    # e_{13} * e_2: inversions are (3,2) -> one swap
    m, s = mono_mul(0b101, 0b010)
    assert (m, s) == (0b111, -1)
    assert mono_mul(0b1, 0b1) == (0, 0)


def elements(dim=4, max_terms=3):
    masks = st.integers(0, (1 << dim) - 1)
    coefs = st.integers(-3, 3)
    return st.dictionaries(masks, coefs, max_size=max_terms).map(
        lambda t: GrassmannElem(dim, {m: Fraction(c) for m, c in t.items()}))


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), elements())
def test_associativity(a, b, c):
    assert gmul(gmul(a, b), c) == gmul(a, gmul(b, c))


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), elements())
def test_triple_commutators_vanish(a, b, c):
    assert gcommutator(a, gcommutator(b, c)).is_zero()
    assert gcommutator(gcommutator(a, b), c).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 15), elements())
def test_even_elements_central(mask, b):
    if mono_degree(mask) % 2 == 0:
        a = GrassmannElem(4, {mask: Fraction(1)})
        assert gcommutator(a, b).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15))
def test_odd_monomials_anticommute(m1, m2):
    if mono_degree(m1) % 2 == 1 and mono_degree(m2) % 2 == 1:
        a = GrassmannElem(4, {m1: Fraction(1)})
        b = GrassmannElem(4, {m2: Fraction(1)})
        assert gmul(a, b) + gmul(b, a) == GrassmannElem(4, {})
        assert gmul(a, a).is_zero()
