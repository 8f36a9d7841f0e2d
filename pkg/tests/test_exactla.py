"""Exact sparse linear algebra: examples and invariants."""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from lienil.exactla import Eliminator, in_span, rank, sparse_vec
from lienil.freealg import long_commutator, to_vector


def test_rank_empty():
    assert rank([]) == 0


def test_rank_proportional_rows():
    assert rank([{0: 1}, {0: 2}]) == 1


def test_rank_two_independent():
    assert rank([{0: 1, 1: 2}, {1: 1}]) == 2


def test_rank_multilinear_lie_degree3():
    # all 6 orders of a triple commutator span the multilinear Lie
    # component, whose dimension is (3-1)! = 2
    rows = [to_vector(long_commutator(list(p)), 3) for p in permutations((1, 2, 3))]
    assert rank(rows, 6) == 2


def test_in_span_zero_vector():
    assert in_span({}, [{1: 1}])
    assert in_span({}, [])


def test_in_span_disjoint_support():
    assert not in_span({0: 1}, [{1: 1}])


def test_in_span_combination():
    rows = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    assert in_span({0: 2, 1: 1, 2: -1}, rows)
    assert not in_span({0: 1}, rows)


def test_fractional_entries():
    assert rank([{0: Fraction(1, 3), 1: Fraction(1, 6)}, {0: 2, 1: 1}]) == 1


def test_sparse_vec_drops_zeros():
    assert sparse_vec({0: 0, 1: Fraction(2, 4)}) == {1: Fraction(1, 2)}


def test_eliminator_incremental():
    elim = Eliminator(4)
    assert elim.add({0: 1, 1: 1})
    assert not elim.add({0: 2, 1: 2})
    assert elim.add({2: Fraction(1, 2)})
    assert elim.rank == 2
    assert elim.contains({0: 3, 1: 3, 2: 7})


def test_residual_exact_tracks_scale():
    elim = Eliminator(3)
    elim.add({0: 2, 1: 4})
    arr, denom = elim.residual_exact({0: 1, 1: 2, 2: 1})
    # true residual is (0, 0, 1)
    assert [Fraction(int(a), denom) for a in arr] == [0, 0, 1]
    arr, denom = elim.residual_exact({0: 1, 1: 3})
    assert [Fraction(int(a), denom) for a in arr] == [0, 1, 0]


def test_object_mode_fallback_is_exact():
    elim = Eliminator(2)
    big = 1 << 70
    assert elim.add({0: big, 1: 1})
    assert elim.contains({0: 2 * big, 1: 2})
    assert not elim.contains({0: 1})


small_rows = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=4),
    min_size=0, max_size=5)


@settings(max_examples=50, deadline=None)
@given(small_rows, st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation_and_scaling(rows, rng):
    base = rank(rows, 6)
    shuffled = rows[:]
    rng.shuffle(shuffled)
    scaled = [{c: v * rng.choice([1, -2, 3, Fraction(1, 2)]) for c, v in row.items()}
              for row in shuffled]
    assert rank(scaled, 6) == base


@settings(max_examples=50, deadline=None)
@given(small_rows, st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=4))
def test_rank_grows_iff_outside_span(rows, v):
    r0 = rank(rows, 6)
    r1 = rank(rows + [v], 6)
    assert (r1 == r0) == in_span(v, rows, 6)


@settings(max_examples=100, deadline=None)
@given(st.fractions(), st.fractions())
def test_exact_field_arithmetic(a, b):
    assert (a + b) - b == a
