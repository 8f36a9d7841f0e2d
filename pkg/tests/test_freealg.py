"""Free algebra machinery: commutators, named families, linearization,
spanning sets, group action, quotient dimensions, parser."""

import math
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from lienil.exactla import Eliminator, in_span, rank
from lienil.freealg import (NcPoly, commutator, ideal_multilinear_span,
                            long_commutator, make_g, module_span_dim,
                            multilinearize, parse_poly, perm_sign, product_span,
                            proper_span, quotient_dims, sn_act, standard_poly,
                            to_vector, word_index)

x = NcPoly.var


def derangement_oracle(n):
    """Independent oracle: invert sum binom(n,l) D_l = n!."""
    d = []
    for m in range(n + 1):
        d.append(math.factorial(m) - sum(math.comb(m, l) * d[l] for l in range(m)))
    return d


def test_long_commutator_pair():
    assert long_commutator([1, 2]) == x(1) * x(2) - x(2) * x(1)


def test_long_commutator_triple():
    want = parse_poly("x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1")
    assert long_commutator([1, 2, 3]) == want


def test_long_commutator_equal_args():
    assert not long_commutator([1, 1])


def test_long_commutator_term_count():
    for k in range(2, 7):
        f = long_commutator(list(range(1, k + 1)))
        assert len(f.terms) == 2 ** (k - 1)


def test_standard_poly_small():
    assert standard_poly(1) == x(1)
    assert standard_poly(2) == x(1) * x(2) - x(2) * x(1)


def test_standard_poly_commutator_identity():
    # s_{2j-2} equals 2^{1-j} times the alternating commutator-pair sum
    for j in (2, 3):
        m = 2 * j - 2
        alt = NcPoly.zero()
        for s in permutations(range(1, m + 1)):
            term = NcPoly.one()
            for t in range(m // 2):
                term = term * long_commutator([s[2 * t], s[2 * t + 1]])
            alt = alt + term.scale(perm_sign(s))
        assert standard_poly(m) == alt.scale(Fraction(1, 2 ** (j - 1)))


def test_make_g_examples():
    # degenerate even instance: bracket times the empty double-product
    assert make_g(2, 4) == long_commutator([1, 2]) ** 2
    assert make_g(2, 6) == long_commutator([1, 2]) * standard_poly(4)
    want = NcPoly.zero()
    for s in permutations((1, 2, 3)):
        want = want + (long_commutator([s[0], s[1]])
                       * long_commutator([s[2], 1, 1])).scale(perm_sign(s))
    assert make_g(1, 5) == want


def test_make_g_degrees():
    for i, deg in [(1, 5), (2, 5), (3, 5), (1, 6), (2, 6), (3, 6), (1, 4), (2, 4)]:
        assert make_g(i, deg).total_degree() == deg


def test_make_g_rejects_small():
    with pytest.raises(ValueError):
        make_g(1, 3)
    with pytest.raises(ValueError):
        make_g(3, 4)


def test_multilinearize_triple():
    got = multilinearize(long_commutator([2, 1, 1]))
    want = long_commutator([2, 1, 3]) + long_commutator([2, 3, 1])
    assert got == want


def test_multilinearize_comm_square():
    got = multilinearize(long_commutator([1, 2]) ** 2)
    c = long_commutator
    want = (c([1, 2]) * c([3, 4]) + c([3, 2]) * c([1, 4])
            + c([1, 4]) * c([3, 2]) + c([3, 4]) * c([1, 2]))
    assert got == want


def test_multilinearize_fixes_multilinear():
    f = long_commutator([1, 2, 3])
    assert multilinearize(f) == f


def test_multilinearize_rejects_mixed():
    with pytest.raises(ValueError):
        multilinearize(x(1) + x(1) * x(2))


def test_word_index_is_lex_rank():
    words = sorted(permutations(range(1, 5)))
    for i, w in enumerate(words):
        assert word_index(w) == i


def test_ideal_span_rank_degree3():
    rows = [to_vector(f, 3) for f in ideal_multilinear_span(3, 3)]
    assert rank(rows, 6) == 2  # 6 - c_3 with c_3 = 2^{3-1}


def test_ideal_span_contains_all_orders():
    span = ideal_multilinear_span(3, 3)
    for p in permutations((1, 2, 3)):
        assert long_commutator(list(p)) in span


def test_ideal_span_empty_when_blocks_dont_fit():
    assert ideal_multilinear_span(4, 3) == []


def test_product_span_inside_bigger_ideal():
    # I_2 I_2 within I_2 at degree 4
    elim = Eliminator(24)
    for f in ideal_multilinear_span(2, 4):
        elim.add(to_vector(f, 4))
    for f in product_span(2, 2, 4):
        assert elim.contains(to_vector(f, 4))


def test_proper_span_ranks_match_derangements():
    d = derangement_oracle(5)
    for n in range(0, 6):
        rows = [to_vector(f, n) for f in proper_span(n)]
        assert rank(rows, math.factorial(n)) == d[n]


def test_proper_span_small():
    assert [str(f) for f in proper_span(2)] == ["x1x2 - x2x1", "-x1x2 + x2x1"]


def test_sn_act_identity():
    f = long_commutator([1, 2, 3])
    assert sn_act((1, 2, 3), f) == f


def test_sn_act_transposition():
    f = long_commutator([1, 2])
    assert sn_act((2, 1), f) == f.scale(-1)


def test_sn_act_sign_on_standard():
    n = 4
    s = standard_poly(n)
    for sigma in permutations(range(1, n + 1)):
        assert sn_act(sigma, s) == s.scale(perm_sign(sigma))


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(1, 5))), st.permutations(list(range(1, 5))))
def test_sn_act_is_group_action(sigma, tau):
    f = long_commutator([1, 2]) * long_commutator([3, 4]) + standard_poly(4)
    composed = tuple(sigma[tau[i] - 1] for i in range(4))
    assert sn_act(sigma, sn_act(tau, f)) == sn_act(composed, f)


def test_quotient_dims_grassmann_codim():
    c, gamma = quotient_dims(3, 2)
    assert c == 4  # 2^{n-1} for the triple-commutator ideal
    assert gamma == 1


def test_quotient_dims_full_below_index():
    for p in (3, 4):
        for n in range(0, p + 1):
            c, _ = quotient_dims(n, p)
            assert c == math.factorial(n)


def test_quotient_dims_gamma_bounded():
    _, gamma = quotient_dims(4, 3)
    assert 0 <= gamma <= 9


def test_gamma_monotone_in_index():
    for n in range(2, 6):
        prev = None
        for p in (2, 3, 4, 5):
            _, g = quotient_dims(n, p)
            if prev is not None:
                assert g >= prev
            prev = g


def test_module_span_dim_sign_module():
    assert module_span_dim(standard_poly(3), 4) == 1
    assert module_span_dim(standard_poly(4), 5) == 1


def test_module_span_dim_two_row():
    f = multilinearize(long_commutator([2, 1, 1]))
    assert module_span_dim(f, 3) == 2


def test_degree_guard():
    with pytest.raises(ValueError):
        proper_span(8)
    with pytest.raises(ValueError):
        ideal_multilinear_span(2, 8)


def test_parser_round_trips():
    cases = {
        "[x1,x2]": long_commutator([1, 2]),
        "[x1,x2,x3]": long_commutator([1, 2, 3]),
        "[x1,x2]^2": long_commutator([1, 2]) ** 2,
        "x1*x2 - x2x1": commutator(x(1), x(2)),
        "2x1": x(1).scale(2),
        "1/2[x1,x2]": long_commutator([1, 2]).scale(Fraction(1, 2)),
        "(x1+x2)^2": (x(1) + x(2)) ** 2,
        "-x1x2": (x(1) * x(2)).scale(-1),
        "3/4": NcPoly({(): Fraction(3, 4)}),
        "[x1, x2, [x3, x4]]": commutator(long_commutator([1, 2]),
                                         long_commutator([3, 4])),
    }
    for text, want in cases.items():
        assert parse_poly(text) == want, text


def test_parser_rejects_garbage():
    for bad in ("x", "[x1]", "(x1", "x1 +", "x1 & x2"):
        with pytest.raises(ValueError):
            parse_poly(bad)
