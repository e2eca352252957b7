from itertools import permutations
from math import factorial

import mpmath
import pytest
from hypothesis import given, strategies as st

from mzvrel.errors import EmptyIndex, NotAdmissible, ParseError
from mzvrel.formal import FormalSum, circled_harmonic, star_expand
from mzvrel.posets import (
    TwoPoset,
    antichain,
    count_linear_extensions,
    dual_word,
    expand_poset,
    index_to_word,
    integral_series_sides,
    linear_extensions,
    mu,
    parse_poset,
    word_to_index,
)
from mzvrel.real import eval_sum
from mzvrel.relations import poset_expansion_formula
from mzvrel.indices import ones

ZIGZAG = "5; 0<1 1<2 3<2 3<4; 11010"


def brute_expand(poset: TwoPoset) -> FormalSum:
    # every permutation read largest-first, kept when it respects the order
    acc = {}
    for perm in permutations(range(poset.n)):
        pos = {x: i for i, x in enumerate(perm)}
        if all(pos[j] < pos[i] for i, j in poset.relations):
            w = "".join("a" if poset.labels[x] == 0 else "b" for x in perm)
            k = word_to_index(w)
            acc[k] = acc.get(k, 0) + 1
    return FormalSum(acc)


def zigzag_integral() -> mpmath.mpf:
    # t0<t1<t2 > t3 < t4 with forms b b a b a; integrate out t0, t1 and t4 in closed form
    def h(x):
        lx = mpmath.log(1 - x)
        return -(mpmath.log(x) * lx**2 + 2 * lx * mpmath.polylog(2, 1 - x) - 2 * mpmath.polylog(3, 1 - x)) / 2

    return mpmath.quad(lambda x: -mpmath.log(x) * h(x) / (1 - x), [0, 0.5, 1])


def test_words():
    assert index_to_word((2,)) == "ab"
    assert index_to_word((2, 1)) == "abb"
    assert word_to_index("aabb") == (3, 1)
    with pytest.raises(NotAdmissible):
        word_to_index("ba")
    with pytest.raises(NotAdmissible):
        index_to_word((1, 2))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple))
def test_word_duality(k):
    k = (k[0] + 1,) + k[1:]
    w = index_to_word(k)
    assert dual_word(dual_word(w)) == w
    dual = word_to_index(dual_word(w))
    assert sum(dual) == sum(k)
    assert abs(eval_sum(FormalSum.of(k)) - eval_sum(FormalSum.of(dual))).to_fraction() < 1e-40


def test_chain_word_has_one_extension():
    p = TwoPoset.from_word("ab")
    assert count_linear_extensions(p) == 1
    assert expand_poset(p) == {(2,): 1}


def test_antichain_counts():
    for n in range(1, 7):
        assert count_linear_extensions(antichain([0] * n)) == factorial(n)


def test_linear_extension_enumeration_matches_count():
    p = parse_poset(ZIGZAG)
    exts = list(linear_extensions(p))
    assert len(exts) == len(set(exts)) == count_linear_extensions(p) == 9


def test_mu_small_cases():
    p = mu((1,), (1,))
    assert p.n == 2 and p.labels == (1, 0) and p.less(0, 1)
    p = mu((2,), (1,))
    assert p.labels == (1, 0, 0) and p.less(0, 1) and p.less(1, 2)
    assert mu((1, 2), ones(2)).n == 5
    with pytest.raises(EmptyIndex):
        mu((), (1,))


def test_expand_mu_matches_brute_force():
    for k in [(1,), (2,), (1, 2), (2, 1)]:
        for l in [(1,), (1, 1), (2, 1), (1, 2, 1)]:
            p = mu(k, l)
            assert p.is_admissible()
            assert expand_poset(p) == brute_expand(p)


def test_small_integral_series_examples():
    assert integral_series_sides((2,), (1,)) == (FormalSum({(3,): 1}), FormalSum({(3,): 1}))
    lhs, rhs = integral_series_sides((1,), (1, 1))
    assert rhs == {(2, 1): 1, (3,): 1}
    # both extensions of mu((1),(1,1)) read "abb"; the identity holds for values
    assert lhs == {(2, 1): 2}
    assert abs(eval_sum(lhs) - eval_sum(rhs)).to_fraction() < 1e-40


def test_integral_series_values_agree():
    for k in [(2,), (1, 1), (1, 2)]:
        for l in [(1, 1), (2, 1), (1, 1, 1)]:
            lhs, rhs = integral_series_sides(k, l)
            assert abs(eval_sum(lhs) - eval_sum(rhs)).to_fraction() < 1e-40


def test_zigzag_expansion_and_quadrature():
    p = parse_poset(ZIGZAG)
    assert p.is_admissible()
    s = expand_poset(p)
    assert s == brute_expand(p)
    assert s == {(2, 1, 2): 1, (2, 2, 1): 2, (3, 1, 1): 6}
    mpmath.mp.dps = 20
    assert abs(float(eval_sum(s)) - float(zigzag_integral())) < 1e-6


@pytest.mark.parametrize("k", [(1,), (2,), (1, 2), (2, 1)])
@pytest.mark.parametrize("s", [0, 1, 2])
@pytest.mark.parametrize("t", [0, 1, 2])
def test_binomial_expansion_of_mu(k, s, t):
    assert expand_poset(mu(k + ones(s), ones(t + 1))) == poset_expansion_formula(k, s, t)


def test_non_admissible_poset():
    with pytest.raises(NotAdmissible):
        expand_poset(parse_poset("2; 0<1; 01"))


@pytest.mark.parametrize("text", ["2; 0<1", "x; ; 01", "2; 0<2; 01", "2; 0<1 1<0; 10", "2; ; 02", "2; 0-1; 10"])
def test_poset_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poset(text)


def test_poset_text_roundtrip():
    p = parse_poset(ZIGZAG)
    assert parse_poset(p.to_text()) == p
    q = mu((1, 2), (2, 1))
    assert parse_poset(q.to_text()) == q


def test_mu_star_side_matches_circled_harmonic():
    assert integral_series_sides((2, 1), (1, 2))[1] == circled_harmonic((2, 1), star_expand((1, 2)))
