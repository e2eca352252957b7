import json
import random

import pytest
from hypothesis import given, strategies as st

from mzvrel.errors import DepthTooSmall, EmptyIndex, InvalidParams
from mzvrel.formal import FormalSum
from mzvrel.indices import hoffman_dual, weight
from mzvrel.oracles import grsf_lhs_count
from mzvrel.real import eval_sum
from mzvrel.relations import (
    FINITE,
    Relation,
    binomial_shuffle_check,
    bootstrap_sides,
    f_sides,
    g_sides,
    grsf_finite_sides,
    grsf_ones_sides,
    grsf_sides,
    k_sub_u,
    lemma_first_check,
    lemma_second_check,
    ohno_sides,
    sum_formula_sides,
    verify_symbolic,
)

index3 = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


def values_equal(rel, tol=1e-40):
    return abs(eval_sum(rel.lhs) - eval_sum(rel.rhs)).to_fraction() < tol


def test_worked_example():
    rel = grsf_sides((1, 2), 1)
    assert rel.lhs == {(2, 1, 2): 2, (2, 2, 1): 1}
    assert rel.rhs == {(2, 3): 1, (3, 2): 1, (2, 1, 2): 1}
    assert values_equal(rel)


@pytest.mark.parametrize("k1", [1, 2, 5])
def test_grsf_depth_one_t0(k1):
    rel = grsf_sides((k1,), 0)
    assert rel.lhs == rel.rhs == {(k1 + 1,): 1}


def test_grsf_small_cases():
    rel = grsf_sides((1, 1), 0)
    assert rel.lhs == rel.rhs == {(2, 1): 1}
    assert grsf_ones_sides((2,), 1, 0).lhs == grsf_ones_sides((2,), 1, 0).rhs == {(3, 1): 1}
    rel = grsf_ones_sides((1,), 1, 1)
    assert rel.lhs == {(2, 1, 1): 1}
    assert values_equal(rel)


@given(index3, st.integers(0, 2))
def test_ones_with_s0_is_grsf(k, t):
    a, b = grsf_ones_sides(k, 0, t), grsf_sides(k, t)
    assert (a.lhs, a.rhs) == (b.lhs, b.rhs)


@given(index3, st.integers(0, 2), st.integers(0, 2))
def test_grsf_weight_homogeneous_and_counted(k, s, t):
    rel = grsf_ones_sides(k, s, t)
    w = weight(k) + s + t + 1
    assert {weight(m) for m in rel.lhs.indices() + rel.rhs.indices()} == {w}
    assert rel.lhs.total_multiplicity() == grsf_lhs_count(k, t)


def test_grsf_finite_examples():
    rel = grsf_finite_sides((1, 2), 1)
    assert rel.flavor == FINITE
    assert rel.lhs == {(1, 1, 2): 2, (1, 2, 1): 1}
    assert rel.rhs == {(1, 3): 1, (2, 2): 1, (1, 1, 2): 1}
    rel = grsf_finite_sides((1,), 1)
    assert (rel.lhs, rel.rhs) == (FormalSum({(1, 1): 1}), FormalSum({(2,): 1}))
    rel = grsf_finite_sides((2,), 0)
    assert rel.lhs == rel.rhs == {(2,): 1}


@pytest.mark.parametrize(
    "k, u, lhs",
    [(3, 2, {(2, 1): 1}), (4, 2, {(3, 1): 1, (2, 2): 1}), (2, 1, {(2,): 1})],
)
def test_sum_formula_examples(k, u, lhs):
    rel = sum_formula_sides(k, u)
    assert rel.lhs == lhs and rel.rhs == {(k,): 1}
    assert values_equal(rel)


def test_sum_formula_bad_params():
    with pytest.raises(InvalidParams):
        sum_formula_sides(3, 3)


def test_ohno_examples():
    rel = ohno_sides((2,), 1)
    assert rel.lhs == {(4,): 1} and rel.rhs == {(2, 2): 1, (3, 1): 1}
    assert values_equal(rel)
    assert values_equal(ohno_sides((1, 1), 1))


@given(index3)
def test_ohno_l0_is_duality(k):
    rel = ohno_sides(k, 0)
    assert values_equal(rel)
    rel = ohno_sides(k, 0, FINITE)
    assert rel.lhs == FormalSum.of(k) and rel.name == "ohno-finite"


def test_k_sub_u_examples():
    assert k_sub_u((2, 3), 2) == {(2, 1, 1, 3): 1}
    assert k_sub_u((2, 1, 3), 1) == {(2, 1, 1, 3): 2}
    assert binomial_shuffle_check((1, 2, 1), 1, 1)
    with pytest.raises(DepthTooSmall):
        k_sub_u((2,), 1)


def test_binomial_property_random():
    rng = random.Random(7)
    for _ in range(100):
        k = tuple(rng.randint(1, 3) for _ in range(rng.randint(2, 4)))
        assert binomial_shuffle_check(k, rng.randint(0, 3), rng.randint(0, 3))


def test_f_g_sides():
    assert g_sides((2,), 1) == (FormalSum({(4,): 1}), FormalSum({(2, 2): 1, (3, 1): 1}))
    rel = grsf_sides((1, 2), 1)
    assert f_sides((1, 2), 1) == (rel.lhs, rel.rhs)
    a = f_sides(FormalSum({(1, 2): 2}), 1)
    b = f_sides((1, 2), 1)
    assert a == (2 * b[0], 2 * b[1])


@pytest.mark.parametrize("k, t", [((1, 2), 0), ((1, 2), 1), ((2, 1, 2), 2), ((3, 1), 3)])
def test_lemma(k, t):
    assert lemma_first_check(k, t)
    assert lemma_second_check(k, t)


@pytest.mark.parametrize("k", [(1,), (2, 1), (1, 2, 3)])
@pytest.mark.parametrize("s, t", [(0, 0), (1, 2), (2, 1)])
def test_bootstrap(k, s, t):
    left, right = bootstrap_sides(k, s, t)
    assert left == right


def test_symbolic_pass_and_fail():
    for rel in [grsf_sides((1, 2), 1), grsf_ones_sides((2, 1), 1, 2), ohno_sides((1, 2), 2), sum_formula_sides(6, 3),
                grsf_finite_sides((1, 1), 2), ohno_sides((2, 1), 1, FINITE)]:
        rep = verify_symbolic(rel)
        assert rep.passed, rel.name
        bad = verify_symbolic(rel.corrupted())
        assert not bad.passed and bad.residual


def test_relation_json_roundtrip():
    rel = grsf_finite_sides((1, 2), 1)
    data = json.loads(rel.to_json())
    assert list(data) == ["name", "params", "lhs", "rhs"]
    back = Relation.from_dict(data)
    assert (back.lhs, back.rhs, back.flavor) == (rel.lhs, rel.rhs, rel.flavor)


def test_empty_index_errors():
    with pytest.raises(EmptyIndex):
        grsf_sides((), 1)


def test_ohno_weight():
    k = (1, 2)
    assert weight(hoffman_dual(k)) == weight(k)
    rel = ohno_sides(k, 2)
    assert {weight(m) for m in rel.rhs.indices()} == {weight(k) + 3}
