from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mzvrel.bigfixed import BigFixed
from mzvrel.errors import NotAdmissible
from mzvrel.formal import FormalSum, harmonic
from mzvrel.oracles import even_zeta_rational, machin_pi, truncated_mzv, truncated_mzv_star
from mzvrel.real import error_bound, eval_sum, mzv, mzv_star, verify_real
from mzvrel.relations import grsf_sides, ohno_sides

TIGHT = Fraction(1, 10**40)


def close(a: BigFixed, b: BigFixed, tol=TIGHT):
    return abs(a - b).to_fraction() < tol


def test_machin_pi_against_mpmath():
    mpmath.mp.dps = 60
    assert abs(machin_pi(192).to_fraction() - Fraction(str(mpmath.pi))) < Fraction(1, 10**55)


def test_zeta2_is_pi_squared_over_six():
    pi = machin_pi(192)
    assert close(mzv((2,)), pi * pi / 6, Fraction(1, 10**55))
    assert mzv((2,)).to_decimal(18) == "1.644934066848226436"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_even_zeta(n):
    pi = machin_pi(192)
    r = even_zeta_rational(n)
    expect = BigFixed.from_fraction(r, 192)
    power = BigFixed.from_int(1, 192)
    for _ in range(2 * n):
        power = power * pi
    assert close(mzv((2 * n,)), power * expect, Fraction(1, 10**50))


def test_against_mpmath_zeta():
    mpmath.mp.dps = 50
    for s in [2, 3, 5, 7, 10]:
        assert abs(mzv((s,)).to_fraction() - Fraction(str(mpmath.zeta(s)))) < Fraction(1, 10**45)
    # zeta(2,1) = zeta(3), zeta(3,1) = pi^4/360
    assert abs(mzv((2, 1)).to_fraction() - Fraction(str(mpmath.zeta(3)))) < Fraction(1, 10**45)
    assert abs(mzv((3, 1)).to_fraction() - Fraction(str(mpmath.pi**4 / 360))) < Fraction(1, 10**45)


def test_classical_identities():
    assert close(mzv((2, 1)), mzv((3,)))
    assert close(mzv((4,)), mzv((3, 1)) + mzv((2, 2)))


def test_star_values():
    assert mzv_star((2,)) == mzv((2,))
    assert close(mzv_star((2, 1)), mzv((2, 1)) + mzv((3,)))
    # closed form 3 zeta(4) = pi^4 / 30 with an independent pi
    mpmath.mp.dps = 50
    assert abs(mzv_star((2, 1, 1)).to_fraction() - Fraction(str(mpmath.pi**4 / 30))) < Fraction(1, 10**45)
    # naive truncation converges like log(N)^2 / N, so only a loose check is possible
    assert abs(float(mzv_star((2, 1, 1))) - truncated_mzv_star((2, 1, 1), 200_000)) < 1e-3


@pytest.mark.parametrize("k", [(2,), (3,), (2, 1), (3, 1, 2), (2, 2, 2)])
def test_truncation_oracle(k):
    approx = truncated_mzv(k, 200_000)
    assert 0 < float(mzv(k)) - approx < 1e-3


@pytest.mark.parametrize("bits", [64, 128, 256, 400])
def test_precision_scaling(bits):
    ref = mzv((3, 1, 2), 512).rescale(bits)
    assert abs(mzv((3, 1, 2), bits) - ref) <= error_bound((3, 1, 2), bits) + BigFixed.ulp(bits)


@settings(max_examples=25)
@given(
    st.lists(st.integers(1, 3), min_size=1, max_size=2).map(lambda k: (k[0] + 1,) + tuple(k[1:])),
    st.lists(st.integers(1, 3), min_size=1, max_size=2).map(lambda k: (k[0] + 1,) + tuple(k[1:])),
)
def test_stuffle_homomorphism(a, b):
    bits = 160
    lhs = eval_sum(harmonic(a, b), bits)
    rhs = mzv(a, bits) * mzv(b, bits)
    assert abs(lhs - rhs).to_fraction() < Fraction(1, 10**35)


def test_eval_sum_examples():
    assert eval_sum(FormalSum()) == BigFixed(0, 192)
    assert eval_sum(FormalSum({(3,): 2})) == mzv((3,)) * 2
    rel = grsf_sides((1, 2), 1)
    assert abs(eval_sum(rel.lhs) - eval_sum(rel.rhs)).to_fraction() < Fraction(1, 10**25)


def test_not_admissible():
    with pytest.raises(NotAdmissible):
        mzv((1, 2))
    with pytest.raises(NotAdmissible) as exc:
        eval_sum(FormalSum({(2,): 1, (1, 3): 1}))
    assert exc.value.index == (1, 3)


def test_verify_real_pass_and_fail():
    for rel in [grsf_sides((1, 2), 1), ohno_sides((2,), 1)]:
        rep = verify_real(rel, tol="1e-25")
        assert rep.passed and rep.verdict == "pass"
        bad = verify_real(rel.corrupted(), tol="1e-25")
        assert not bad.passed
        assert abs(bad.diff - mzv(rel.lhs.indices()[0])) <= bad.error_bound
    rep = verify_real(ohno_sides((2,), 1), tol="1e-40")
    assert rep.passed
    assert set(rep.to_dict()) >= {"lhs", "rhs", "abs_diff", "tolerance", "verdict"}
