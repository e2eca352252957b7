"""Slow, independent reference computations used to cross-check the fast paths.

Nothing here shares code with the evaluators it checks.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, prod
from typing import Sequence

import numpy as np

from .bigfixed import BigFixed


def brute_zeta_p(k: Sequence[int], p: int) -> int:
    """Direct nested sum over p > n_1 > ... > n_r >= 1."""
    total = 0
    for ns in combinations(range(p - 1, 0, -1), len(k)):
        total += prod(pow(n, -e, p) for n, e in zip(ns, k))
    return total % p


def brute_zeta_p_star(k: Sequence[int], p: int) -> int:
    """Direct nested sum over p > n_1 >= ... >= n_r >= 1."""
    total = 0
    for ns in combinations_with_replacement(range(p - 1, 0, -1), len(k)):
        total += prod(pow(n, -e, p) for n, e in zip(ns, k))
    return total % p


def truncated_mzv(k: Sequence[int], terms: int) -> float:
    """Float sum over terms >= n_1 > ... > n_r >= 1 (a lower bound for zeta(k))."""
    n = np.arange(1, terms + 1, dtype=np.float64)
    acc = np.ones(terms, dtype=np.float64)
    for j, e in enumerate(reversed(k)):
        shifted = np.concatenate(([0.0], acc[:-1])) if j else acc
        acc = np.cumsum(shifted / n**e)
    return float(acc[-1])


def truncated_mzv_star(k: Sequence[int], terms: int) -> float:
    n = np.arange(1, terms + 1, dtype=np.float64)
    acc = np.ones(terms, dtype=np.float64)
    for e in reversed(k):
        acc = np.cumsum(acc / n**e)
    return float(acc[-1])


def _arctan_inv(x: int, bits: int) -> int:
    # arctan(1/x) * 2^bits by the Gregory series, integer arithmetic
    one = 1 << bits
    power = one // x
    total = power
    x2 = x * x
    n = 1
    sign = -1
    while power:
        power //= x2
        n += 2
        total += sign * (power // n)
        sign = -sign
    return total


def machin_pi(frac_bits: int) -> BigFixed:
    """pi from Machin's formula pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    guard = 16
    bits = frac_bits + guard
    m = 16 * _arctan_inv(5, bits) - 4 * _arctan_inv(239, bits)
    return BigFixed(m, bits).rescale(frac_bits)


def even_zeta_rational(n: int) -> Fraction:
    """zeta(2n) / pi^(2n) as an exact rational, from Bernoulli numbers."""
    # Bernoulli numbers by the standard recurrence (B_1 = -1/2 convention)
    bern = [Fraction(1)]
    for m in range(1, 2 * n + 1):
        bern.append(-sum(comb(m + 1, j) * bern[j] for j in range(m)) / (m + 1))
    b = bern[2 * n]
    fact = prod(range(1, 2 * n + 1))
    return abs(b) * 2 ** (2 * n - 1) / fact


def string_dual(k: Sequence[int]) -> tuple[int, ...]:
    """Hoffman dual by literal text manipulation of "1+1,1..."."""
    text = ",".join("+".join("1" * part) for part in k)
    swapped = text.replace("+", "#").replace(",", "+").replace("#", ",")
    return tuple(chunk.count("1") for chunk in swapped.split(","))


def grsf_lhs_count(k: Sequence[int], t: int) -> int:
    """Number of lhs terms (with multiplicity): sum over m of prod C(k_i+m_i-2, m_i-1)."""
    r = len(k)

    def rec(i: int, remaining: int) -> int:
        if i == r:
            return int(remaining == 0)
        total = 0
        for m in range(1, remaining - (r - i - 1) + 1):
            total += comb(k[i] + m - 2, m - 1) * rec(i + 1, remaining - m)
        return total

    return rec(0, r + t)
