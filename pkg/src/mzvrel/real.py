"""High-precision evaluation of multiple zeta(-star) values.

Method: split the iterated integral of the word w = w_1...w_n at 1/2
(Hölder convolution),

    zeta(w) = sum_j I(tau(w_1...w_j)) * I(w_{j+1}...w_n),

where tau reverses a word and swaps a <-> b, and I(.) is the iterated
integral from 0 to 1/2, i.e. the multiple polylogarithm

    Li_{s_1..s_r}(1/2) = sum_{n_1 > ... > n_r >= 1} 2^-n_1 / (n_1^s_1 ... n_r^s_r).

Every suffix of w and every tau-image of a prefix is a suffix of the word of
k or of its dual word, so two series passes give all factors.  Series are
cut at n_1 = frac_bits + SERIES_MARGIN and summed in integer fixed point
with GUARD_BITS extra bits.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

from .bigfixed import BigFixed
from .errors import NotAdmissible, ParseError
from .formal import FormalSum, lift, star_terms
from .indices import Index, as_index, format_index
from .posets import _index, _word, dual_word

DEFAULT_FRAC_BITS = int(os.environ.get("MZV_PREC", "192"))
GUARD_BITS = 32
SERIES_MARGIN = 24
# rigorous per-value error budget, in units of 2^-frac_bits (see module docstring)
ERROR_ULPS = 2


@lru_cache(maxsize=None)
def _suffix_polylogs(k: Index, work_bits: int, terms: int) -> Tuple[int, ...]:
    """Li at 1/2 of every suffix of word(k), as ints scaled by 2^work_bits.

    Entry j is the suffix of length j; entry 0 (empty word) is 1.
    """
    r = len(k)
    one = 1 << work_bits
    w = sum(k)
    # tails[j] = sum_{n >= n_j > ... > n_r} prod n_i^-k_i for the tail k[j:], at current n-1
    tails = [0] * r + [one]
    # offset of each block's suffixes: block j contributes lengths offs[j] + 1 .. offs[j] + k[j]
    offs = [sum(k[j + 1 :]) for j in range(r)]
    acc = [0] * (w + 1)
    acc[0] = one
    for n in range(1, terms + 1):
        for j in range(r - 1, -1, -1):
            x = tails[j + 1]
            if not x:
                continue
            x >>= n
            base = offs[j]
            for c in range(1, k[j] + 1):
                x //= n
                acc[base + c] += x
        for j in range(1, r):
            x = tails[j + 1]
            if x:
                tails[j] += x // n ** k[j]
    return tuple(acc)


def _terms_for(frac_bits: int) -> int:
    return frac_bits + SERIES_MARGIN


@lru_cache(maxsize=65536)
def _mzv_mantissa(k: Index, frac_bits: int) -> int:
    work = frac_bits + GUARD_BITS
    terms = _terms_for(frac_bits)
    w = _word(k)
    n = len(w)
    lower = _suffix_polylogs(k, work, terms)
    upper = _suffix_polylogs(_index(dual_word(w)), work, terms)
    total = sum(upper[j] * lower[n - j] for j in range(n + 1))
    shift = 2 * work - frac_bits
    return (total + (1 << (shift - 1))) >> shift


def mzv(k: Sequence[int], frac_bits: int = DEFAULT_FRAC_BITS) -> BigFixed:
    """zeta(k) for an admissible index, with absolute error below ERROR_ULPS * 2^-frac_bits."""
    k = as_index(k)
    if k and k[0] < 2:
        raise NotAdmissible(f"zeta({format_index(k)}) diverges: first part must be >= 2", k)
    if not k:
        return BigFixed.from_int(1, frac_bits)
    return BigFixed(_mzv_mantissa(k, frac_bits), frac_bits)


def mzv_star(k: Sequence[int], frac_bits: int = DEFAULT_FRAC_BITS) -> BigFixed:
    k = as_index(k)
    if not k:
        return BigFixed.from_int(1, frac_bits)
    if k[0] < 2:
        raise NotAdmissible(f"zeta-star({format_index(k)}) diverges: first part must be >= 2", k)
    total = BigFixed(0, frac_bits)
    for term in star_terms(k):
        total = total + mzv(term, frac_bits)
    return total


def error_bound(s: Union[FormalSum, Sequence[int]], frac_bits: int) -> BigFixed:
    s = lift(s)
    return BigFixed(ERROR_ULPS * sum(abs(c) for _, c in s.items()), frac_bits)


def eval_sum(s: Union[FormalSum, Sequence[int]], frac_bits: int = DEFAULT_FRAC_BITS) -> BigFixed:
    """Linear extension of zeta to a formal sum."""
    s = lift(s)
    for k, _ in s.items():
        if k and k[0] < 2:
            raise NotAdmissible(f"term ({format_index(k)}) is not admissible", k)
    total = BigFixed(0, frac_bits)
    for k, c in s.items():
        total = total + mzv(k, frac_bits) * c
    return total


def parse_tolerance(tol, frac_bits: int) -> BigFixed:
    if tol is None:
        return BigFixed(1 << (frac_bits - frac_bits // 2), frac_bits)
    if isinstance(tol, BigFixed):
        return tol.rescale(frac_bits)
    if isinstance(tol, str):
        try:
            return BigFixed.from_string(tol, frac_bits)
        except ArithmeticError as exc:
            raise ParseError(f"bad tolerance {tol!r}") from exc
    return BigFixed.from_fraction(Fraction(tol), frac_bits)


@dataclass
class EvalReport:
    name: str
    params: dict
    lhs: BigFixed
    rhs: BigFixed
    diff: BigFixed
    tolerance: BigFixed
    error_bound: BigFixed
    passed: bool
    mode: str = field(default="real")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "mode": self.mode,
            "lhs": self.lhs.to_decimal(),
            "rhs": self.rhs.to_decimal(),
            "abs_diff": self.diff.to_sci(),
            "tolerance": self.tolerance.to_sci(),
            "error_bound": self.error_bound.to_sci(),
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def summary(self) -> str:
        return self.diff.to_sci()

    def describe(self) -> str:
        return (
            f"{self.name} {self.params}: lhs={self.lhs.to_decimal(30)} rhs={self.rhs.to_decimal(30)} "
            f"|diff|={self.diff.to_sci()} tol={self.tolerance.to_sci()} -> {self.verdict}"
        )


def verify_real(rel, frac_bits: int = DEFAULT_FRAC_BITS, tol=None) -> EvalReport:
    """Evaluate both sides of a relation and compare within ``tol`` (default 2^-(frac_bits/2))."""
    tolerance = parse_tolerance(tol, frac_bits)
    lhs = eval_sum(rel.lhs, frac_bits)
    rhs = eval_sum(rel.rhs, frac_bits)
    diff = abs(lhs - rhs)
    bound = error_bound(rel.lhs, frac_bits) + error_bound(rel.rhs, frac_bits)
    return EvalReport(rel.name, rel.params, lhs, rhs, diff, tolerance, bound, diff <= tolerance)
