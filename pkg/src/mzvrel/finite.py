"""Truncated harmonic sums modulo primes (A-finite multiple zeta values at desk scale)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import isqrt
from typing import Dict, Iterable, List, Sequence, Union

import numpy as np

from .errors import NotPrime, ParseError
from .formal import FormalSum, lift, star_terms
from .indices import Index, as_index

DEFAULT_PRIMES = (11, 1000)
# numpy int64 prefix sums stay exact while p^3 < 2^63
_NUMPY_PRIME_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def primes_between(lo: int, hi: int) -> List[int]:
    """Primes p with lo <= p <= hi."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [p for p in range(max(lo, 2), hi + 1) if sieve[p]]


def parse_prime_range(text: str) -> tuple[int, int]:
    """``"lo..hi"`` -> (lo, hi)."""
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError as exc:
        raise ParseError(f"prime range must look like lo..hi, got {text!r}") from exc
    if lo > hi:
        raise ParseError(f"empty prime range {text!r}")
    return lo, hi


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def zeta_p(k: Sequence[int], p: int) -> int:
    """sum_{p > n_1 > ... > n_r >= 1} 1/(n_1^k_1 ... n_r^k_r) mod p.

    One ascending pass over n; slot j holds the partial sum for the tail
    k[j:], and slots are updated outermost first so each uses the inner
    slot's value from before n was added (strict inequalities).
    """
    k = as_index(k)
    _check_prime(p)
    r = len(k)
    slots = [0] * r + [1]
    for n in range(1, p):
        for j in range(r):
            inner = slots[j + 1]
            if inner:
                slots[j] = (slots[j] + inner * pow(n, -k[j], p)) % p
    return slots[0] % p


def zeta_p_star(k: Sequence[int], p: int) -> int:
    k = as_index(k)
    _check_prime(p)
    if not k:
        return 1 % p
    return sum(zeta_p(term, p) for term in star_terms(k)) % p


class PrimeEvaluator:
    """Evaluate many truncated sums for one prime, sharing tail sums between indices.

    Tail arrays hold, for every n < p, the partial sum of the tail index over
    n >= n_1 > ... >= 1; the value of k is the last entry of its array.
    """

    def __init__(self, p: int):
        _check_prime(p)
        self.p = p
        self._vectorized = p < _NUMPY_PRIME_LIMIT
        self._tails: Dict[Index, np.ndarray] = {}
        self._values: Dict[Index, int] = {}
        self._inv_pows: Dict[int, np.ndarray] = {}
        if self._vectorized:
            inv = np.zeros(p, dtype=np.int64)
            inv[1:] = [pow(n, -1, p) for n in range(1, p)]
            self._inv_pows[1] = inv

    def _inv_pow(self, e: int) -> np.ndarray:
        arr = self._inv_pows.get(e)
        if arr is None:
            half = self._inv_pow(e // 2)
            arr = half * half % self.p
            if e % 2:
                arr = arr * self._inv_pows[1] % self.p
            self._inv_pows[e] = arr
        return arr

    def _tail(self, k: Index) -> np.ndarray:
        arr = self._tails.get(k)
        if arr is not None:
            return arr
        p = self.p
        if not k:
            arr = np.ones(p, dtype=np.int64)
        else:
            inner = self._tail(k[1:])
            shifted = np.zeros(p, dtype=np.int64)
            shifted[1:] = inner[:-1]
            arr = np.cumsum(self._inv_pow(k[0]) * shifted % p) % p
        self._tails[k] = arr
        return arr

    def value(self, k: Sequence[int]) -> int:
        k = as_index(k)
        v = self._values.get(k)
        if v is None:
            v = int(self._tail(k)[-1]) if self._vectorized else zeta_p(k, self.p)
            self._values[k] = v
        return v

    def eval_sum(self, s: Union[FormalSum, Sequence[int]]) -> int:
        return sum(c * self.value(k) for k, c in lift(s).items()) % self.p


def eval_sum_mod(s: Union[FormalSum, Sequence[int]], p: int) -> int:
    """Linear extension of zeta_p to a formal sum, reduced mod p."""
    _check_prime(p)
    return sum(c * zeta_p(k, p) for k, c in lift(s).items()) % p


@dataclass
class FiniteReport:
    name: str
    params: dict
    primes: List[int]
    lhs: Dict[int, int]
    rhs: Dict[int, int]
    weight: int
    failing_primes: List[int] = field(default_factory=list)
    excluded_primes: List[int] = field(default_factory=list)
    mode: str = "finite"

    @property
    def checked_primes(self) -> List[int]:
        return [p for p in self.primes if p > self.weight]

    @property
    def passed(self) -> bool:
        return bool(self.checked_primes) and not self.failing_primes

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "mode": self.mode,
            "lhs": {str(p): v for p, v in self.lhs.items()},
            "rhs": {str(p): v for p, v in self.rhs.items()},
            "failing_primes": self.failing_primes,
            "excluded_primes": self.excluded_primes,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def summary(self) -> str:
        return " ".join(map(str, self.failing_primes))

    def describe(self) -> str:
        span = f"{self.primes[0]}..{self.primes[-1]}" if self.primes else "no primes"
        text = f"{self.name} {self.params}: {len(self.checked_primes)} primes checked in {span} -> {self.verdict}"
        if self.failing_primes:
            text += f"; failing primes {self.failing_primes[:20]}"
        if self.excluded_primes:
            text += f"; primes <= weight {self.weight} mismatched (ignored): {self.excluded_primes}"
        return text


def _relation_weight(rel) -> int:
    return max(rel.lhs.max_weight(), rel.rhs.max_weight())


def verify_finite_many(relations: Sequence, primes: Iterable[int]) -> List[FiniteReport]:
    """Check each relation prime by prime, sharing one evaluator per prime across relations.

    A relation passes when both sides agree for every listed prime larger
    than its weight; mismatches at smaller primes are reported separately.
    """
    primes = sorted(set(primes))
    for p in primes:
        _check_prime(p)
    reports = [
        FiniteReport(rel.name, rel.params, primes, {}, {}, _relation_weight(rel)) for rel in relations
    ]
    for p in primes:
        ev = PrimeEvaluator(p)
        for rel, rep in zip(relations, reports):
            a, b = ev.eval_sum(rel.lhs), ev.eval_sum(rel.rhs)
            rep.lhs[p], rep.rhs[p] = a, b
            if a != b:
                (rep.failing_primes if p > rep.weight else rep.excluded_primes).append(p)
    return reports


def verify_finite(rel, primes: Iterable[int]) -> FiniteReport:
    primes = list(primes)
    if not primes:
        raise ValueError("verify_finite needs a non-empty prime list")
    return verify_finite_many([rel], primes)[0]
