"""Bounded verification sweeps, one per acceptance criterion.

Each ``check_*`` function runs its sweep and returns a :class:`CheckResult`.
``run_suite`` is what the ``suite`` CLI command and the acceptance tests call.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterator, List

from .bigfixed import BigFixed
from .finite import PrimeEvaluator, primes_between, verify_finite, verify_finite_many, zeta_p, zeta_p_star
from .formal import FormalSum, harmonic
from .indices import Index, hoffman_dual, indices_of_weight, is_admissible
from .oracles import (
    brute_zeta_p,
    brute_zeta_p_star,
    even_zeta_rational,
    machin_pi,
    string_dual,
    truncated_mzv,
)
from .posets import expand_poset, integral_series_sides, mu
from .real import eval_sum, mzv, verify_real
from .relations import (
    Relation,
    binomial_shuffle_check,
    bootstrap_sides,
    grsf_finite_sides,
    grsf_ones_sides,
    grsf_sides,
    lemma_first_check,
    lemma_second_check,
    ohno_sides,
    poset_expansion_formula,
    sum_formula_sides,
    verify_symbolic,
)

FRAC_BITS = 192
TOL = "1e-25"
TIGHT_TOL = "1e-40"
PRIME_MAX = 1000


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    cases: int = 0
    seconds: float = 0.0
    failures: List[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}: {self.cases} cases, {self.seconds:.2f}s"
        if self.detail:
            text += f" ({self.detail})"
        if self.failures:
            text += "; first failures: " + "; ".join(self.failures[:3])
        return text


class _Collector:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures: List[str] = []
        self.notes: List[str] = []
        self.start = time.perf_counter()

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)

    def result(self, limit: float | None = None) -> CheckResult:
        seconds = time.perf_counter() - self.start
        if limit is not None and seconds > limit:
            self.failures.append(f"took {seconds:.1f}s, limit {limit}s")
        return CheckResult(self.name, not self.failures, "; ".join(self.notes), self.cases, seconds, self.failures)


def family(max_depth: int = 3, max_part: int = 3, min_depth: int = 1) -> Iterator[Index]:
    """All indices with depth in [min_depth, max_depth] and parts <= max_part."""
    for r in range(min_depth, max_depth + 1):
        yield from product(range(1, max_part + 1), repeat=r)


def indices_up_to_weight(w: int, max_depth: int | None = None) -> Iterator[Index]:
    for n in range(1, w + 1):
        for k in indices_of_weight(n):
            if max_depth is None or len(k) <= max_depth:
                yield k


def check_worked_example() -> CheckResult:
    c = _Collector("1 worked example reproduction (symbolic)")
    rel = grsf_sides((1, 2), 1)
    c.check(rel.lhs == FormalSum({(2, 1, 2): 2, (2, 2, 1): 1}), f"lhs = {rel.lhs}")
    c.check(rel.rhs == FormalSum({(2, 3): 1, (3, 2): 1, (2, 1, 2): 1}), f"rhs = {rel.rhs}")
    c.notes.append(f"{rel.lhs} = {rel.rhs}")
    return c.result(limit=1.0)


def check_grsf_real() -> CheckResult:
    c = _Collector("2 generalized restricted sum formula, real")
    for k in family():
        w = sum(k)
        for t in range(3):
            if w + t + 1 <= 10:
                rep = verify_real(grsf_sides(k, t), FRAC_BITS, TOL)
                c.check(rep.passed, rep.describe())
            for s in range(3):
                if w + s + t + 1 <= 10:
                    rep = verify_real(grsf_ones_sides(k, s, t), FRAC_BITS, TOL)
                    c.check(rep.passed, rep.describe())
    c.notes.append(f"frac_bits={FRAC_BITS}, tol={TOL}")
    return c.result(limit=300.0)


def check_grsf_finite() -> CheckResult:
    c = _Collector("3 generalized restricted sum formula, finite")
    rels = [grsf_finite_sides(k, t) for k in family() for t in range(3)]
    for rep in verify_finite_many(rels, primes_between(2, PRIME_MAX)):
        c.check(rep.passed, rep.describe())
    c.notes.append(f"primes (weight, {PRIME_MAX}]")
    return c.result(limit=120.0)


def check_ohno() -> CheckResult:
    c = _Collector("4 Ohno-type relations, real and finite")
    real = [ohno_sides(k, l) for k in family() for l in range(4)]
    for rel in real:
        rep = verify_real(rel, FRAC_BITS, TOL)
        c.check(rep.passed, rep.describe())
    finite = [ohno_sides(k, l, "finite") for k in family() for l in range(4)]
    for rep in verify_finite_many(finite, primes_between(2, PRIME_MAX)):
        c.check(rep.passed, rep.describe())
    closed = ohno_sides((2,), 1)
    c.check(closed.lhs == FormalSum({(4,): 1}) and closed.rhs == FormalSum({(2, 2): 1, (3, 1): 1}), str(closed))
    rep = verify_real(closed, FRAC_BITS, TIGHT_TOL)
    c.check(rep.passed, rep.describe())
    c.notes.append(f"zeta(4) - zeta(2,2) - zeta(3,1) = {rep.diff.to_sci()}")
    return c.result()


def check_lemma(samples: int = 1000, seed: int = 20261014) -> CheckResult:
    c = _Collector("5 lemma formal identities")
    for k in family(max_depth=4, min_depth=2):
        for t in range(4):
            c.check(lemma_first_check(k, t), f"first identity k={k} t={t}")
            c.check(lemma_second_check(k, t), f"second identity k={k} t={t}")
    rng = random.Random(seed)
    for _ in range(samples):
        r = rng.randint(2, 5)
        k = tuple(rng.randint(1, 4) for _ in range(r))
        u, v = rng.randint(0, 3), rng.randint(0, 3)
        c.check(binomial_shuffle_check(k, u, v), f"(k_u)_v binomial k={k} u={u} v={v}")
    c.notes.append(f"{samples} random binomial cases, seed {seed}")
    return c.result()


def check_equivalence() -> CheckResult:
    c = _Collector("6 equivalence bootstrap recursion")
    for k in indices_up_to_weight(4):
        for s in range(3):
            for t in range(3):
                left, right = bootstrap_sides(k, s, t)
                c.check(left == right, f"k={k} s={s} t={t}: residual {left - right}")
    return c.result()


def check_integral_series() -> CheckResult:
    c = _Collector("7 integral-series identity and poset expansion")
    admissible_pairs = mod_p_pairs = 0
    mod_primes = primes_between(51, 200)
    for k in indices_up_to_weight(4, max_depth=3):
        for l in indices_up_to_weight(4, max_depth=3):
            left, right = integral_series_sides(k, l)
            rel = Relation("integral-series", {"k": list(k), "l": list(l)}, left, right)
            if all(is_admissible(m) for m in left.indices() + right.indices()):
                admissible_pairs += 1
                rep = verify_real(rel, FRAC_BITS, TOL)
                c.check(rep.passed, rep.describe())
            else:
                mod_p_pairs += 1
                rep = verify_finite(rel, mod_primes)
                c.check(rep.passed, rep.describe())
    for r in (1, 2):
        for k in indices_up_to_weight(4):
            if len(k) != r:
                continue
            for s in range(3):
                for t in range(3):
                    got = expand_poset(mu(k + (1,) * s, (1,) * (t + 1)))
                    want = poset_expansion_formula(k, s, t)
                    c.check(got == want, f"expansion k={k} s={s} t={t}: residual {got - want}")
    c.notes.append(f"{admissible_pairs} pairs checked numerically, {mod_p_pairs} mod p")
    return c.result()


def check_sum_formula() -> CheckResult:
    c = _Collector("8 sum formula")
    for k in range(3, 9):
        for u in range(1, k):
            rep = verify_real(sum_formula_sides(k, u), FRAC_BITS, TOL)
            c.check(rep.passed, rep.describe())
    return c.result()


def check_oracles() -> CheckResult:
    c = _Collector("9 oracle suites")
    small_primes = primes_between(2, 31)
    for k in indices_up_to_weight(5):
        for p in small_primes:
            ev = zeta_p(k, p)
            c.check(ev == brute_zeta_p(k, p), f"zeta_p{k} p={p}")
            c.check(PrimeEvaluator(p).value(k) == ev, f"vectorized zeta_p{k} p={p}")
            c.check(zeta_p_star(k, p) == brute_zeta_p_star(k, p), f"zeta_p_star{k} p={p}")

    for k in indices_up_to_weight(6, max_depth=3):
        if k[0] >= 2:
            ref = truncated_mzv(k, 200_000)
            got = float(mzv(k, FRAC_BITS))
            c.check(abs(got - ref) <= 1e-3, f"mzv{k}={got} vs truncated {ref}")

    tol = BigFixed.from_string(TOL, FRAC_BITS)
    stuffle_primes = primes_between(2, 97)
    pool = list(indices_up_to_weight(5))
    products = {(k, l): harmonic(k, l) for k, l in product(pool, pool)}
    for p in stuffle_primes:
        ev = PrimeEvaluator(p)
        for (k, l), prod_sum in products.items():
            c.check(ev.value(k) * ev.value(l) % p == ev.eval_sum(prod_sum), f"stuffle mod {p}: {k}*{l}")
    for k, l in product(pool, pool):
        if k[0] >= 2 and l[0] >= 2:
            diff = abs(mzv(k, FRAC_BITS) * mzv(l, FRAC_BITS) - eval_sum(harmonic(k, l), FRAC_BITS))
            c.check(diff <= tol, f"stuffle real {k}*{l}: {diff.to_sci()}")

    for w in range(1, 13):
        for k in indices_of_weight(w):
            d = hoffman_dual(k)
            c.check(hoffman_dual(d) == k and d == string_dual(k), f"dual {k}")

    pi = machin_pi(FRAC_BITS + 16)
    for n in (1, 2, 3):
        q = even_zeta_rational(n)
        power = pi
        for _ in range(2 * n - 1):
            power = power * pi
        ref = (power * q.numerator / q.denominator).rescale(FRAC_BITS)
        diff = abs(mzv((2 * n,), FRAC_BITS) - ref)
        c.check(diff <= tol, f"zeta({2 * n}) vs pi-power: {diff.to_sci()}")
    return c.result()


def check_negative_controls() -> CheckResult:
    c = _Collector("10 negative controls")
    real_cases = [grsf_sides((1, 2), 1), ohno_sides((2,), 1), sum_formula_sides(5, 2), grsf_ones_sides((2,), 1, 1)]
    for rel in real_cases:
        bad = rel.corrupted()
        term = rel.lhs.indices()[0]
        rep = verify_real(bad, FRAC_BITS, TOL)
        # the difference must be the value of the injected term
        expected = mzv(term, FRAC_BITS)
        c.check(not rep.passed and abs(rep.diff - expected) <= rep.error_bound, f"real control {rel.name}")
        sym = verify_symbolic(bad)
        c.check(not sym.passed and sym.residual == FormalSum.of(term), f"symbolic control {rel.name}: {sym.residual}")

    primes = primes_between(2, 200)
    finite_cases = [grsf_finite_sides((1, 2), 1), ohno_sides((1, 1), 1, "finite"), grsf_finite_sides((2, 1), 2)]
    for rel in finite_cases:
        bad = rel.corrupted()
        term = rel.lhs.indices()[0]
        rep = verify_finite(bad, primes)
        expected = [p for p in primes if p > rep.weight and zeta_p(term, p) != 0]
        # the diagnostic lists exactly the primes where the injected term is non-zero
        c.check(rep.passed == (not expected) and rep.failing_primes == expected, f"finite control {rel.name} +{term}")
        # zeta_p(1,2) is B_{p-3} up to a unit, non-zero for every p < 16843
        rep = verify_finite(rel.corrupted(term=(1, 2)), primes)
        c.check(not rep.passed and rep.failing_primes == rep.checked_primes, f"finite control {rel.name} +(1,2)")
        bad = rel.corrupted()
        term = rel.lhs.indices()[0]
        sym = verify_symbolic(bad)
        c.check(not sym.passed and sym.residual == FormalSum.of(term), f"symbolic control {rel.name}")
    return c.result()


SUITES: Dict[str, Callable[[], CheckResult]] = {
    "example": check_worked_example,
    "grsf-real": check_grsf_real,
    "grsf-finite": check_grsf_finite,
    "ohno": check_ohno,
    "lemma": check_lemma,
    "equivalence": check_equivalence,
    "integral-series": check_integral_series,
    "sum-formula": check_sum_formula,
    "oracles": check_oracles,
    "negative": check_negative_controls,
}


def _run_one(name: str) -> CheckResult:
    return SUITES[name]()


def run_suite(name: str, jobs: int = 1) -> List[CheckResult]:
    """Run one suite or ``"all"``; with jobs > 1 suites run in worker processes.

    Results always come back in SUITES order.
    """
    names = list(SUITES) if name == "all" else [name]
    if jobs <= 1 or len(names) == 1:
        return [_run_one(n) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, names))
