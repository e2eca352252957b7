"""Generators for both sides of each identity, as formal sums of indices.

Real-flavour generators put every term through the zeta-plus shift, so all
emitted indices are admissible.  Finite-flavour generators emit bare indices.

Besides the generators, this module holds the index-level identities used to
reduce the generalized restricted sum formula to Ohno-type relations:

* ``k_sub_u`` and the transforms f_L, f_R, g_L, g_R;
* the two formal identities f_R(k,t) = sum g_L(k_{t-l}, l) and
  f_L(k,t) = sum g_R(k_u, t-u);
* the recursion in s for the version with trailing ones.

:func:`certificate` turns these into an explicit combination of Ohno-type
differences equal to lhs - rhs of a relation, which is what symbolic
verification checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, List, Sequence, Union

from .errors import DepthTooSmall, EmptyIndex, InvalidParams
from .formal import FormalSum, linear_sum, naive_shuffle
from .indices import Index, add, as_index, compositions, hoffman_dual, ones, zeta_plus_index

REAL = "real"
FINITE = "finite"


@dataclass
class Relation:
    name: str
    params: dict
    lhs: FormalSum
    rhs: FormalSum
    flavor: str = REAL

    def difference(self) -> FormalSum:
        return self.lhs - self.rhs

    def weight(self) -> int:
        return max(self.lhs.max_weight(), self.rhs.max_weight())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Relation":
        flavor = FINITE if data["name"] in ("grsf-finite", "ohno-finite") else REAL
        return cls(
            data["name"], data["params"], FormalSum.from_dict(data["lhs"]), FormalSum.from_dict(data["rhs"]), flavor
        )

    def corrupted(self, delta: int = 1, term: Sequence[int] | None = None) -> "Relation":
        """Copy with ``delta`` added to the lhs coefficient of ``term`` (negative control).

        ``term`` defaults to the first lhs term.  Mod p that term may vanish
        identically (every weight-4 value does), so finite controls should
        pass a term with a known non-zero residue such as (1,2).
        """
        if term is None:
            term = self.lhs.indices()[0] if self.lhs else self.rhs.indices()[0]
        k = as_index(term)
        return Relation(self.name, dict(self.params), self.lhs + FormalSum.of(k, delta), self.rhs, self.flavor)


def _nonempty(k: Sequence[int], what: str) -> Index:
    k = as_index(k)
    if not k:
        raise EmptyIndex(f"{what} needs a non-empty index")
    return k


def _sum_terms(terms, shift: bool) -> FormalSum:
    acc: Dict[Index, int] = {}
    for k in terms:
        if shift:
            k = zeta_plus_index(k)
        acc[k] = acc.get(k, 0) + 1
    return FormalSum._raw(acc)


def _grsf_lhs_terms(k: Index, s: int, t: int):
    # sum over m_1+...+m_r = r+t (m_i >= 1) of all a_{m_i} with |a_{m_i}| = k_i + m_i - 1
    r = len(k)
    tail = ones(s)
    for m in compositions(r + t, r, 1):
        blocks = [list(compositions(ki + mi - 1, mi, 1)) for ki, mi in zip(k, m)]
        for choice in product(*blocks):
            yield sum(choice, ()) + tail


def _spread(k: Index, gaps: Sequence[int], s: int) -> Index:
    # (k_1, {1}^{m_1}, ..., k_{r-1}, {1}^{m_{r-1}}, k_r, {1}^s)
    out: List[int] = []
    for i, part in enumerate(k):
        out.append(part)
        if i < len(gaps):
            out.extend(ones(gaps[i]))
    return tuple(out) + ones(s)


def _grsf_rhs_terms(k: Index, s: int, t: int):
    r = len(k)
    if r == 1:
        base = k + ones(s)
        for e in compositions(t, len(base), 0):
            yield add(base, e)
        return
    for l in range(t + 1):
        for gaps in compositions(t - l, r - 1, 0):
            base = _spread(k, gaps, s)
            for e in compositions(l, len(base), 0):
                yield add(base, e)


def _check_nonneg(**values: int) -> None:
    for name, v in values.items():
        if not isinstance(v, int) or v < 0:
            raise InvalidParams(f"{name} must be a non-negative integer, got {v!r}")


@lru_cache(maxsize=4096)
def _grsf_cached(k: Index, s: int, t: int, shift: bool):
    return _sum_terms(_grsf_lhs_terms(k, s, t), shift), _sum_terms(_grsf_rhs_terms(k, s, t), shift)


def grsf_sides(k: Sequence[int], t: int) -> Relation:
    """Generalized restricted sum formula in its zeta-plus form."""
    k = _nonempty(k, "grsf")
    _check_nonneg(t=t)
    lhs, rhs = _grsf_cached(k, 0, t, True)
    return Relation("grsf", {"k": list(k), "t": t}, lhs, rhs)


def grsf_ones_sides(k: Sequence[int], s: int, t: int) -> Relation:
    """The version with s trailing ones inside every zeta-plus."""
    k = _nonempty(k, "grsf-ones")
    _check_nonneg(s=s, t=t)
    lhs, rhs = _grsf_cached(k, s, t, True)
    return Relation("grsf-ones", {"k": list(k), "s": s, "t": t}, lhs, rhs)


def grsf_finite_sides(k: Sequence[int], t: int) -> Relation:
    """Same combinatorics as :func:`grsf_sides` with bare (unshifted) indices."""
    k = _nonempty(k, "grsf-finite")
    _check_nonneg(t=t)
    lhs, rhs = _grsf_cached(k, 0, t, False)
    return Relation("grsf-finite", {"k": list(k), "t": t}, lhs, rhs, FINITE)


def sum_formula_sides(k: int, u: int) -> Relation:
    """Sum over compositions (s_1 >= 2) of k into u parts of zeta(s), against zeta(k)."""
    if not isinstance(k, int) or not isinstance(u, int) or u < 1 or k - u < 1:
        raise InvalidParams(f"sum formula needs u >= 1 and k - u >= 1, got k={k}, u={u}")
    lhs, rhs = _grsf_cached((k - u,), 0, u - 1, True)
    return Relation("sum-formula", {"k": k, "u": u}, lhs, rhs)


def _ohno_lhs(k: Index, l: int, shift: bool) -> FormalSum:
    return _sum_terms((add(k, e) for e in compositions(l, len(k), 0)), shift)


def _ohno_rhs(k: Index, l: int, shift: bool) -> FormalSum:
    kd = hoffman_dual(k)
    return _sum_terms((hoffman_dual(add(kd, e)) for e in compositions(l, len(kd), 0)), shift)


def ohno_sides(k: Sequence[int], l: int, flavor: str = REAL) -> Relation:
    """Ohno-type relation: sum_{|e|=l} Z(k+e) = sum_{|e'|=l} Z((k^v + e')^v).

    ``flavor="real"`` applies the zeta-plus shift; ``"finite"`` keeps bare indices.
    """
    k = _nonempty(k, "ohno")
    _check_nonneg(l=l)
    if flavor not in (REAL, FINITE):
        raise InvalidParams(f"flavor must be 'real' or 'finite', got {flavor!r}")
    shift = flavor == REAL
    name = "ohno" if shift else "ohno-finite"
    return Relation(name, {"k": list(k), "l": l}, _ohno_lhs(k, l, shift), _ohno_rhs(k, l, shift), flavor)


Operand = Union[FormalSum, Sequence[int]]


def _linear(fn, x: Operand, *args) -> FormalSum:
    if isinstance(x, FormalSum):
        return linear_sum(c * fn(_nonempty(k, "transform"), *args) for k, c in x.items())
    return fn(_nonempty(x, "transform"), *args)


def k_sub_u(k: Sequence[int], u: int) -> FormalSum:
    """k_u = (k_1, (k_2, ..., k_{r-1}) ш {1}^u, k_r)."""
    k = as_index(k)
    if len(k) < 2:
        raise DepthTooSmall(f"k_u needs depth >= 2, got {k}")
    _check_nonneg(u=u)
    inner = naive_shuffle(k[1:-1], ones(u))
    return inner.map_indices(lambda m: (k[0],) + m + (k[-1],))


def f_left(k: Operand, t: int, shift: bool = True) -> FormalSum:
    return _linear(lambda i: _grsf_cached(i, 0, t, shift)[0], k)


def f_right(k: Operand, t: int, shift: bool = True) -> FormalSum:
    return _linear(lambda i: _grsf_cached(i, 0, t, shift)[1], k)


def g_left(k: Operand, t: int, shift: bool = True) -> FormalSum:
    return _linear(lambda i: _ohno_lhs(i, t, shift), k)


def g_right(k: Operand, t: int, shift: bool = True) -> FormalSum:
    return _linear(lambda i: _ohno_rhs(i, t, shift), k)


def f_sides(k: Operand, t: int):
    """(f_L, f_R): both sides of the generalized restricted sum formula, linear in k."""
    return f_left(k, t), f_right(k, t)


def g_sides(k: Operand, t: int):
    """(g_L, g_R): both sides of the Ohno-type relation, linear in k."""
    return g_left(k, t), g_right(k, t)


def f_diff(k: Operand, t: int, shift: bool = True) -> FormalSum:
    return f_left(k, t, shift) - f_right(k, t, shift)


def g_diff(k: Operand, t: int, shift: bool = True) -> FormalSum:
    return g_left(k, t, shift) - g_right(k, t, shift)


def lemma_first_identities(k: Sequence[int], t: int):
    """The two index-level identities behind f = -sum g(k_u, t-u).

    Returns ((f_R, sum_l g_L(k_{t-l}, l)), (f_L, sum_u g_R(k_u, t-u))).
    """
    k = as_index(k)
    if len(k) < 2:
        raise DepthTooSmall(f"lemma needs depth >= 2, got {k}")
    right = linear_sum(g_left(k_sub_u(k, t - l), l) for l in range(t + 1))
    left = linear_sum(g_right(k_sub_u(k, u), t - u) for u in range(t + 1))
    return (f_right(k, t), right), (f_left(k, t), left)


def lemma_first_check(k: Sequence[int], t: int) -> bool:
    (a, b), (c, d) = lemma_first_identities(k, t)
    return a == b and c == d


def lemma_second_check(k: Sequence[int], t: int) -> bool:
    """g(k,t) == -sum_u (-1)^u f(k_u, t-u), as formal sums."""
    k = as_index(k)
    if len(k) < 2:
        raise DepthTooSmall(f"lemma needs depth >= 2, got {k}")
    rhs = -linear_sum((-1) ** u * f_diff(k_sub_u(k, u), t - u) for u in range(t + 1))
    return g_diff(k, t) == rhs


def grsf_ones_difference(k: Sequence[int], s: int, t: int) -> FormalSum:
    """F(k, s, t) = G - H for the version with trailing ones."""
    rel = grsf_ones_sides(k, s, t)
    return rel.lhs - rel.rhs


def bootstrap_sides(k: Sequence[int], s: int, t: int):
    """(F(k,s+1,t), F((k,1),s,t) - F((k,1),s+1,t-1)); F(., ., -1) is taken as 0."""
    k = as_index(k)
    k1 = k + (1,)
    right = grsf_ones_difference(k1, s, t)
    if t >= 1:
        right = right - grsf_ones_difference(k1, s + 1, t - 1)
    return grsf_ones_difference(k, s + 1, t), right


def _grsf_certificate(k: Index, t: int, shift: bool) -> FormalSum:
    # f(k, t) == -sum_u g(k_u, t-u); for depth 1 only u = 0 occurs
    if len(k) == 1:
        return -g_diff(k, t, shift)
    return -linear_sum(g_diff(k_sub_u(k, u), t - u, shift) for u in range(t + 1))


def _grsf_ones_certificate(k: Index, s: int, t: int) -> FormalSum:
    # F(k, s, t) = sum_{t'=1}^{t} (-1)^{t'-1} F((k, {1}^{t'}), s-1, t-t'+1), down to s = 0
    if s == 0:
        return _grsf_certificate(k, t, True)
    return linear_sum(
        (-1) ** (tp - 1) * _grsf_ones_certificate(k + ones(tp), s - 1, t - tp + 1) for tp in range(1, t + 1)
    )


def certificate(rel: Relation) -> FormalSum:
    """A combination of Ohno-type differences that must equal rel.lhs - rel.rhs.

    Each Ohno-type difference g(k, l) is zero as a value (a proved theorem),
    so an exact match certifies the relation without numerics.
    """
    p = rel.params
    if rel.name == "grsf":
        return _grsf_certificate(as_index(p["k"]), p["t"], True)
    if rel.name == "grsf-finite":
        return _grsf_certificate(as_index(p["k"]), p["t"], False)
    if rel.name == "grsf-ones":
        return _grsf_ones_certificate(as_index(p["k"]), p["s"], p["t"])
    if rel.name == "sum-formula":
        return _grsf_certificate((p["k"] - p["u"],), p["u"] - 1, True)
    if rel.name in ("ohno", "ohno-finite"):
        return g_diff(as_index(p["k"]), p["l"], rel.name == "ohno")
    raise InvalidParams(f"no symbolic certificate for relation {rel.name!r}")


@dataclass
class SymbolicReport:
    name: str
    params: dict
    residual: FormalSum
    mode: str = "symbolic"

    @property
    def passed(self) -> bool:
        return not self.residual

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "mode": self.mode,
            "residual": self.residual.to_dict(),
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def summary(self) -> str:
        return str(len(self.residual))

    def describe(self) -> str:
        text = f"{self.name} {self.params}: lhs - rhs vs Ohno-type certificate -> {self.verdict}"
        if self.residual:
            text += f"; residual {self.residual}"
        return text


def verify_symbolic(rel: Relation) -> SymbolicReport:
    """Check lhs - rhs against :func:`certificate` exactly."""
    return SymbolicReport(rel.name, rel.params, rel.difference() - certificate(rel))


def binomial_shuffle_check(k: Sequence[int], u: int, v: int) -> bool:
    """(k_u)_v == C(u+v, u) k_{u+v}."""
    once = k_sub_u(k, u)
    twice = linear_sum(c * k_sub_u(m, v) for m, c in once.items())
    return twice == comb(u + v, u) * k_sub_u(k, u + v)


def poset_expansion_formula(k: Sequence[int], s: int, t: int) -> FormalSum:
    """sum_j C(s+j, s) sum_m sum_a zeta-plus(a_{m_1}, ..., a_{m_r}, {1}^{s+j}).

    The closed form of the expansion of mu((k, {1}^s), ({1}^{t+1})).
    """
    k = _nonempty(k, "poset expansion")
    return linear_sum(
        comb(s + j, s) * _sum_terms(_grsf_lhs_terms(k, s + j, t - j), True) for j in range(t + 1)
    )
