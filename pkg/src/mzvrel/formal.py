"""Integer linear combinations of indices and the products used on them."""
from __future__ import annotations

import json
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import EmptyIndex, ParseError
from .indices import EMPTY, Index, as_index, format_index, zeta_plus_index


def sort_key(k: Index) -> tuple:
    return (sum(k), len(k), k)


class FormalSum:
    """A finite map index -> non-zero integer coefficient.

    Zero coefficients are never stored, so two sums are equal exactly when
    their term maps are equal.  Iteration follows the canonical order
    (weight, depth, lexicographic parts).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Sequence[int], int], Iterable[Tuple[Sequence[int], int]], None] = None):
        acc: Dict[Index, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                k = as_index(k)
                if not isinstance(c, int):
                    raise TypeError(f"coefficients must be int, got {c!r}")
                acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def of(cls, k: Sequence[int], coef: int = 1) -> "FormalSum":
        return cls({as_index(k): coef})

    @classmethod
    def _raw(cls, terms: Dict[Index, int]) -> "FormalSum":
        # trusted constructor: keys already validated
        out = cls.__new__(cls)
        out._terms = {k: c for k, c in terms.items() if c}
        return out

    def items(self) -> list[Tuple[Index, int]]:
        return [(k, self._terms[k]) for k in sorted(self._terms, key=sort_key)]

    def indices(self) -> list[Index]:
        return sorted(self._terms, key=sort_key)

    def coefficient(self, k: Sequence[int]) -> int:
        return self._terms.get(tuple(k), 0)

    def __iter__(self) -> Iterator[Tuple[Index, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, k) -> bool:
        return tuple(k) in self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == FormalSum(other)
        return NotImplemented

    __hash__ = None  # mutable-style value semantics; not hashable

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return FormalSum._raw(acc)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "FormalSum":
        return FormalSum._raw({k: -c for k, c in self._terms.items()})

    def __mul__(self, c: int) -> "FormalSum":
        if not isinstance(c, int):
            return NotImplemented
        return FormalSum._raw({k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def total_multiplicity(self) -> int:
        return sum(self._terms.values())

    def max_weight(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def map_indices(self, f: Callable[[Index], Index]) -> "FormalSum":
        acc: Dict[Index, int] = {}
        for k, c in self._terms.items():
            nk = f(k)
            acc[nk] = acc.get(nk, 0) + c
        return FormalSum._raw(acc)

    def to_dict(self) -> dict:
        return {"terms": [{"coef": c, "index": list(k)} for k, c in self.items()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "FormalSum":
        try:
            return cls((tuple(t["index"]), int(t["coef"])) for t in data["terms"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed FormalSum JSON: {data!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> "FormalSum":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (k, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"({format_index(k)})" if k else "∅"
            term = body if mag == 1 else f"{mag}*{body}"
            if i == 0:
                out.append(term if c > 0 else f"-{term}")
            else:
                out.append(f" {sign} {term}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"FormalSum({{{', '.join(f'{k}: {c}' for k, c in self.items())}}})"


Operand = Union[FormalSum, Sequence[int]]


def lift(x: Operand) -> FormalSum:
    return x if isinstance(x, FormalSum) else FormalSum.of(x)


def _bilinear(on_indices: Callable[[Index, Index], Dict[Index, int]]):
    """Extend a product defined on pairs of indices bilinearly to formal sums."""

    def op(x: Operand, y: Operand) -> FormalSum:
        acc: Dict[Index, int] = {}
        for (k, a), (l, b) in product(lift(x).items(), lift(y).items()):
            for m, c in on_indices(k, l).items():
                acc[m] = acc.get(m, 0) + a * b * c
        return FormalSum._raw(acc)

    op.__name__ = on_indices.__name__.lstrip("_")
    op.__doc__ = on_indices.__doc__
    return op


def _prepend(first: int, terms: Dict[Index, int], acc: Dict[Index, int]) -> None:
    for k, c in terms.items():
        key = (first,) + k
        acc[key] = acc.get(key, 0) + c


@lru_cache(maxsize=None)
def _harmonic_cached(k: Index, l: Index) -> Tuple[Tuple[Index, int], ...]:
    if not k:
        return ((l, 1),)
    if not l:
        return ((k, 1),)
    acc: Dict[Index, int] = {}
    _prepend(k[0], dict(_harmonic_cached(k[1:], l)), acc)
    _prepend(l[0], dict(_harmonic_cached(k, l[1:])), acc)
    _prepend(k[0] + l[0], dict(_harmonic_cached(k[1:], l[1:])), acc)
    return tuple(acc.items())


def _harmonic(k: Index, l: Index) -> Dict[Index, int]:
    """Harmonic (stuffle) product: the index algebra of products of nested sums."""
    return dict(_harmonic_cached(k, l))


def _circled_harmonic(k: Index, l: Index) -> Dict[Index, int]:
    """Fuse the leading parts and stuffle the tails: (k_1+l_1, k' * l')."""
    if not k or not l:
        raise EmptyIndex("circled harmonic product needs two non-empty indices")
    acc: Dict[Index, int] = {}
    _prepend(k[0] + l[0], _harmonic(k[1:], l[1:]), acc)
    return acc


@lru_cache(maxsize=None)
def _shuffle_cached(k: Index, l: Index) -> Tuple[Tuple[Index, int], ...]:
    if not k:
        return ((l, 1),)
    if not l:
        return ((k, 1),)
    acc: Dict[Index, int] = {}
    _prepend(k[0], dict(_shuffle_cached(k[1:], l)), acc)
    _prepend(l[0], dict(_shuffle_cached(k, l[1:])), acc)
    return tuple(acc.items())


def _naive_shuffle(k: Index, l: Index) -> Dict[Index, int]:
    """All order-preserving interleavings of the parts of k and l, with multiplicity."""
    return dict(_shuffle_cached(k, l))


harmonic = _bilinear(_harmonic)
circled_harmonic = _bilinear(_circled_harmonic)
naive_shuffle = _bilinear(_naive_shuffle)


def star_terms(k: Sequence[int]) -> Iterator[Index]:
    """The 2^(r-1) indices k_1 □ k_2 □ ... □ k_r, □ in {',', '+'}, unmerged."""
    k = as_index(k)
    if not k:
        raise EmptyIndex("star expansion of the empty index")
    for choice in product((False, True), repeat=len(k) - 1):
        parts = [k[0]]
        for plus, part in zip(choice, k[1:]):
            if plus:
                parts[-1] += part
            else:
                parts.append(part)
        yield tuple(parts)


def star_expand(x: Operand) -> FormalSum:
    """k★ extended linearly."""
    acc: Dict[Index, int] = {}
    for k, c in lift(x).items():
        for term in star_terms(k):
            acc[term] = acc.get(term, 0) + c
    return FormalSum._raw(acc)


def zeta_plus_sum(s: Operand) -> FormalSum:
    """Apply the zeta-plus shift to every term."""
    s = lift(s)
    if EMPTY in s:
        raise EmptyIndex("zeta-plus shift of a sum containing the empty index")
    return s.map_indices(zeta_plus_index)


def linear_sum(parts: Iterable[FormalSum]) -> FormalSum:
    acc: Dict[Index, int] = {}
    for s in parts:
        for k, c in s._terms.items():
            acc[k] = acc.get(k, 0) + c
    return FormalSum._raw(acc)
