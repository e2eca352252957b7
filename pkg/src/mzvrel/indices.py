"""Indices (compositions) and the structural operations on them.

An index is represented as a plain ``tuple`` of positive ints; the empty
tuple is the empty index.  Every public function validates its input with
:func:`as_index`, so lists and other sequences are accepted too.
"""
from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, Sequence, Tuple

from .errors import DepthMismatch, EmptyIndex, ParseError

Index = Tuple[int, ...]

EMPTY: Index = ()


def as_index(k: Iterable[int]) -> Index:
    k = tuple(k)
    for part in k:
        if not isinstance(part, int) or isinstance(part, bool) or part < 1:
            raise ParseError(f"index parts must be positive integers, got {k!r}")
    return k


def ones(m: int) -> Index:
    """The index {1}^m."""
    return (1,) * m


def weight(k: Sequence[int]) -> int:
    return sum(as_index(k))


def depth(k: Sequence[int]) -> int:
    return len(as_index(k))


def is_admissible(k: Sequence[int]) -> bool:
    """True for the empty index and for indices with first part >= 2."""
    k = as_index(k)
    return not k or k[0] >= 2


def add(k: Sequence[int], e: Sequence[int]) -> Index:
    """Componentwise sum of an index and an exponent vector of the same depth."""
    k = as_index(k)
    e = tuple(e)
    if len(k) != len(e):
        raise DepthMismatch(f"depth {len(k)} index {k} plus length {len(e)} vector {e}")
    if any(x < 0 for x in e):
        raise ParseError(f"exponent vector must be non-negative, got {e}")
    return tuple(a + b for a, b in zip(k, e))


def zeta_plus_index(k: Sequence[int]) -> Index:
    """(k_1 + 1, k_2, ..., k_r)."""
    k = as_index(k)
    if not k:
        raise EmptyIndex("zeta-plus shift of the empty index")
    return (k[0] + 1,) + k[1:]


def _separators(k: Index) -> list[str]:
    # the all-ones string 1?1?...?1 of weight |k|; '+' inside a part, ',' between parts
    seps: list[str] = []
    for i, part in enumerate(k):
        if i:
            seps.append(",")
        seps.extend("+" * (part - 1))
    return seps


def _from_separators(seps: Sequence[str]) -> Index:
    parts = [1]
    for s in seps:
        if s == "+":
            parts[-1] += 1
        else:
            parts.append(1)
    return tuple(parts)


def hoffman_dual(k: Sequence[int]) -> Index:
    """Hoffman's dual: swap '+' and ',' in the all-ones presentation of k.

    >>> hoffman_dual((2, 1))
    (1, 2)
    >>> hoffman_dual((3,))
    (1, 1, 1)
    """
    k = as_index(k)
    if not k:
        raise EmptyIndex("Hoffman dual of the empty index")
    swapped = ["," if s == "+" else "+" for s in _separators(k)]
    return _from_separators(swapped)


def compositions(total: int, parts: int, min_part: int = 1) -> Iterator[Tuple[int, ...]]:
    """Yield every length-``parts`` vector of ints >= ``min_part`` summing to ``total``.

    Vectors come out in ascending lexicographic order.  ``min_part`` is 0
    (weak compositions, exponent vectors) or 1 (ordinary compositions).
    """
    if min_part not in (0, 1):
        raise ValueError("min_part must be 0 or 1")
    if parts < 0 or total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < parts * min_part:
        return

    def rec(remaining: int, slots: int) -> Iterator[Tuple[int, ...]]:
        if slots == 1:
            yield (remaining,)
            return
        for first in range(min_part, remaining - (slots - 1) * min_part + 1):
            for rest in rec(remaining - first, slots - 1):
                yield (first,) + rest

    yield from rec(total, parts)


def count_compositions(total: int, parts: int, min_part: int = 1) -> int:
    if parts == 0:
        return int(total == 0)
    free = total - parts * min_part
    if free < 0:
        return 0
    return comb(free + parts - 1, parts - 1)


def indices_of_weight(w: int) -> Iterator[Index]:
    """All indices of weight ``w`` (2^(w-1) of them for w >= 1)."""
    if w == 0:
        yield EMPTY
        return
    for r in range(1, w + 1):
        yield from compositions(w, r, 1)


def parse_index(text: str) -> Index:
    """Parse ``"k1,k2,...,kr"``; whitespace around entries is ignored.

    The empty string (or ``"()"``) parses to the empty index.
    """
    text = text.strip()
    if text in ("", "()", "∅"):
        return EMPTY
    parts = []
    for raw in text.split(","):
        raw = raw.strip()
        if not raw.isdigit():
            raise ParseError(f"malformed index entry {raw!r} in {text!r}")
        value = int(raw)
        if value < 1:
            raise ParseError(f"index parts must be >= 1, got {value} in {text!r}")
        parts.append(value)
    return tuple(parts)


def format_index(k: Sequence[int]) -> str:
    return ",".join(str(x) for x in as_index(k))
