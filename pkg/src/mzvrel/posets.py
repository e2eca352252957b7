"""Labeled posets (2-posets), the mu(k, l) diagram and their expansion into MZV indices.

Labels follow the diagram convention: 0 is a hollow vertex carrying dt/t
(letter ``a``), 1 is a filled vertex carrying dt/(1-t) (letter ``b``).
Words are read from the largest integration variable down, so the word of
an index k is a^(k_1-1) b a^(k_2-1) b ... a^(k_r-1) b.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, Sequence, Tuple

from .errors import EmptyIndex, NotAdmissible, ParseError
from .formal import FormalSum, circled_harmonic, star_expand
from .indices import Index, as_index

Word = str


def _word(k: Index) -> Word:
    return "".join("a" * (part - 1) + "b" for part in k)


def _index(w: Word) -> Index:
    parts = []
    run = 0
    for letter in w:
        if letter == "a":
            run += 1
        elif letter == "b":
            parts.append(run + 1)
            run = 0
        else:
            raise ParseError(f"words use letters a and b only, got {w!r}")
    if run:
        raise NotAdmissible(f"word {w!r} does not end in b")
    return tuple(parts)


def is_admissible_word(w: Word) -> bool:
    return not w or (w[0] == "a" and w[-1] == "b")


def index_to_word(k: Sequence[int]) -> Word:
    k = as_index(k)
    if k and k[0] < 2:
        raise NotAdmissible(f"index {k} is not admissible", k)
    return _word(k)


def word_to_index(w: Word) -> Index:
    if not is_admissible_word(w):
        raise NotAdmissible(f"word {w!r} is not admissible")
    return _index(w)


def dual_word(w: Word) -> Word:
    """Reverse the word and swap a <-> b (the substitution t -> 1 - t)."""
    return w[::-1].translate(str.maketrans("ab", "ba"))


@dataclass(frozen=True)
class TwoPoset:
    """A finite poset on ``range(n)`` with a 0/1 label per element.

    ``relations`` are pairs (i, j) meaning i < j; they need not be covering
    relations, the order is their transitive closure.
    """

    n: int
    relations: FrozenSet[Tuple[int, int]]
    labels: Tuple[int, ...]
    _above: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != self.n or any(x not in (0, 1) for x in self.labels):
            raise ParseError(f"need {self.n} labels in {{0,1}}, got {self.labels}")
        succ = [0] * self.n
        for i, j in self.relations:
            if not (0 <= i < self.n and 0 <= j < self.n) or i == j:
                raise ParseError(f"bad relation {i}<{j} for {self.n} elements")
            succ[i] |= 1 << j
        # transitive closure via DFS per element
        above = [0] * self.n
        for x in range(self.n):
            seen = 0
            stack = [x]
            while stack:
                y = stack.pop()
                m = succ[y]
                while m:
                    z = (m & -m).bit_length() - 1
                    m &= m - 1
                    if not seen >> z & 1:
                        seen |= 1 << z
                        stack.append(z)
            if seen >> x & 1:
                raise ParseError("order relation contains a cycle")
            above[x] = seen
        object.__setattr__(self, "_above", tuple(above))

    @classmethod
    def build(cls, labels: Sequence[int], relations) -> "TwoPoset":
        return cls(len(labels), frozenset(relations), tuple(labels))

    @classmethod
    def chain(cls, labels: Sequence[int]) -> "TwoPoset":
        """Total order labels[0] < labels[1] < ..."""
        return cls.build(labels, [(i, i + 1) for i in range(len(labels) - 1)])

    @classmethod
    def from_word(cls, w: Word) -> "TwoPoset":
        # the word lists labels top-down, the chain is built bottom-up
        return cls.chain([0 if ch == "a" else 1 for ch in reversed(w)])

    def less(self, i: int, j: int) -> bool:
        return bool(self._above[i] >> j & 1)

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if not self._above[x]]

    def minimal(self) -> list[int]:
        below = [0] * self.n
        for x in range(self.n):
            m = self._above[x]
            while m:
                z = (m & -m).bit_length() - 1
                m &= m - 1
                below[z] |= 1 << x
        return [x for x in range(self.n) if not below[x]]

    def is_admissible(self) -> bool:
        return all(self.labels[x] == 0 for x in self.maximal()) and all(
            self.labels[x] == 1 for x in self.minimal()
        )

    def to_text(self) -> str:
        rel = " ".join(f"{i}<{j}" for i, j in sorted(self.relations))
        return f"{self.n}; {rel}; {''.join(map(str, self.labels))}"


def parse_poset(text: str) -> TwoPoset:
    """Parse ``"n; i<j pairs; labels"``, e.g. ``"5; 0<1 1<2 3<2 3<4; 11010"``.

    Pairs may be separated by spaces or commas; elements are 0-based.
    """
    fields = [f.strip() for f in text.split(";")]
    if len(fields) != 3:
        raise ParseError(f"poset text needs three ';'-separated fields: {text!r}")
    try:
        n = int(fields[0])
    except ValueError as exc:
        raise ParseError(f"bad element count {fields[0]!r}") from exc
    relations = set()
    for token in re.split(r"[\s,]+", fields[1]):
        if not token:
            continue
        m = re.fullmatch(r"(\d+)<(\d+)", token)
        if not m:
            raise ParseError(f"bad relation {token!r}")
        relations.add((int(m.group(1)), int(m.group(2))))
    if not re.fullmatch(r"[01]*", fields[2]):
        raise ParseError(f"labels must be a 0/1 string, got {fields[2]!r}")
    return TwoPoset(n, frozenset(relations), tuple(int(ch) for ch in fields[2]))


def mu(k: Sequence[int], l: Sequence[int]) -> TwoPoset:
    """The 2-poset whose integral equals zeta(k ⊛ l★).

    Bottom to top, a single chain carries the blocks of k_r, ..., k_1 (one
    filled vertex followed by k_i - 1 hollow ones) and then l_1 hollow
    vertices.  Each later l_i is a branch: a filled vertex set below the top
    of the previous branch, followed upward by l_i - 1 hollow vertices.
    """
    k, l = as_index(k), as_index(l)
    if not k or not l:
        raise EmptyIndex("mu(k, l) needs two non-empty indices")
    labels: list[int] = []
    relations: list[Tuple[int, int]] = []

    def push(label: int, below: int | None) -> int:
        labels.append(label)
        x = len(labels) - 1
        if below is not None:
            relations.append((below, x))
        return x

    top = None
    for part in reversed(k):
        top = push(1, top)
        for _ in range(part - 1):
            top = push(0, top)
    for _ in range(l[0]):
        top = push(0, top)
    for part in l[1:]:
        foot = push(1, None)
        relations.append((foot, top))
        branch_top = foot
        for _ in range(part - 1):
            branch_top = push(0, branch_top)
        top = branch_top
    return TwoPoset.build(labels, relations)


def _extension_words(poset: TwoPoset) -> Dict[Word, int]:
    above = poset._above
    letters = ["a" if lab == 0 else "b" for lab in poset.labels]

    @lru_cache(maxsize=None)
    def rec(remaining: int) -> Tuple[Tuple[Word, int], ...]:
        if not remaining:
            return (("", 1),)
        acc: Dict[Word, int] = {}
        m = remaining
        while m:
            x = (m & -m).bit_length() - 1
            m &= m - 1
            if above[x] & remaining:
                continue
            head = letters[x]
            for tail, c in rec(remaining & ~(1 << x)):
                w = head + tail
                acc[w] = acc.get(w, 0) + c
        return tuple(acc.items())

    return dict(rec((1 << poset.n) - 1))


def linear_extensions(poset: TwoPoset) -> Iterator[Tuple[int, ...]]:
    """Yield every linear extension as a tuple of elements, largest first."""

    def rec(remaining: int, prefix: Tuple[int, ...]):
        if not remaining:
            yield prefix
            return
        for x in range(poset.n):
            if remaining >> x & 1 and not poset._above[x] & remaining:
                yield from rec(remaining & ~(1 << x), prefix + (x,))

    yield from rec((1 << poset.n) - 1, ())


def count_linear_extensions(poset: TwoPoset) -> int:
    above = poset._above

    @lru_cache(maxsize=None)
    def rec(remaining: int) -> int:
        if not remaining:
            return 1
        total = 0
        for x in range(poset.n):
            if remaining >> x & 1 and not above[x] & remaining:
                total += rec(remaining & ~(1 << x))
        return total

    return rec((1 << poset.n) - 1)


def expand_poset(poset: TwoPoset) -> FormalSum:
    """Expand I(X) into a formal sum of indices, one term per linear extension."""
    if not poset.is_admissible():
        raise NotAdmissible(f"2-poset {poset.to_text()} is not admissible")
    return FormalSum((_index(w), c) for w, c in _extension_words(poset).items())


def integral_series_sides(k: Sequence[int], l: Sequence[int]) -> Tuple[FormalSum, FormalSum]:
    """(expansion of mu(k, l), k ⊛ l★); the two sides are equal as MZV values."""
    k, l = as_index(k), as_index(l)
    if not k or not l:
        raise EmptyIndex("integral-series identity needs two non-empty indices")
    return expand_poset(mu(k, l)), circled_harmonic(k, star_expand(l))


def antichain(labels: Sequence[int]) -> TwoPoset:
    return TwoPoset.build(labels, [])


__all__ = [
    "TwoPoset",
    "Word",
    "antichain",
    "count_linear_extensions",
    "dual_word",
    "expand_poset",
    "index_to_word",
    "integral_series_sides",
    "is_admissible_word",
    "linear_extensions",
    "mu",
    "parse_poset",
    "word_to_index",
]
