"""Finitely supported N-vectors over Z, and helpers for finite index subsets.

An ``NVector`` stores a window of counts together with the absolute index of
its first stored entry, trimmed so the first and last stored entries are
nonzero. These are the exponent vectors of monomials, particle
configurations, contents of reduced words, and remixed-Eulerian keys.

Finite subsets of Z are plain strictly increasing tuples of ints throughout
the package (``SubsetZ``); module functions below cover the few operations
they need.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

SubsetZ = tuple[int, ...]


class NVector:
    """Finitely supported map Z -> N."""

    __slots__ = ("offset", "counts")

    def __init__(self, offset: int = 0, counts: Iterable[int] = ()):
        cs = list(counts)
        if any(c < 0 for c in cs):
            raise ValueError(f"negative entry in NVector counts {cs}")
        lead = 0
        while cs and cs[0] == 0:
            cs.pop(0)
            lead += 1
        while cs and cs[-1] == 0:
            cs.pop()
        self.offset = offset + lead if cs else 0
        self.counts: tuple[int, ...] = tuple(cs)

    @staticmethod
    def from_seq(seq: Sequence[int], start: int = 1) -> "NVector":
        """Vector with seq[0] placed at absolute index ``start``."""
        return NVector(start, seq)

    @staticmethod
    def from_items(items: Mapping[int, int] | Iterable[tuple[int, int]]) -> "NVector":
        d = dict(items)
        d = {i: c for i, c in d.items() if c}
        if not d:
            return NVector()
        lo, hi = min(d), max(d)
        return NVector(lo, [d.get(i, 0) for i in range(lo, hi + 1)])

    @staticmethod
    def from_subset(subset: Iterable[int]) -> "NVector":
        return NVector.from_items({i: 1 for i in subset})

    def __getitem__(self, i: int) -> int:
        j = i - self.offset
        if 0 <= j < len(self.counts):
            return self.counts[j]
        return 0

    def items(self) -> Iterator[tuple[int, int]]:
        for j, c in enumerate(self.counts):
            if c:
                yield self.offset + j, c

    def is_zero(self) -> bool:
        return not self.counts

    def weight(self) -> int:
        return sum(self.counts)

    def support(self) -> SubsetZ:
        return tuple(i for i, _ in self.items())

    def excess(self) -> int:
        """e(c) = |c| - |Supp(c)|; zero exactly for squarefree exponent vectors."""
        return self.weight() - sum(1 for c in self.counts if c)

    def min_index(self) -> int:
        if self.is_zero():
            raise ValueError("empty NVector has no support")
        return self.offset

    def max_index(self) -> int:
        if self.is_zero():
            raise ValueError("empty NVector has no support")
        return self.offset + len(self.counts) - 1

    def partial_sum(self, i: int) -> int:
        """Sum of entries at indices <= i."""
        return sum(c for j, c in self.items() if j <= i)

    def height(self, i: int) -> int:
        """h_i(c) = (sum of c_k for k <= i) - i."""
        return self.partial_sum(i) - i

    def coarea_stat(self) -> int:
        """N(c) = sum (i-1) c_i over absolute indices."""
        return sum((i - 1) * c for i, c in self.items())

    def shifted(self, k: int) -> "NVector":
        if self.is_zero():
            return self
        return NVector(self.offset + k, self.counts)

    def bumped(self, i: int, delta: int) -> "NVector":
        """A copy with entry i changed by delta."""
        items = dict(self.items())
        items[i] = items.get(i, 0) + delta
        return NVector.from_items(items)

    def added(self, other: "NVector") -> "NVector":
        items = dict(self.items())
        for i, c in other.items():
            items[i] = items.get(i, 0) + c
        return NVector.from_items(items)

    def to_tuple(self, lo: int, hi: int) -> tuple[int, ...]:
        """Entries at indices lo..hi inclusive; errors if support escapes."""
        if not self.is_zero() and (self.min_index() < lo or self.max_index() > hi):
            raise ValueError(f"support {self.support()} escapes window [{lo}, {hi}]")
        return tuple(self[i] for i in range(lo, hi + 1))

    def max_support_interval(self, i: int) -> tuple[int, int]:
        """The maximal interval [a, b] of Supp(c) containing i."""
        if self[i] == 0:
            raise ValueError(f"index {i} not in support")
        a = b = i
        while self[a - 1] > 0:
            a -= 1
        while self[b + 1] > 0:
            b += 1
        return a, b

    def support_intervals(self) -> list[tuple[int, int]]:
        """Maximal intervals of the support, left to right."""
        out: list[tuple[int, int]] = []
        prev = None
        for i in self.support():
            if prev is not None and i == prev + 1:
                out[-1] = (out[-1][0], i)
            else:
                out.append((i, i))
            prev = i
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NVector):
            return NotImplemented
        return self.offset == other.offset and self.counts == other.counts

    def __hash__(self) -> int:
        return hash((self.offset, self.counts))

    def __repr__(self) -> str:
        return f"NVector(offset={self.offset}, counts={self.counts})"


def as_nvector(c: "NVector | Sequence[int] | Mapping[int, int]", start: int = 1) -> NVector:
    """Coerce sequences (1-indexed from ``start``) or index maps to NVector."""
    if isinstance(c, NVector):
        return c
    if isinstance(c, Mapping):
        return NVector.from_items(c)
    return NVector.from_seq(c, start)


def as_subset(s: Iterable[int]) -> SubsetZ:
    t = tuple(sorted(set(s)))
    return t


def subset_is_interval(s: SubsetZ) -> bool:
    return not s or s[-1] - s[0] + 1 == len(s)


def interval(a: int, b: int) -> SubsetZ:
    """The subset {a, ..., b}; empty if b < a."""
    return tuple(range(a, b + 1))


def subset_maximal_intervals(s: SubsetZ) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for i in s:
        if out and i == out[-1][1] + 1:
            out[-1] = (out[-1][0], i)
        else:
            out.append((i, i))
    return out
