"""Binary relations over an enumerated finite state space.

A relation on n states is stored as n successor bitmasks, one per source
index.  Composition, union, and reflexive-transitive closure are the word
operations the relational algebra evaluator is built on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def _iter_bits(bits: int):
    i = 0
    while bits:
        if bits & 1:
            yield i
        bits >>= 1
        i += 1


@dataclass(frozen=True)
class Relation:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("row count does not match relation size")
        full = (1 << self.n) - 1
        if any(not 0 <= r <= full for r in self.rows):
            raise ValueError("row bits outside the state enumeration")

    @classmethod
    def empty(cls, n: int) -> "Relation":
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def top(cls, n: int) -> "Relation":
        full = (1 << n) - 1
        return cls(n, (full,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * n
        for a, b in pairs:
            rows[a] |= 1 << b
        return cls(n, tuple(rows))

    @classmethod
    def from_test(cls, n: int, bits: int) -> "Relation":
        """The sub-identity relation filtering for the given state set."""
        return cls(n, tuple((1 << i) if bits >> i & 1 else 0 for i in range(n)))

    def _check(self, other: "Relation"):
        if other.n != self.n:
            raise ValueError("relations over different state spaces")

    def __or__(self, other: "Relation") -> "Relation":
        self._check(other)
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: "Relation") -> "Relation":
        self._check(other)
        return Relation(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def compose(self, other: "Relation") -> "Relation":
        """Relational composition: first self, then other."""
        self._check(other)
        rows = []
        for row in self.rows:
            acc = 0
            for j in _iter_bits(row):
                acc |= other.rows[j]
            rows.append(acc)
        return Relation(self.n, tuple(rows))

    def star(self) -> "Relation":
        """Least reflexive-transitive relation containing self, by squaring."""
        closure = self | Relation.identity(self.n)
        while True:
            squared = closure.compose(closure)
            if squared == closure:
                return closure
            closure = squared

    def converse(self) -> "Relation":
        rows = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in _iter_bits(row):
                rows[j] |= 1 << i
        return Relation(self.n, tuple(rows))

    def domain_bits(self) -> int:
        bits = 0
        for i, row in enumerate(self.rows):
            if row:
                bits |= 1 << i
        return bits

    def codomain_bits(self) -> int:
        bits = 0
        for row in self.rows:
            bits |= row
        return bits

    def image_bits(self, bits: int) -> int:
        acc = 0
        for i in _iter_bits(bits):
            acc |= self.rows[i]
        return acc

    def preimage_bits(self, bits: int) -> int:
        """Sources with at least one successor in the given set (may-preimage)."""
        acc = 0
        for i, row in enumerate(self.rows):
            if row & bits:
                acc |= 1 << i
        return acc

    def __le__(self, other: "Relation") -> bool:
        self._check(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def pairs(self) -> Iterable[tuple[int, int]]:
        for i, row in enumerate(self.rows):
            for j in _iter_bits(row):
                yield i, j

    def __repr__(self) -> str:
        return f"Relation({self.n}, {sorted(self.pairs())})"
