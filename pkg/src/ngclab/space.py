"""Finite state spaces, states, and predicates (extensional state sets).

States map a fixed tuple of variables to values in Z_m.  The whole space is
enumerated once and for all in lexicographic order (first variable most
significant), and predicates are bitmasks over that enumeration.  Everything
here is immutable and hashable, so values can be shared freely across tasks.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

from .errors import SpaceCapError

HARD_STATE_CAP = 2**20


def _effective_cap() -> int:
    # NGCL_STATE_CAP may lower the cap but never raise it past the hard max.
    raw = os.environ.get("NGCL_STATE_CAP")
    if raw is None:
        return HARD_STATE_CAP
    try:
        value = int(raw)
    except ValueError:
        return HARD_STATE_CAP
    if value < 1:
        return HARD_STATE_CAP
    return min(value, HARD_STATE_CAP)


@dataclass(frozen=True)
class StateSpace:
    """All states over `variables` with values in Z_modulus."""

    variables: tuple[str, ...]
    modulus: int

    def __post_init__(self):
        if not self.variables:
            raise ValueError("state space needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("state space variables must be distinct")
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        size = self.modulus ** len(self.variables)
        cap = _effective_cap()
        if size > cap:
            raise SpaceCapError(
                f"state space has {size} states, exceeding the cap of {cap}"
            )

    @property
    def size(self) -> int:
        return self.modulus ** len(self.variables)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable '{name}'") from None

    def index_of(self, values: tuple[int, ...]) -> int:
        idx = 0
        for v in values:
            idx = idx * self.modulus + (v % self.modulus)
        return idx

    def values_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in self.variables:
            index, v = divmod(index, self.modulus)
            out.append(v)
        return tuple(reversed(out))

    def state(self, index: int) -> "State":
        if not 0 <= index < self.size:
            raise IndexError(f"state index {index} out of range")
        return State(self, self.values_of(index))

    def states(self) -> Iterator["State"]:
        for i in range(self.size):
            yield self.state(i)


@dataclass(frozen=True)
class State:
    """A total assignment of the space's variables."""

    space: StateSpace
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.space.variables):
            raise ValueError("state arity does not match its space")
        if any(not 0 <= v < self.space.modulus for v in self.values):
            raise ValueError("state value outside Z_m")

    @property
    def index(self) -> int:
        return self.space.index_of(self.values)

    def __getitem__(self, name: str) -> int:
        return self.values[self.space.var_index(name)]

    def set(self, name: str, value: int) -> "State":
        """The state differing from this one only at `name`."""
        i = self.space.var_index(name)
        vals = list(self.values)
        vals[i] = value % self.space.modulus
        return State(self.space, tuple(vals))

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}={v}" for n, v in zip(self.space.variables, self.values))
        return f"<{inner}>"


@dataclass(frozen=True)
class Predicate:
    """A subset of the state space, stored as a bitmask over state indices."""

    space: StateSpace
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits <= self.space.full_mask:
            raise ValueError("predicate bits outside the state enumeration")

    @classmethod
    def empty(cls, space: StateSpace) -> "Predicate":
        return cls(space, 0)

    @classmethod
    def universe(cls, space: StateSpace) -> "Predicate":
        return cls(space, space.full_mask)

    @classmethod
    def from_indices(cls, space: StateSpace, indices) -> "Predicate":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return cls(space, bits)

    @classmethod
    def from_states(cls, states) -> "Predicate":
        states = list(states)
        if not states:
            raise ValueError("cannot infer a space from zero states")
        space = states[0].space
        return cls.from_indices(space, (s.index for s in states))

    def _check(self, other: "Predicate"):
        if other.space != self.space:
            raise ValueError("predicates live in different state spaces")

    def __and__(self, other: "Predicate") -> "Predicate":
        self._check(other)
        return Predicate(self.space, self.bits & other.bits)

    def __or__(self, other: "Predicate") -> "Predicate":
        self._check(other)
        return Predicate(self.space, self.bits | other.bits)

    def __sub__(self, other: "Predicate") -> "Predicate":
        self._check(other)
        return Predicate(self.space, self.bits & ~other.bits & self.space.full_mask)

    def __invert__(self) -> "Predicate":
        return Predicate(self.space, ~self.bits & self.space.full_mask)

    def __le__(self, other: "Predicate") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __contains__(self, item) -> bool:
        index = item.index if isinstance(item, State) else int(item)
        return bool(self.bits >> index & 1)

    def indices(self) -> Iterator[int]:
        bits, i = self.bits, 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def states(self) -> Iterator[State]:
        for i in self.indices():
            yield self.space.state(i)

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_universe(self) -> bool:
        return self.bits == self.space.full_mask

    def __repr__(self) -> str:
        if self.is_empty:
            return "{}"
        return "{" + ", ".join(repr(s) for s in self.states()) + "}"
