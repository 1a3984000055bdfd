"""Program and predicate corpora: exhaustive enumeration and seeded sampling.

Exhaustive mode enumerates every AST up to a depth bound over small canonical
expression and guard pools, in a fixed deterministic order, so searches find
minimal witnesses and re-runs are reproducible.  Random mode is driven
entirely by a seeded generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .space import Predicate, StateSpace
from .syntax import (
    And,
    Assign,
    BinExpr,
    BoolLit,
    Choice,
    Cmp,
    Const,
    Diverge,
    Expr,
    Guard,
    Ite,
    Not,
    Or,
    Program,
    Seq,
    Skip,
    Var,
    While,
)


@dataclass(frozen=True)
class GeneratorConfig:
    variables: tuple[str, ...] = ("x",)
    modulus: int = 2
    max_depth: int = 3
    loops: bool = False
    mode: str = "exhaustive"  # or "random"
    seed: int = 0
    count: int = 1000          # random mode only
    expr_depth: int = 1        # exhaustive pool: 1 = atoms, 2 = one binop layer

    def space(self) -> StateSpace:
        return StateSpace(self.variables, self.modulus)


def expr_pool(space: StateSpace, depth: int = 1) -> list[Expr]:
    """Constants 0..m-1 and variables; at depth 2 also one layer of + - *."""
    atoms: list[Expr] = [Const(k) for k in range(space.modulus)]
    atoms += [Var(v) for v in space.variables]
    if depth <= 1:
        return atoms
    out = list(atoms)
    for op in ("+", "-", "*"):
        for a in atoms:
            for b in atoms:
                out.append(BinExpr(op, a, b))
    return out


def guard_pool(space: StateSpace) -> list[Guard]:
    """Equality tests of each variable against each constant, plus pairwise
    variable comparisons when there are several variables."""
    out: list[Guard] = []
    for v in space.variables:
        for k in range(space.modulus):
            out.append(Cmp("=", Var(v), Const(k)))
    for i, v in enumerate(space.variables):
        for w in space.variables[i + 1:]:
            out.append(Cmp("=", Var(v), Var(w)))
            out.append(Cmp("<", Var(v), Var(w)))
    return out


def exhaustive_programs(
    space: StateSpace,
    max_depth: int,
    loops: bool = False,
    expr_depth: int = 1,
) -> Iterator[Program]:
    """Every AST of depth <= max_depth over the canonical pools, smallest
    depth first, constructors in a fixed order within each depth."""
    exprs = expr_pool(space, expr_depth)
    guards = guard_pool(space)
    leaves: list[Program] = [Skip(), Diverge()]
    leaves += [Assign(v, e) for v in space.variables for e in exprs]
    yield from leaves
    cumulative: list[Program] = list(leaves)
    frontier = leaves
    for _ in range(2, max_depth + 1):
        fresh: list[Program] = []
        # at least one operand must come from the previous frontier so each
        # program is produced exactly once, at its true depth
        frontier_set = set(frontier)
        for ctor in (Seq, Choice):
            for a in cumulative:
                for b in cumulative:
                    if a in frontier_set or b in frontier_set:
                        fresh.append(ctor(a, b))
        for g in guards:
            for a in cumulative:
                for b in cumulative:
                    if a in frontier_set or b in frontier_set:
                        fresh.append(Ite(g, a, b))
        if loops:
            for g in guards:
                for a in frontier:
                    fresh.append(While(g, a))
        yield from fresh
        cumulative += fresh
        frontier = fresh


def random_expr(rng: random.Random, space: StateSpace, depth: int = 2) -> Expr:
    if depth <= 0 or rng.random() < 0.55:
        if rng.random() < 0.5:
            return Const(rng.randrange(space.modulus))
        return Var(rng.choice(space.variables))
    op = rng.choice("+-*")
    return BinExpr(op, random_expr(rng, space, depth - 1),
                   random_expr(rng, space, depth - 1))


def random_guard(rng: random.Random, space: StateSpace, depth: int = 2) -> Guard:
    if depth <= 0 or rng.random() < 0.6:
        op = rng.choice(("=", "!=", "<", "<="))
        return Cmp(op, random_expr(rng, space, 1), random_expr(rng, space, 1))
    roll = rng.random()
    if roll < 0.1:
        return BoolLit(rng.random() < 0.5)
    if roll < 0.4:
        return Not(random_guard(rng, space, depth - 1))
    ctor = And if roll < 0.7 else Or
    return ctor(random_guard(rng, space, depth - 1),
                random_guard(rng, space, depth - 1))


def random_program(
    rng: random.Random,
    space: StateSpace,
    depth: int,
    loops: bool = True,
) -> Program:
    if depth <= 1:
        roll = rng.random()
        if roll < 0.15:
            return Skip()
        if roll < 0.25:
            return Diverge()
        return Assign(rng.choice(space.variables), random_expr(rng, space))
    roll = rng.random()
    if roll < 0.12:
        return random_program(rng, space, 1, loops)
    if roll < 0.40:
        return Seq(random_program(rng, space, depth - 1, loops),
                   random_program(rng, space, depth - 1, loops))
    if roll < 0.62:
        return Choice(random_program(rng, space, depth - 1, loops),
                      random_program(rng, space, depth - 1, loops))
    if roll < 0.82 or not loops:
        return Ite(random_guard(rng, space),
                   random_program(rng, space, depth - 1, loops),
                   random_program(rng, space, depth - 1, loops))
    return While(random_guard(rng, space),
                 random_program(rng, space, depth - 1, loops))


def random_programs(config: GeneratorConfig) -> Iterator[Program]:
    rng = random.Random(config.seed)
    space = config.space()
    for _ in range(config.count):
        yield random_program(rng, space, config.max_depth, config.loops)


def generate_programs(config: GeneratorConfig) -> Iterator[Program]:
    """Stream programs per the config; exhaustive order is deterministic and
    random streams are reproducible from the seed."""
    if config.mode == "exhaustive":
        return exhaustive_programs(
            config.space(), config.max_depth, config.loops, config.expr_depth
        )
    if config.mode == "random":
        return random_programs(config)
    raise ValueError(f"unknown generator mode {config.mode!r}")


def all_predicates(space: StateSpace) -> Iterator[Predicate]:
    """Every subset of the state space, by enumeration index."""
    if space.size > 20:
        raise ValueError("predicate enumeration is limited to 2^20 subsets")
    for bits in range(1 << space.size):
        yield Predicate(space, bits)


def random_predicate(rng: random.Random, space: StateSpace) -> Predicate:
    return Predicate(space, rng.randrange(1 << space.size))
