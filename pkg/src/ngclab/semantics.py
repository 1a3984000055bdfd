"""Program meaning three ways: collecting semantics, a small-step
configuration graph (the only place divergence is observable), and the
relational denotation derived from the collecting semantics.

The graph is what decides may-divergence: on a finite, finitely branching
graph an infinite execution exists from a configuration iff that
configuration can reach a node lying on a cycle (a lasso).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceededError
from .relations import Relation
from .space import Predicate, StateSpace
from .syntax import (
    Assign,
    Choice,
    Diverge,
    Ite,
    Program,
    Seq,
    Skip,
    While,
    eval_expr,
    eval_guard,
    guard_to_predicate,
)

DEFAULT_NODE_BUDGET = 10**6


@lru_cache(maxsize=65536)
def _assign_successors(var: str, expr, space: StateSpace) -> tuple[int, ...]:
    # assignment is a total function on states; tabulate it once
    out = []
    for i in range(space.size):
        state = space.state(i)
        out.append(state.set(var, eval_expr(expr, state)).index)
    return tuple(out)


def _collect_bits(p: Program, bits: int, space: StateSpace) -> int:
    if isinstance(p, Skip):
        return bits
    if isinstance(p, Diverge):
        return 0
    if isinstance(p, Assign):
        succ = _assign_successors(p.var, p.expr, space)
        acc = 0
        i = 0
        rest = bits
        while rest:
            if rest & 1:
                acc |= 1 << succ[i]
            rest >>= 1
            i += 1
        return acc
    if isinstance(p, Seq):
        return _collect_bits(p.second, _collect_bits(p.first, bits, space), space)
    if isinstance(p, Choice):
        return _collect_bits(p.left, bits, space) | _collect_bits(p.right, bits, space)
    if isinstance(p, Ite):
        g = guard_to_predicate(p.guard, space).bits
        return (
            _collect_bits(p.then, bits & g, space)
            | _collect_bits(p.orelse, bits & ~g & space.full_mask, space)
        )
    if isinstance(p, While):
        g = guard_to_predicate(p.guard, space).bits
        x = 0
        while True:
            nxt = bits | _collect_bits(p.body, x & g, space)
            if nxt == x:
                break
            x = nxt
        return x & ~g & space.full_mask
    raise TypeError(f"not a program: {p!r}")


def collecting(p: Program, initial: Predicate) -> Predicate:
    """All final states reachable from the initial set; loops by least fixpoint."""
    space = initial.space
    return Predicate(space, _collect_bits(p, initial.bits, space))


def inverse(p: Program, target: Predicate) -> Predicate:
    """States from which some execution of p ends in the target set."""
    space = target.space
    bits = 0
    for i in range(space.size):
        if _collect_bits(p, 1 << i, space) & target.bits:
            bits |= 1 << i
    return Predicate(space, bits)


def denote_relation(p: Program, space: StateSpace) -> Relation:
    """Initial-to-final state relation; branching divergence is invisible here."""
    rows = tuple(_collect_bits(p, 1 << i, space) for i in range(space.size))
    return Relation(space.size, rows)


# --- small-step configuration graph ----------------------------------------

TERMINAL = None  # residual of a finished computation


@dataclass(frozen=True)
class Configuration:
    residual: Program | None
    state_index: int

    @property
    def is_terminal(self) -> bool:
        return self.residual is None


def _step(residual: Program, idx: int, space: StateSpace) -> list[Configuration]:
    """One-step successors; choice branches without consuming a state change."""
    if isinstance(residual, Skip):
        return [Configuration(TERMINAL, idx)]
    if isinstance(residual, Diverge):
        return [Configuration(residual, idx)]
    if isinstance(residual, Assign):
        succ = _assign_successors(residual.var, residual.expr, space)
        return [Configuration(TERMINAL, succ[idx])]
    if isinstance(residual, Seq):
        out = []
        for conf in _step(residual.first, idx, space):
            if conf.is_terminal:
                out.append(Configuration(residual.second, conf.state_index))
            else:
                out.append(Configuration(Seq(conf.residual, residual.second), conf.state_index))
        return out
    if isinstance(residual, Choice):
        return [
            Configuration(residual.left, idx),
            Configuration(residual.right, idx),
        ]
    if isinstance(residual, Ite):
        taken = residual.then if eval_guard(residual.guard, space.state(idx)) else residual.orelse
        return [Configuration(taken, idx)]
    if isinstance(residual, While):
        if eval_guard(residual.guard, space.state(idx)):
            return [Configuration(Seq(residual.body, residual), idx)]
        return [Configuration(TERMINAL, idx)]
    raise TypeError(f"not a program: {residual!r}")


@dataclass
class TransitionGraph:
    space: StateSpace
    nodes: list[Configuration]
    edges: dict[Configuration, tuple[Configuration, ...]]
    seeds: dict[int, Configuration]

    def successors(self, conf: Configuration) -> tuple[Configuration, ...]:
        return self.edges.get(conf, ())

    def terminal_states(self, seed_index: int) -> Predicate:
        """Final states reachable from one seed, read off the graph."""
        start = self.seeds[seed_index]
        seen = {start}
        queue = deque([start])
        bits = 0
        while queue:
            conf = queue.popleft()
            if conf.is_terminal:
                bits |= 1 << conf.state_index
                continue
            for nxt in self.edges[conf]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return Predicate(self.space, bits)

    def cyclic_nodes(self) -> set[Configuration]:
        """Nodes lying on a cycle, via iterative DFS with an on-stack marker."""
        color: dict[Configuration, int] = {}  # 1 = on stack, 2 = done
        cyclic: set[Configuration] = set()
        for root in self.nodes:
            if color.get(root):
                continue
            stack: list[tuple[Configuration, int]] = [(root, 0)]
            while stack:
                conf, child = stack[-1]
                if child == 0:
                    color[conf] = 1
                succs = self.edges.get(conf, ())
                if child < len(succs):
                    stack[-1] = (conf, child + 1)
                    nxt = succs[child]
                    if color.get(nxt) == 1:
                        cyclic.add(nxt)
                    elif not color.get(nxt):
                        stack.append((nxt, 0))
                else:
                    color[conf] = 2
                    stack.pop()
        return cyclic

    def can_reach(self, targets: set[Configuration]) -> set[Configuration]:
        """All nodes with a path into the target set (reverse reachability)."""
        preds: dict[Configuration, list[Configuration]] = {}
        for conf, succs in self.edges.items():
            for nxt in succs:
                preds.setdefault(nxt, []).append(conf)
        seen = set(targets)
        queue = deque(targets)
        while queue:
            conf = queue.popleft()
            for prev in preds.get(conf, ()):
                if prev not in seen:
                    seen.add(prev)
                    queue.append(prev)
        return seen

    def to_dot(self) -> str:
        def label(conf: Configuration) -> str:
            from .syntax import pretty_program

            state = self.space.state(conf.state_index)
            if conf.is_terminal:
                return f"end {state!r}"
            return f"{pretty_program(conf.residual)} | {state!r}"

        ids = {conf: f"n{i}" for i, conf in enumerate(self.nodes)}
        lines = ["digraph configurations {"]
        for conf in self.nodes:
            shape = "doublecircle" if conf.is_terminal else "box"
            lines.append(f'  {ids[conf]} [shape={shape}, label="{label(conf)}"];')
        for conf in self.nodes:
            for nxt in self.edges.get(conf, ()):
                lines.append(f"  {ids[conf]} -> {ids[nxt]};")
        lines.append("}")
        return "\n".join(lines)


def build_graph(
    p: Program,
    seeds: Predicate,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> TransitionGraph:
    """All configurations reachable from seeding p on each seed state."""
    space = seeds.space
    seed_map = {i: Configuration(p, i) for i in seeds.indices()}
    nodes: list[Configuration] = []
    edges: dict[Configuration, tuple[Configuration, ...]] = {}
    seen: set[Configuration] = set()
    queue = deque()
    for conf in seed_map.values():
        if conf not in seen:
            seen.add(conf)
            queue.append(conf)
    while queue:
        conf = queue.popleft()
        nodes.append(conf)
        if len(nodes) > node_budget:
            raise BudgetExceededError(
                f"configuration graph exceeded {node_budget} nodes"
            )
        if conf.is_terminal:
            continue
        succs = tuple(_step(conf.residual, conf.state_index, space))
        edges[conf] = succs
        for nxt in succs:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return TransitionGraph(space, nodes, edges, seed_map)


def may_diverge(
    p: Program,
    space: StateSpace,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Predicate:
    """States admitting an infinite execution: the seed reaches a lasso."""
    graph = build_graph(p, Predicate.universe(space), node_budget)
    divergent = graph.can_reach(graph.cyclic_nodes())
    bits = 0
    for i, conf in graph.seeds.items():
        if conf in divergent:
            bits |= 1 << i
    return Predicate(space, bits)


def must_diverge(p: Program, space: StateSpace) -> Predicate:
    """States with an empty image: every execution fails to terminate."""
    bits = 0
    for i in range(space.size):
        if _collect_bits(p, 1 << i, space) == 0:
            bits |= 1 << i
    return Predicate(space, bits)


# --- cached per-program profile ---------------------------------------------

@dataclass(frozen=True)
class Profile:
    """Everything the transformer oracles need, computed once per program."""

    space: StateSpace
    relation: Relation
    inverse_relation: Relation
    may_div: int
    must_div: int

    @property
    def reach(self) -> int:
        return self.relation.codomain_bits()


@lru_cache(maxsize=1 << 18)
def profile(p: Program, space: StateSpace) -> Profile:
    rel = denote_relation(p, space)
    may = may_diverge(p, space).bits
    must = 0
    for i, row in enumerate(rel.rows):
        if row == 0:
            must |= 1 << i
    return Profile(space, rel, rel.converse(), may, must)
