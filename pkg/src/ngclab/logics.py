"""The triple logics: eighteen ways to read a (pre, program, post) triple.

Sixteen arise from bounding each transformer from below or above; two more
bound the union and the intersection of the angelic weakest pre and the
demonic weakest liberal pre.  Also here: the assumption classifiers the
collapse theorems filter on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .semantics import profile
from .space import Predicate, StateSpace
from .syntax import Choice, Ite, Program, Seq, While, pretty_program
from .transformers import TransformerKind, oracle_transform


class Bound(Enum):
    LB = "lb"  # pre- or postcondition below the transformer result
    UB = "ub"  # transformer result below the pre- or postcondition


@dataclass(frozen=True)
class LogicId:
    name: str                      # stable identifier, e.g. "awp-lb"
    kind: Optional[TransformerKind]  # None for the union/intersection logics
    bound: Bound
    colloquial: Optional[str] = None
    equation: Optional[str] = None   # linked catalog EquationId, if expressible

    def __repr__(self) -> str:
        return f"LogicId({self.name})"


def _mk(kind: TransformerKind, bound: Bound, colloquial=None, equation=None) -> LogicId:
    return LogicId(f"{kind.value}-{bound.value}", kind, bound, colloquial, equation)


AWP_LB = _mk(TransformerKind.AWP, Bound.LB, "Lisbon logic (angelic total correctness)", "LISBON")
DWP_LB = _mk(TransformerKind.DWP, Bound.LB, "Hoare logic (total correctness)")
AWLP_LB = _mk(TransformerKind.AWLP, Bound.LB, "angelic partial correctness")
DWLP_LB = _mk(TransformerKind.DWLP, Bound.LB, "Hoare logic (partial correctness)", "PARTIAL_CORRECTNESS")
AWP_UB = _mk(TransformerKind.AWP, Bound.UB, "partial incorrectness (necessary preconditions)", "DEMONIC_PARTIAL_INCORRECTNESS")
DWP_UB = _mk(TransformerKind.DWP, Bound.UB)
AWLP_UB = _mk(TransformerKind.AWLP, Bound.UB)
DWLP_UB = _mk(TransformerKind.DWLP, Bound.UB, None, "DWLP_UB")
ASP_LB = _mk(TransformerKind.ASP, Bound.LB, "incorrectness logic", "INCORRECTNESS")
DSP_LB = _mk(TransformerKind.DSP, Bound.LB, "demonic incorrectness", "DEMONIC_INCORRECTNESS")
ASLP_LB = _mk(TransformerKind.ASLP, Bound.LB, "angelic partial incorrectness", "ANGELIC_PARTIAL_INCORRECTNESS")
DSLP_LB = _mk(TransformerKind.DSLP, Bound.LB, "partial incorrectness", "DEMONIC_PARTIAL_INCORRECTNESS")
ASP_UB = _mk(TransformerKind.ASP, Bound.UB, "Hoare logic (partial correctness)", "PARTIAL_CORRECTNESS")
DSP_UB = _mk(TransformerKind.DSP, Bound.UB, None, "DSP_UB")
ASLP_UB = _mk(TransformerKind.ASLP, Bound.UB)
DSLP_UB = _mk(TransformerKind.DSLP, Bound.UB, None, "DSLP_UB")
UNION_LOGIC = LogicId("union-lb", None, Bound.LB, "in-between logic", "IN_BETWEEN")
INTERSECTION_LOGIC = LogicId("intersection-lb", None, Bound.LB, "outcome conjunction")

ALL_LOGICS: tuple[LogicId, ...] = (
    AWP_LB, DWP_LB, AWLP_LB, DWLP_LB,
    AWP_UB, DWP_UB, AWLP_UB, DWLP_UB,
    ASP_LB, DSP_LB, ASLP_LB, DSLP_LB,
    ASP_UB, DSP_UB, ASLP_UB, DSLP_UB,
    UNION_LOGIC, INTERSECTION_LOGIC,
)

_BY_NAME = {logic.name: logic for logic in ALL_LOGICS}

# colloquial aliases accepted on the command line
ALIASES = {
    "lisbon": AWP_LB,
    "total-correctness": DWP_LB,
    "partial-correctness": DWLP_LB,
    "angelic-partial-correctness": AWLP_LB,
    "incorrectness": ASP_LB,
    "demonic-incorrectness": DSP_LB,
    "partial-incorrectness": DSLP_LB,
    "angelic-partial-incorrectness": ASLP_LB,
    "necessary-preconditions": AWP_UB,
    "in-between": UNION_LOGIC,
    "outcome": INTERSECTION_LOGIC,
}


def logic_by_name(name: str) -> LogicId:
    if name in _BY_NAME:
        return _BY_NAME[name]
    if name in ALIASES:
        return ALIASES[name]
    raise KeyError(f"unknown logic {name!r}")


# contrapositive partners: holds(L, (b, p, c)) iff holds(partner(L), (~b, p, ~c))
CONTRAPOSITIVE = {
    AWP_LB: DWLP_UB, DWLP_UB: AWP_LB,
    DWP_LB: AWLP_UB, AWLP_UB: DWP_LB,
    AWLP_LB: DWP_UB, DWP_UB: AWLP_LB,
    DWLP_LB: AWP_UB, AWP_UB: DWLP_LB,
    ASP_LB: DSLP_UB, DSLP_UB: ASP_LB,
    DSP_LB: ASLP_UB, ASLP_UB: DSP_LB,
    ASLP_LB: DSP_UB, DSP_UB: ASLP_LB,
    DSLP_LB: ASP_UB, ASP_UB: DSLP_LB,
}

# Galois partners: equivalent on every triple
GALOIS = {DWLP_LB: ASP_UB, ASP_UB: DWLP_LB, AWP_UB: DSLP_LB, DSLP_LB: AWP_UB}


@dataclass(frozen=True)
class Triple:
    pre: Predicate
    program: Program
    post: Predicate

    def __post_init__(self):
        if self.pre.space != self.post.space:
            raise ValueError("pre- and postcondition live in different spaces")

    @property
    def space(self) -> StateSpace:
        return self.pre.space

    def negated(self) -> "Triple":
        return Triple(~self.pre, self.program, ~self.post)

    def __repr__(self) -> str:
        return f"{{{self.pre!r}}} {pretty_program(self.program)} {{{self.post!r}}}"


def holds(logic: LogicId, t: Triple) -> bool:
    """Validity of the triple under the logic's subset condition."""
    if logic is UNION_LOGIC or logic is INTERSECTION_LOGIC:
        awp = oracle_transform(TransformerKind.AWP, t.program, t.post)
        dwlp = oracle_transform(TransformerKind.DWLP, t.program, t.post)
        target = awp | dwlp if logic is UNION_LOGIC else awp & dwlp
        return t.pre <= target
    kind = logic.kind
    if kind.backward:
        result = oracle_transform(kind, t.program, t.post)
        return t.pre <= result if logic.bound is Bound.LB else result <= t.pre
    result = oracle_transform(kind, t.program, t.pre)
    return t.post <= result if logic.bound is Bound.LB else result <= t.post


# --- assumption classifiers ----------------------------------------------------

@dataclass(frozen=True)
class Flag:
    holds: bool
    witness: object = None  # a State or a program fragment when holds is False


@dataclass(frozen=True)
class AssumptionSet:
    termination: Optional[Flag] = None
    reachability: Optional[Flag] = None
    determinism: Optional[Flag] = None
    reversibility: Optional[Flag] = None
    no_branching_divergence: Optional[Flag] = None


def syntactic_choice(p: Program) -> Optional[Program]:
    """The first nondeterministic choice subterm, in preorder, if any."""
    if isinstance(p, Choice):
        return p
    if isinstance(p, Seq):
        return syntactic_choice(p.first) or syntactic_choice(p.second)
    if isinstance(p, Ite):
        return syntactic_choice(p.then) or syntactic_choice(p.orelse)
    if isinstance(p, While):
        return syntactic_choice(p.body)
    return None


def semantic_determinism(p: Program, space: StateSpace) -> Flag:
    """At most one outcome per state: image a singleton, or certain divergence.

    Exploratory helper; the determinism collapse theorem filters on the
    syntactic notion instead.
    """
    prof = profile(p, space)
    for i, row in enumerate(prof.relation.rows):
        if row.bit_count() > 1:
            return Flag(False, space.state(i))
        if prof.may_div >> i & 1 and row != 0:
            return Flag(False, space.state(i))
    return Flag(True)


def classify(
    p: Program,
    space: StateSpace,
    scope_pre: Optional[Predicate] = None,
    scope_post: Optional[Predicate] = None,
) -> AssumptionSet:
    """Evaluate the five collapse assumptions, scoped to the states of
    interest: termination and branching divergence over the precondition
    scope, reachability and reversibility over the postcondition scope."""
    prof = profile(p, space)
    pre_bits = space.full_mask if scope_pre is None else scope_pre.bits
    post_bits = space.full_mask if scope_post is None else scope_post.bits

    diverging = prof.may_div & pre_bits
    termination = Flag(diverging == 0,
                       None if diverging == 0 else space.state(_low_bit(diverging)))

    unreached = post_bits & ~prof.reach & space.full_mask
    reachability = Flag(unreached == 0,
                        None if unreached == 0 else space.state(_low_bit(unreached)))

    offending = syntactic_choice(p)
    determinism = Flag(offending is None, offending)

    irreversible = 0
    for i in range(space.size):
        if post_bits >> i & 1 and prof.inverse_relation.rows[i].bit_count() > 1:
            irreversible |= 1 << i
            break
    reversibility = Flag(irreversible == 0,
                         None if irreversible == 0 else space.state(_low_bit(irreversible)))

    branching = (prof.may_div & ~prof.must_div) & pre_bits
    nbd = Flag(branching == 0,
               None if branching == 0 else space.state(_low_bit(branching)))

    return AssumptionSet(termination, reachability, determinism, reversibility, nbd)


def _low_bit(bits: int) -> int:
    return (bits & -bits).bit_length() - 1
