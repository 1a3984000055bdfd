"""Counterexample search over canonically enumerated programs and predicates.

Claims are negative statements: two triple logics said to differ, a
transformer said not to be a combination of others, a property said to be
invisible to the relational denotation.  The engine enumerates candidate
triples smallest-first and reports the first witness, or that the budget ran
out, or that the whole candidate space was exhausted.  The three outcomes are
distinct: for a true equivalence (a real Galois connection) no budget ever
suffices, and the caller needs to know the search was honest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .generators import all_predicates, exhaustive_programs
from .logics import (
    ASP_LB, ASP_UB, ASLP_LB, ASLP_UB, AWP_LB, AWP_UB, AWLP_LB, AWLP_UB,
    DSP_LB, DSP_UB, DSLP_LB, DSLP_UB, DWP_LB, DWP_UB, DWLP_LB, DWLP_UB,
    INTERSECTION_LOGIC,
    LogicId, syntactic_choice,
)
from .semantics import profile
from .space import Predicate, StateSpace
from .syntax import Program, pretty_program
from .theorems import _equation_cached, _logic_holds
from .transformers import TransformerKind, _oracle_bits

FOUND = "found"
BUDGET_EXHAUSTED = "budget-exhausted"
SPACE_EXHAUSTED = "space-exhausted"


@dataclass(frozen=True)
class SearchConfig:
    """Search ladder: each rung is a (variables, modulus) space searched with
    exhaustively enumerated programs up to the depth bound."""

    spaces: tuple[tuple[tuple[str, ...], int], ...] = (
        (("x",), 2),
        (("x",), 3),
    )
    max_depth: int = 3
    loops: bool = False
    budget: int = 10**5


@dataclass
class SearchResult:
    claim: str
    outcome: str
    witness: Optional[dict] = None
    candidates: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome == FOUND

    def to_jsonable(self) -> dict:
        out = {"claim": self.claim, "outcome": self.outcome,
               "candidates": self.candidates}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# --- the catalog of pairwise non-equivalent logic claims -----------------------

# seven representative logics plus their contrapositives; the two logics
# equivalent to one of these via an adjunction are deliberately absent
_BASE_LEGS = (
    ("dwlpLB", DWLP_LB),
    ("dwpLB", DWP_LB),
    ("awpLB", AWP_LB),
    ("awlpLB", AWLP_LB),
    ("aspLB", ASP_LB),
    ("dspLB", DSP_LB),
    ("aslpLB", ASLP_LB),
)
_CONTRA_OF = {
    "dwlpLB": AWP_UB,
    "dwpLB": AWLP_UB,
    "awpLB": DWLP_UB,
    "awlpLB": DWP_UB,
    "aspLB": DSLP_UB,
    "dspLB": ASLP_UB,
    "aslpLB": DSP_UB,
}

LEGS: dict[str, LogicId] = {}
for _name, _logic in _BASE_LEGS:
    LEGS[_name] = _logic
for _name, _logic in _CONTRA_OF.items():
    LEGS[f"{_name}-contra"] = _logic
# direct bound-direction spellings are accepted too
for _logic in (AWP_UB, AWLP_UB, DWLP_UB, DWP_UB, DSLP_UB, ASLP_UB, DSP_UB):
    LEGS[_logic.name.replace("-ub", "UB")] = _logic


def appendix_c_claims() -> list[str]:
    """All 91 pairwise-distinctness claims over the seven representative
    logics and their seven contrapositives (stable `appendixC:` ids)."""
    names = [name for name, _ in _BASE_LEGS]
    names += [f"{name}-contra" for name, _ in _BASE_LEGS]
    return [f"appendixC:{a}-vs-{b}" for a, b in combinations(names, 2)]


def _candidate_triples(
    config: SearchConfig,
) -> Iterator[tuple[StateSpace, Program, Predicate, Predicate]]:
    for variables, modulus in config.spaces:
        space = StateSpace(variables, modulus)
        preds = list(all_predicates(space))
        for p in exhaustive_programs(space, config.max_depth, config.loops):
            for b in preds:
                for c in preds:
                    yield space, p, b, c


def _triple_witness(space, p, b, c, detail: str, **extra) -> dict:
    out = {
        "space": f"vars {', '.join(space.variables)} mod {space.modulus}",
        "variables": list(space.variables),
        "modulus": space.modulus,
        "program": pretty_program(p),
        "pre": repr(b),
        "pre_indices": sorted(b.indices()),
        "post": repr(c),
        "post_indices": sorted(c.indices()),
        "detail": detail,
    }
    out.update(extra)
    return out


def _search_logic_pair(
    claim: str, left: LogicId, right: LogicId, config: SearchConfig,
    program_filter=None,
) -> SearchResult:
    candidates = 0
    for space, p, b, c in _candidate_triples(config):
        if candidates >= config.budget:
            return SearchResult(claim, BUDGET_EXHAUSTED, None, candidates)
        candidates += 1
        prof = profile(p, space)
        if program_filter is not None and not program_filter(p, prof):
            continue
        lv = _logic_holds(prof, left, b.bits, c.bits)
        rv = _logic_holds(prof, right, b.bits, c.bits)
        if lv != rv:
            witness = _triple_witness(
                space, p, b, c,
                f"{left.name} is {lv} but {right.name} is {rv}",
                left=left.name, right=right.name,
            )
            return SearchResult(claim, FOUND, witness, candidates)
    return SearchResult(claim, SPACE_EXHAUSTED, None, candidates)


def _search_combination_gap(claim: str, config: SearchConfig) -> SearchResult:
    """Transformer-level gaps: dwp vs awp-and-dwlp, awlp vs awp-or-dwlp."""
    want_intersection = claim == "dwp-neq-intersection"
    candidates = 0
    for variables, modulus in config.spaces:
        space = StateSpace(variables, modulus)
        full = space.full_mask
        preds = list(all_predicates(space))
        for p in exhaustive_programs(space, config.max_depth, config.loops):
            prof = profile(p, space)
            for c in preds:
                if candidates >= config.budget:
                    return SearchResult(claim, BUDGET_EXHAUSTED, None, candidates)
                candidates += 1
                awp = _oracle_bits(TransformerKind.AWP, prof, c.bits)
                dwlp = _oracle_bits(TransformerKind.DWLP, prof, c.bits)
                if want_intersection:
                    lhs = _oracle_bits(TransformerKind.DWP, prof, c.bits)
                    rhs = awp & dwlp
                    detail = "dwp differs from awp intersect dwlp"
                else:
                    lhs = _oracle_bits(TransformerKind.AWLP, prof, c.bits)
                    rhs = awp | dwlp
                    detail = "awlp differs from awp union dwlp"
                diff = lhs ^ rhs
                if diff:
                    idx = (diff & -diff).bit_length() - 1
                    witness = _triple_witness(
                        space, p, Predicate(space, 1 << idx), c, detail,
                        state=repr(space.state(idx)), state_index=idx,
                    )
                    return SearchResult(claim, FOUND, witness, candidates)
    return SearchResult(claim, SPACE_EXHAUSTED, None, candidates)


def _search_relational_blindspot(claim: str, config: SearchConfig) -> SearchResult:
    """Two programs with one relational denotation but different demonic
    total-correctness verdicts."""
    candidates = 0
    for variables, modulus in config.spaces:
        space = StateSpace(variables, modulus)
        preds = list(all_predicates(space))
        by_relation: dict = {}
        for p in exhaustive_programs(space, config.max_depth, config.loops):
            prof = profile(p, space)
            others = by_relation.setdefault(prof.relation, [])
            for q, qprof in others:
                for c in preds:
                    for b in preds:
                        if candidates >= config.budget:
                            return SearchResult(claim, BUDGET_EXHAUSTED, None, candidates)
                        candidates += 1
                        v1 = b.bits & ~_oracle_bits(TransformerKind.DWP, qprof, c.bits) == 0
                        v2 = b.bits & ~_oracle_bits(TransformerKind.DWP, prof, c.bits) == 0
                        if v1 != v2:
                            witness = {
                                "space": f"vars {', '.join(space.variables)} mod {space.modulus}",
                                "variables": list(space.variables),
                                "modulus": space.modulus,
                                "program_a": pretty_program(q),
                                "program_b": pretty_program(p),
                                "pre": repr(b),
                                "pre_indices": sorted(b.indices()),
                                "post": repr(c),
                                "post_indices": sorted(c.indices()),
                                "detail": (
                                    "equal relational denotations, "
                                    f"total-correctness verdicts {v1} vs {v2}"
                                ),
                            }
                            return SearchResult(claim, FOUND, witness, candidates)
            others.append((p, prof))
    return SearchResult(claim, SPACE_EXHAUSTED, None, candidates)


def _search_outcome_gap(claim: str, config: SearchConfig) -> SearchResult:
    """The two-equation outcome system versus the pointwise intersection logic."""
    candidates = 0
    for space, p, b, c in _candidate_triples(config):
        if candidates >= config.budget:
            return SearchResult(claim, BUDGET_EXHAUSTED, None, candidates)
        candidates += 1
        prof = profile(p, space)
        system = _equation_cached("OUTCOME_CONJUNCTION", prof.relation,
                                  b.bits, c.bits, space)
        logic = _logic_holds(prof, INTERSECTION_LOGIC, b.bits, c.bits)
        if system != logic:
            witness = _triple_witness(
                space, p, b, c,
                f"equation system says {system}, subset condition says {logic}",
            )
            return SearchResult(claim, FOUND, witness, candidates)
    return SearchResult(claim, SPACE_EXHAUSTED, None, candidates)


def _reversible(prof) -> bool:
    return all(row.bit_count() <= 1 for row in prof.inverse_relation.rows)


def find_counterexample(claim: str, config: SearchConfig | None = None) -> SearchResult:
    """Hunt for a witness refuting the claim; see the module docstring for
    the three possible outcomes."""
    config = config or SearchConfig()
    if claim == "dwp-neq-intersection" or claim == "awlp-neq-union":
        return _search_combination_gap(claim, config)
    if claim == "galois-pc":
        return _search_logic_pair(claim, DWLP_LB, ASP_UB, config)
    if claim == "galois-pi":
        return _search_logic_pair(claim, AWP_UB, DSLP_LB, config)
    if claim == "galois-awlp-dsp-det-rev":
        # the forced adjunction: deterministic plus reversible programs only
        return _search_logic_pair(
            claim, AWLP_LB, DSP_UB, config,
            program_filter=lambda p, prof: (
                syntactic_choice(p) is None and _reversible(prof)
            ),
        )
    if claim == "total-correctness-relational":
        return _search_relational_blindspot(claim, config)
    if claim == "outcome-vs-intersection":
        return _search_outcome_gap(claim, config)
    if claim.startswith("appendixC:"):
        body = claim[len("appendixC:"):]
        try:
            left_name, right_name = body.split("-vs-")
            left, right = LEGS[left_name], LEGS[right_name]
        except (ValueError, KeyError):
            raise KeyError(f"unknown catalog claim {claim!r}") from None
        return _search_logic_pair(claim, left, right, config)
    raise KeyError(f"unknown claim {claim!r}")


ALL_CLAIMS = (
    "dwp-neq-intersection",
    "awlp-neq-union",
    "galois-pc",
    "galois-pi",
    "galois-awlp-dsp-det-rev",
    "total-correctness-relational",
    "outcome-vs-intersection",
)
