"""ngclab: a finite-state laboratory for guarded-command program logics.

Programs in a small nondeterministic language get three interchangeable
meanings (collecting semantics, configuration graph, relation); eight
weakest-pre / strongest-post transformers are computed both from the
semantics and by structural rules; eighteen triple logics, a relational
Kleene algebra with top and tests, a theorem survey, and a counterexample
engine sit on top.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    InvariantError,
    MalformedTermError,
    NgclError,
    NgclSyntaxError,
    SpaceCapError,
    UnknownVariableError,
)
from .generators import GeneratorConfig, all_predicates, generate_programs
from .logics import (
    ALL_LOGICS,
    AssumptionSet,
    Bound,
    LogicId,
    Triple,
    classify,
    holds,
    logic_by_name,
    semantic_determinism,
)
from .parser import parse_guard, parse_module, parse_program
from .relations import Relation
from .search import SearchConfig, SearchResult, appendix_c_claims, find_counterexample
from .semantics import (
    build_graph,
    collecting,
    denote_relation,
    inverse,
    may_diverge,
    must_diverge,
)
from .space import Predicate, State, StateSpace
from .syntax import guard_to_predicate, pretty_guard, pretty_program
from .theorems import THEOREM_IDS, CorpusConfig, Verdict, check_theorem, corpus_preset
from .topkat import (
    EQUATIONS,
    check_equation,
    codomain,
    compile_kat,
    domain,
    eval_kat,
)
from .transformers import (
    TransformerKind,
    coreachability_class,
    inductive_transform,
    oracle_transform,
    reachability_class,
)
