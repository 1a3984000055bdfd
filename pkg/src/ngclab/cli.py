"""Command-line front end.

Exit codes are a stable contract: 0 the command succeeded and the checked
claim holds (or a counterexample was found, for the counterexample command),
1 the claim is false (or no counterexample turned up), 2 usage or input
error, 3 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import NgclError, NgclSyntaxError
from .logics import Triple, classify, holds, logic_by_name
from .parser import parse_guard, parse_module
from .search import SearchConfig, find_counterexample
from .space import Predicate
from .theorems import THEOREM_IDS, CorpusConfig, corpus_preset, run_survey
from .transformers import TransformerKind, inductive_transform, oracle_transform

USAGE_ERROR = 2
CLAIM_FALSE = 1
INTERNAL_ERROR = 3


def _load_program(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}")
    return parse_module(text)


def _render_predicate(pred: Predicate) -> str:
    if pred.is_empty:
        return "{} (no states)"
    states = ", ".join(repr(s) for s in pred.states())
    return f"{{{states}}} ({pred.count} of {pred.space.size} states)"


def _json_report(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def cmd_transform(args) -> int:
    space, program = _load_program(args.program)
    if args.mod is not None:
        space = type(space)(space.variables, args.mod)
    pred = guard_pred(args.pred, space)
    kind = TransformerKind(args.kind)
    engines = ("oracle", "inductive") if args.engine == "both" else (args.engine,)
    results = {}
    for engine in engines:
        fn = oracle_transform if engine == "oracle" else inductive_transform
        results[engine] = fn(kind, program, pred)
    if len(results) == 2 and results["oracle"] != results["inductive"]:
        print("engine disagreement:", file=sys.stderr)
        print(f"  oracle:    {_render_predicate(results['oracle'])}", file=sys.stderr)
        print(f"  inductive: {_render_predicate(results['inductive'])}", file=sys.stderr)
        return INTERNAL_ERROR
    value = next(iter(results.values()))
    print(_render_predicate(value))
    return 0


def guard_pred(text: str, space) -> Predicate:
    from .syntax import guard_to_predicate

    return guard_to_predicate(parse_guard(text, space), space)


def cmd_check(args) -> int:
    space, program = _load_program(args.program)
    logic = logic_by_name(args.logic)
    pre = guard_pred(args.pre, space)
    post = guard_pred(args.post, space)
    triple = Triple(pre, program, post)
    if holds(logic, triple):
        print(f"valid for {logic.name}")
        return 0
    # print a violating state: for lower bounds, a bound state outside the
    # transformer result; for upper bounds, a result state outside the bound
    witness = _violating_state(logic, triple)
    where = f" (witness {witness!r})" if witness is not None else ""
    print(f"invalid for {logic.name}{where}")
    return CLAIM_FALSE


def _violating_state(logic, triple):
    from .logics import Bound, INTERSECTION_LOGIC, UNION_LOGIC

    if logic in (UNION_LOGIC, INTERSECTION_LOGIC):
        awp = oracle_transform(TransformerKind.AWP, triple.program, triple.post)
        dwlp = oracle_transform(TransformerKind.DWLP, triple.program, triple.post)
        target = awp | dwlp if logic is UNION_LOGIC else awp & dwlp
        gap = triple.pre - target
    elif logic.kind.backward:
        result = oracle_transform(logic.kind, triple.program, triple.post)
        gap = triple.pre - result if logic.bound is Bound.LB else result - triple.pre
    else:
        result = oracle_transform(logic.kind, triple.program, triple.pre)
        gap = triple.post - result if logic.bound is Bound.LB else result - triple.post
    for state in gap.states():
        return state
    return None


def _corpus_from_args(args) -> CorpusConfig:
    overrides = {}
    if args.count is not None:
        overrides["count"] = args.count
    if args.seed is not None:
        overrides["seed"] = args.seed
        overrides["predicate_seed"] = args.seed
    return corpus_preset(args.corpus, **overrides)


def cmd_survey(args) -> int:
    corpus = _corpus_from_args(args)
    suite = list(THEOREM_IDS) if args.suite == "all" else args.suite.split(",")
    for theorem in suite:
        if theorem not in THEOREM_IDS:
            print(f"error: unknown theorem {theorem!r}", file=sys.stderr)
            return USAGE_ERROR
    seed = corpus.programs.seed
    verdicts = run_survey(suite, corpus)
    if args.format == "json":
        items = []
        for v in verdicts:
            item = v.to_jsonable()
            item.pop("stats", None)
            item["corpus"] = args.corpus
            item["seed"] = seed
            item["duration_ms"] = None
            item["version"] = __version__
            items.append(item)
        space = corpus.space()
        report = {
            "version": __version__,
            "command": "survey",
            "corpus": args.corpus,
            "space": f"vars {', '.join(space.variables)} mod {space.modulus}",
            "seed": seed,
            "items": items,
        }
        sys.stdout.write(_json_report(report))
    else:
        if corpus.programs.mode == "random":
            print(f"seed: {seed}")
        width = max(len(v.claim) for v in verdicts)
        for v in verdicts:
            mark = "pass" if v.holds else "FAIL"
            extra = ""
            if v.nonvacuity is not None:
                extra = "  [non-vacuous]"
            print(f"{v.claim:<{width}}  {mark}{extra}")
            if not v.holds and v.witness:
                print(f"  witness: {v.witness}")
    return 0 if all(v.holds for v in verdicts) else CLAIM_FALSE


def cmd_counterexample(args) -> int:
    config = SearchConfig(budget=args.budget)
    result = find_counterexample(args.claim, config)
    if args.format == "json":
        payload = result.to_jsonable()
        payload["version"] = __version__
        payload["command"] = "counterexample"
        payload["duration_ms"] = None
        sys.stdout.write(_json_report(payload))
    elif result.found:
        print(f"counterexample found after {result.candidates} candidates:")
        for key, value in result.witness.items():
            print(f"  {key}: {value}")
    else:
        reason = ("candidate space exhausted"
                  if result.outcome == "space-exhausted" else "none within budget")
        print(f"{reason} ({result.candidates} candidates)")
    return 0 if result.found else CLAIM_FALSE


def cmd_classify(args) -> int:
    from .syntax import Program, pretty_program

    space, program = _load_program(args.program)
    assumptions = classify(program, space)
    for name in ("termination", "reachability", "determinism",
                 "reversibility", "no_branching_divergence"):
        flag = getattr(assumptions, name)
        witness = flag.witness
        if isinstance(witness, Program):
            witness = pretty_program(witness)
        mark = "holds" if flag.holds else f"fails (witness {witness})"
        print(f"{name:<24} {mark}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ngclab",
        description="check triples, transformers, theorems, and equations "
                    "over finite guarded-command programs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("transform", help="apply a predicate transformer")
    p_tr.add_argument("--kind", required=True,
                      choices=[k.value for k in TransformerKind])
    p_tr.add_argument("--engine", default="oracle",
                      choices=["oracle", "inductive", "both"])
    p_tr.add_argument("--pred", required=True,
                      help="guard string; postcondition for backward kinds, "
                           "precondition for forward kinds")
    p_tr.add_argument("--mod", type=int, default=None,
                      help="override the modulus declared in the file header")
    p_tr.add_argument("program", help=".ngcl file with a vars header")
    p_tr.set_defaults(func=cmd_transform)

    p_ck = sub.add_parser("check", help="check a triple under a logic")
    p_ck.add_argument("--logic", required=True)
    p_ck.add_argument("--pre", required=True)
    p_ck.add_argument("--post", required=True)
    p_ck.add_argument("program")
    p_ck.set_defaults(func=cmd_check)

    p_sv = sub.add_parser("survey", help="run the theorem suite over a corpus")
    p_sv.add_argument("--suite", default="all",
                      help="'all' or a comma-separated list of theorem ids")
    p_sv.add_argument("--corpus", default="tiny",
                      choices=["tiny", "small-exhaustive", "loops"])
    p_sv.add_argument("--count", type=int, default=None,
                      help="program count for random corpora")
    p_sv.add_argument("--seed", type=int, default=None)
    p_sv.add_argument("--format", default="text", choices=["text", "json"])
    p_sv.set_defaults(func=cmd_survey)

    p_cx = sub.add_parser("counterexample", help="search for a witness to a claim")
    p_cx.add_argument("--claim", required=True)
    p_cx.add_argument("--budget", type=int, default=10**5)
    p_cx.add_argument("--format", default="text", choices=["text", "json"])
    p_cx.set_defaults(func=cmd_counterexample)

    p_cl = sub.add_parser("classify", help="evaluate the collapse assumptions")
    p_cl.add_argument("program")
    p_cl.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NgclSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (KeyError, ValueError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            if isinstance(exc.code, int):
                return exc.code
            print(exc.code, file=sys.stderr)
            return USAGE_ERROR
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except NgclError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
