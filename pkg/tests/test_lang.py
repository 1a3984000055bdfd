"""State space, predicate, parser, and pretty-printer tests."""

import pytest
from hypothesis import given, settings, strategies as st

from ngclab import (
    NgclSyntaxError,
    Predicate,
    SpaceCapError,
    StateSpace,
    UnknownVariableError,
    guard_to_predicate,
    parse_guard,
    parse_module,
    parse_program,
    pretty_guard,
    pretty_program,
)
from ngclab.generators import random_guard, random_program
from ngclab.syntax import Assign, Choice, Cmp, Const, Skip, Var, While, BinExpr

import random


SPACE_X3 = StateSpace(("x",), 3)
SPACE_XY2 = StateSpace(("x", "y"), 2)


class TestStateSpace:
    def test_size_and_enumeration_bijection(self):
        assert SPACE_XY2.size == 4
        seen = set()
        for i in range(SPACE_XY2.size):
            state = SPACE_XY2.state(i)
            assert state.index == i
            seen.add(state.values)
        assert seen == {(0, 0), (0, 1), (1, 0), (1, 1)}

    def test_enumeration_is_lexicographic(self):
        values = [SPACE_XY2.state(i).values for i in range(4)]
        assert values == sorted(values)

    def test_substitution_changes_only_target(self):
        state = SPACE_XY2.state(1)  # x=0 y=1
        changed = state.set("x", 1)
        assert changed["x"] == 1
        assert changed["y"] == state["y"]

    def test_cap_is_enforced(self):
        with pytest.raises(SpaceCapError):
            StateSpace(("a", "b", "c"), 256)  # 16M states

    def test_env_var_lowers_cap(self, monkeypatch):
        monkeypatch.setenv("NGCL_STATE_CAP", "8")
        with pytest.raises(SpaceCapError):
            StateSpace(("x",), 9)
        StateSpace(("x",), 8)

    def test_duplicate_variables_rejected(self):
        with pytest.raises(ValueError):
            StateSpace(("x", "x"), 2)


class TestPredicate:
    def test_complement_involutive(self):
        pred = Predicate.from_indices(SPACE_X3, [0, 2])
        assert ~~pred == pred

    def test_lattice_bounds(self):
        empty = Predicate.empty(SPACE_X3)
        full = Predicate.universe(SPACE_X3)
        pred = Predicate.from_indices(SPACE_X3, [1])
        assert empty <= pred <= full

    def test_cross_space_operations_rejected(self):
        with pytest.raises(ValueError):
            Predicate.universe(SPACE_X3) & Predicate.universe(SPACE_XY2)


class TestGuardToPredicate:
    def test_true_is_everything(self):
        assert guard_to_predicate(parse_guard("true", SPACE_X3), SPACE_X3) \
            == Predicate.universe(SPACE_X3)

    def test_equality_picks_one_state(self):
        pred = guard_to_predicate(parse_guard("x = 0", SPACE_X3), SPACE_X3)
        assert pred == Predicate.from_indices(SPACE_X3, [0])

    def test_less_than_on_two_vars(self):
        # enumerated by hand over the four states of vars x, y mod 2:
        # only x=0, y=1 satisfies x < y
        pred = guard_to_predicate(parse_guard("x < y", SPACE_XY2), SPACE_XY2)
        assert [s.values for s in pred.states()] == [(0, 1)]

    def test_negation_is_complement(self):
        g = parse_guard("x = 1 || x = 2", SPACE_X3)
        neg = parse_guard("!(x = 1 || x = 2)", SPACE_X3)
        assert guard_to_predicate(neg, SPACE_X3) == ~guard_to_predicate(g, SPACE_X3)


class TestParser:
    def test_skip(self):
        assert parse_program("skip", SPACE_X3) == Skip()

    def test_choice_of_assignments(self):
        got = parse_program("{ x := 0 } [] { x := 1 }", SPACE_X3)
        assert got == Choice(Assign("x", Const(0)), Assign("x", Const(1)))

    def test_while_with_guard(self):
        got = parse_program("while x != 0 { x := x - 1 }", SPACE_X3)
        expected = While(
            Cmp("!=", Var("x"), Const(0)),
            Assign("x", BinExpr("-", Var("x"), Const(1))),
        )
        assert got == expected

    def test_comments_and_whitespace(self):
        text = "# a comment\nskip ; # trailing\n  x := 1"
        got = parse_program(text, SPACE_X3)
        assert got == parse_program("skip ; x := 1", SPACE_X3)

    def test_syntax_error_carries_position(self):
        with pytest.raises(NgclSyntaxError) as info:
            parse_program("skip ;\n while { skip }", SPACE_X3)
        assert info.value.line == 2

    def test_unknown_variable_is_named(self):
        with pytest.raises(UnknownVariableError) as info:
            parse_program("y := 0", SPACE_X3)
        assert info.value.name == "y"

    def test_module_header(self):
        space, program = parse_module("vars x, y mod 4\nx := y")
        assert space == StateSpace(("x", "y"), 4)
        assert program == Assign("x", Var("y"))

    def test_trailing_garbage_rejected(self):
        with pytest.raises(NgclSyntaxError):
            parse_program("skip skip", SPACE_X3)


class TestRoundTrip:
    @settings(max_examples=300, deadline=None)
    @given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=1, max_value=5))
    def test_program_pretty_parse_round_trip(self, seed, depth):
        """parse(pretty(p)) is structurally equal to p on random programs."""
        rng = random.Random(seed)
        program = random_program(rng, SPACE_XY2, depth, loops=True)
        text = pretty_program(program)
        assert parse_program(text, SPACE_XY2) == program

    @settings(max_examples=300, deadline=None)
    @given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=1, max_value=4))
    def test_guard_pretty_parse_round_trip(self, seed, depth):
        """parse(pretty(g)) is structurally equal to g on random guards."""
        rng = random.Random(seed)
        guard = random_guard(rng, SPACE_XY2, depth)
        assert parse_guard(pretty_guard(guard), SPACE_XY2) == guard
