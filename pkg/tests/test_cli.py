"""Command-line behavior: outputs, exit codes, and report determinism."""

import json

import pytest

from ngclab.cli import main


@pytest.fixture
def choice01(tmp_path):
    path = tmp_path / "choice01.ngcl"
    path.write_text("vars x mod 3\n{ x := 0 } [] { x := 1 }\n")
    return str(path)


@pytest.fixture
def loop_down(tmp_path):
    path = tmp_path / "loop_down.ngcl"
    path.write_text("vars x mod 3\nwhile x != 0 { x := x - 1 }\n")
    return str(path)


@pytest.fixture
def choice_diverge(tmp_path):
    path = tmp_path / "choice_diverge.ngcl"
    path.write_text("vars x mod 3\n{ x := 0 } [] { diverge }\n")
    return str(path)


@pytest.fixture
def assign0(tmp_path):
    path = tmp_path / "assign0.ngcl"
    path.write_text("vars x mod 2\nx := 0\n")
    return str(path)


class TestTransform:
    def test_awp_lists_all_states(self, choice01, capsys):
        assert main(["transform", "--kind", "awp", "--pred", "x = 0", choice01]) == 0
        out = capsys.readouterr().out
        assert "(3 of 3 states)" in out

    def test_dwp_of_true_on_terminating_loop(self, loop_down, capsys):
        assert main(["transform", "--kind", "dwp", "--pred", "true", loop_down]) == 0
        assert "(3 of 3 states)" in capsys.readouterr().out

    def test_asp_of_false_is_empty(self, tmp_path, capsys):
        path = tmp_path / "skip.ngcl"
        path.write_text("vars x mod 3\nskip\n")
        assert main(["transform", "--kind", "asp", "--pred", "false", str(path)]) == 0
        assert "no states" in capsys.readouterr().out

    def test_both_engines_agree(self, choice01):
        assert main(["transform", "--kind", "dslp", "--engine", "both",
                     "--pred", "x = 0", choice01]) == 0

    def test_parse_error_is_usage_error(self, tmp_path, capsys):
        path = tmp_path / "bad.ngcl"
        path.write_text("vars x mod 3\nwhile { skip }\n")
        assert main(["transform", "--kind", "awp", "--pred", "true", str(path)]) == 2


class TestCheck:
    def test_lisbon_valid(self, choice01, capsys):
        code = main(["check", "--logic", "lisbon", "--pre", "true",
                     "--post", "x = 0", choice01])
        assert code == 0
        assert "valid" in capsys.readouterr().out

    def test_total_correctness_invalid_with_witness(self, choice_diverge, capsys):
        code = main(["check", "--logic", "total-correctness", "--pre", "true",
                     "--post", "x = 0", choice_diverge])
        assert code == 1
        assert "witness" in capsys.readouterr().out

    def test_incorrectness_invalid_unreachable_post(self, assign0, capsys):
        code = main(["check", "--logic", "incorrectness", "--pre", "true",
                     "--post", "x = 1", assign0])
        assert code == 1
        assert "<x=1>" in capsys.readouterr().out

    def test_unknown_logic_is_usage_error(self, assign0):
        assert main(["check", "--logic", "nonsense", "--pre", "true",
                     "--post", "true", assign0]) == 2


class TestSurvey:
    def test_tiny_suite_passes(self, capsys):
        code = main(["survey", "--suite", "ORDERING,GALOIS_PC", "--corpus", "tiny"])
        assert code == 0
        out = capsys.readouterr().out
        assert "ORDERING" in out and "pass" in out

    def test_json_report_round_trips(self, capsys):
        code = main(["survey", "--suite", "ORDERING", "--corpus", "tiny",
                     "--format", "json"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "survey"
        assert report["items"][0]["claim"] == "ORDERING"
        assert report["items"][0]["holds"] is True
        assert json.loads(json.dumps(report)) == report

    def test_json_reports_are_byte_identical(self, capsys):
        args = ["survey", "--suite", "ORDERING,BRIDGES", "--corpus", "tiny",
                "--format", "json", "--seed", "13"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first.encode() == second.encode()

    def test_unknown_theorem_is_usage_error(self, capsys):
        assert main(["survey", "--suite", "NOT_A_THEOREM"]) == 2


class TestCounterexample:
    def test_known_gap_prints_witness(self, capsys):
        code = main(["counterexample", "--claim", "dwp-neq-intersection",
                     "--budget", "5000"])
        assert code == 0
        assert "program" in capsys.readouterr().out

    def test_true_galois_reports_none_within_budget(self, capsys):
        code = main(["counterexample", "--claim", "galois-pc", "--budget", "2000"])
        assert code == 1
        assert "none within budget" in capsys.readouterr().out

    def test_appendix_claim_from_the_catalog(self, capsys):
        code = main(["counterexample", "--claim",
                     "appendixC:awpLB-vs-aslpLB-contra", "--budget", "30000"])
        assert code == 0


class TestClassify:
    def test_flags_are_printed(self, choice_diverge, capsys):
        assert main(["classify", choice_diverge]) == 0
        out = capsys.readouterr().out
        assert "no_branching_divergence" in out and "fails" in out
