from pathlib import Path

import pytest

from freelinks.cli import run

from conftest import DATA

SAMPLE = str(DATA / "three_strand.tangle")
TRIVIAL = str(DATA / "trivial_3_3.tangle")
TRIANGLE = str(DATA / "triangle.tangle")
TRIANGLE_MOVED = str(DATA / "triangle_moved.tangle")
FOUR = str(DATA / "four_component.link")
KINK = str(DATA / "kink.link")


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_valid_summary_line(self, capsys):
        code, out, _ = invoke(capsys, "validate", SAMPLE)
        assert code == 0
        assert out == "valid, n=3, crossings=6, good-condition=true, pure=0\n"

    def test_invalid_reports_violations(self, capsys, tmp_path):
        bad = tmp_path / "bad.tangle"
        bad.write_text("tangle n=1\ncomponent 1 closed: x x\n")
        code, out, _ = invoke(capsys, "validate", str(bad))
        assert code == 0
        assert out.startswith("invalid, n=1, violations=1")
        assert "kind" in out

    def test_parse_error_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.tangle"
        bad.write_text("tangle n=1\ncomponent 1 open: x\n")
        code, _, err = invoke(capsys, "validate", str(bad))
        assert code == 2
        assert "error" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = invoke(capsys, "validate", "no_such_file.tangle")
        assert code == 2


class TestInvariant:
    def test_tangle_word(self, capsys):
        code, out, _ = invoke(capsys, "invariant", SAMPLE, "--pair", "1,2", "--along", "1")
        assert code == 0
        assert out == "(0)·(1)\n"

    def test_link_class(self, capsys):
        code, out, _ = invoke(capsys, "invariant", FOUR, "--pair", "1,2", "--along", "1")
        assert code == 0
        assert out == "(0,0)·(1,0)\n"

    def test_link_with_basepoints(self, capsys):
        code, out, _ = invoke(
            capsys, "invariant", FOUR, "--pair", "1,2", "--basepoints", "1:0,2:0,3:0,4:0"
        )
        assert code == 0
        assert out == "(0,0)·(0,1)·(1,1)·(0,0)\n"

    def test_precondition_failure_exits_3(self, capsys):
        code, _, err = invoke(capsys, "invariant", TRIANGLE, "--pair", "1,2")
        assert code == 3
        assert "good condition" in err

    def test_bad_pair_usage_exits_2(self, capsys):
        code, _, _ = invoke(capsys, "invariant", SAMPLE, "--pair", "one,two")
        assert code == 2

    def test_unknown_flag_exits_2(self, capsys):
        code, _, _ = invoke(capsys, "invariant", SAMPLE, "--pair", "1,2", "--bogus")
        assert code == 2


class TestBracket:
    def test_kink_output(self, capsys):
        code, out, _ = invoke(capsys, "bracket", KINK)
        assert code == 0
        assert out == "bracket n=1 summands=1\nlink n=1\ncomponent 1 closed:\n"

    def test_jobs_flag_matches_serial(self, capsys, tmp_path):
        f = tmp_path / "knot.link"
        f.write_text("link n=1\ncomponent 1 closed: a b a c b d c d\n")
        code, serial, _ = invoke(capsys, "bracket", str(f))
        assert code == 0
        code, parallel, _ = invoke(capsys, "bracket", str(f), "--jobs", "2")
        assert code == 0
        assert parallel == serial


class TestCompare:
    def test_distinct_with_certificate(self, capsys):
        code, out, _ = invoke(capsys, "compare", SAMPLE, TRIVIAL)
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "distinct"
        assert "pair (1,2) along 1: (0)·(1)" in lines[1]

    def test_triangle_image_equal_with_trace(self, capsys):
        code, out, _ = invoke(capsys, "compare", TRIANGLE, TRIANGLE_MOVED, "--depth", "1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "equal"
        assert lines[1] == "trace:"
        assert lines[2].startswith("R3")

    def test_identical_files_equal(self, capsys):
        code, out, _ = invoke(capsys, "compare", SAMPLE, SAMPLE)
        assert code == 0
        assert out.splitlines()[0] == "equal"

    def test_pair_restriction(self, capsys):
        code, out, _ = invoke(capsys, "compare", SAMPLE, TRIVIAL, "--pair", "1,3")
        # the (1,3) words agree, so the fingerprint stage passes and the
        # bracket stage decides
        assert code in (0, 1)
        assert out.splitlines()[0] in ("equal", "distinct", "unknown")

    def test_mismatched_inputs_exit_3(self, capsys, tmp_path):
        single = tmp_path / "one.tangle"
        single.write_text("tangle n=1\ncomponent 1 open:\n")
        code, _, err = invoke(capsys, "compare", SAMPLE, str(single))
        assert code == 3


class TestFuzz:
    def test_pass_line(self, capsys):
        code, out, _ = invoke(
            capsys, "fuzz", SAMPLE, "--steps", "30", "--seed", "7", "--forbid-pure"
        )
        assert code == 0
        assert out.startswith("PASS steps=30 seed=7")

    def test_deterministic_output(self, capsys):
        _, first, _ = invoke(capsys, "fuzz", SAMPLE, "--steps", "20", "--seed", "3")
        _, second, _ = invoke(capsys, "fuzz", SAMPLE, "--steps", "20", "--seed", "3")
        assert first == second

    def test_fail_fast_serializes_trace(self, capsys, monkeypatch):
        # a rigged word check must surface as FAIL plus the offending trace
        import freelinks.cli as cli

        calls = {"n": 0}

        def unstable(d):
            calls["n"] += 1
            return calls["n"]

        monkeypatch.setattr(cli, "fingerprint", unstable)
        code, out, _ = invoke(
            capsys, "fuzz", SAMPLE, "--steps", "5", "--seed", "7", "--forbid-pure"
        )
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "FAIL step=1 check=fingerprint"
        assert len(lines) == 2  # the one offending move, serialized


class TestOrbit:
    def test_four_component_orbit(self, capsys):
        code, out, _ = invoke(capsys, "orbit", FOUR, "--pair", "1,2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "orbit masks=4 distinct=2"
        assert lines[1:] == sorted(lines[1:])

    def test_orbit_of_triangle_fails_precondition(self, capsys):
        code, _, _ = invoke(capsys, "orbit", TRIANGLE, "--pair", "1,2")
        assert code == 3


class TestReplay:
    def test_replay_trace(self, capsys, tmp_path):
        from freelinks.diagram import parse_diagram, serialize_diagram

        trace = tmp_path / "moves.trace"
        trace.write_text("R3 x y z 1:0 2:0 3:0\n")
        code, out, _ = invoke(capsys, "replay", TRIANGLE, str(trace))
        assert code == 0
        assert out == serialize_diagram(parse_diagram(Path(TRIANGLE_MOVED).read_text()))

    def test_stale_trace_exits_3(self, capsys, tmp_path):
        trace = tmp_path / "moves.trace"
        trace.write_text("R1_delete q 1:0\n")
        code, _, err = invoke(capsys, "replay", TRIANGLE, str(trace))
        assert code == 3


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("validate", SAMPLE),
            ("invariant", FOUR, "--pair", "1,2"),
            ("bracket", KINK),
            ("compare", SAMPLE, TRIVIAL),
            ("orbit", FOUR, "--pair", "1,2"),
        ],
    )
    def test_byte_identical_reruns(self, capsys, argv):
        first = invoke(capsys, *argv)
        second = invoke(capsys, *argv)
        assert first == second
