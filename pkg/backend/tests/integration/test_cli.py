"""
Integration Tests for the command-line front end

Runs every subcommand through smti.main.main() end to end, including exit
codes and the files they write.
"""
import itertools
import json

import pytest

from smti.core.config import settings
from smti.main import main


@pytest.fixture
def single_pair_file(tmp_path):
    path = tmp_path / "single.smti"
    path.write_text("#smti-v1\n1\n0 : (0)\n0 : (0)\n")
    return path


@pytest.fixture
def woman_prefers_file(tmp_path):
    path = tmp_path / "woman_prefers.smti"
    path.write_text("2\n0 : (0) (1)\n1 : (0)\n0 : (1) (0)\n1 : (0)\n")
    return path


@pytest.fixture
def corpus_file(tmp_path):
    assert main(["generate", "--n", "6", "--p1", "0.3", "--p2", "0.4", "--seed", "5",
                 "--out-dir", str(tmp_path / "corpus")]) == 0
    return tmp_path / "corpus" / "inst_6_0.3_0.4_0.smti"


@pytest.mark.integration
class TestGenerateCommand:
    """smti generate"""

    def test_writes_count_files(self, tmp_path, capsys):
        """Test generate writes the requested number of named files"""
        out_dir = tmp_path / "out"
        code = main(["generate", "--n", "5", "--p1", "0.2", "--p2", "0.3", "--count", "10",
                     "--seed", "1", "--out-dir", str(out_dir)])
        assert code == 0
        files = sorted(out_dir.glob("*.smti"))
        assert len(files) == 10
        assert (out_dir / "inst_5_0.2_0.3_9.smti").exists()
        assert len(capsys.readouterr().out.splitlines()) == 10

    def test_same_seed_identical_bytes(self, tmp_path):
        """Test equal seeds write byte-identical files"""
        for name in ("a", "b"):
            main(["generate", "--n", "7", "--p1", "0.5", "--p2", "0.5", "--count", "3",
                  "--seed", "42", "--out-dir", str(tmp_path / name)])
        for k in range(3):
            filename = f"inst_7_0.5_0.5_{k}.smti"
            assert (tmp_path / "a" / filename).read_bytes() == (tmp_path / "b" / filename).read_bytes()

    def test_p1_of_one_rejected(self, tmp_path, capsys):
        """Test p1 = 1 fails validation and writes nothing"""
        code = main(["generate", "--n", "3", "--p1", "1.0", "--out-dir", str(tmp_path)])
        assert code == 1
        assert "error: ValidationError" in capsys.readouterr().err
        assert list(tmp_path.iterdir()) == []


@pytest.mark.integration
class TestSolveCommand:
    """smti solve"""

    @pytest.mark.parametrize(
        "objective,expected", [("max-cardinality", 1), ("egalitarian", 2), ("sex-equal", 0)]
    )
    def test_brute_force_single_pair(self, single_pair_file, capsys, objective, expected):
        """Test solving the single pair prints cost, optimality and the matching"""
        code = main(["solve", str(single_pair_file), "--solver", "bf", "--objective", objective])
        out = capsys.readouterr().out
        assert code == 0
        assert f"cost: {expected}" in out.splitlines()
        assert "optimal: true" in out
        assert out.rstrip().endswith("matching:\n0 0")

    @pytest.mark.parametrize("solver", ["bf", "bnb", "ltiu", "ga", "da"])
    def test_every_solver_returns_stable_matching(self, corpus_file, capsys, solver):
        """Test every solver reports a stable matching as JSON"""
        code = main(["solve", str(corpus_file), "--solver", solver, "--format", "json",
                     "--steps", "100", "--rounds", "10", "--population", "6"])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["stable"] is True
        assert report["solver"] == solver

    def test_ltiu_deterministic_for_seed(self, corpus_file, capsys):
        """Test equal LTIU seeds print equal reports"""
        reports = []
        for _ in range(2):
            main(["solve", str(corpus_file), "--solver", "ltiu", "--seed", "9", "--steps", "300",
                  "--format", "json"])
            reports.append(json.loads(capsys.readouterr().out))
        for key in ("matching", "cost", "raw_eval", "final_eval", "stabilized_by"):
            assert reports[0][key] == reports[1][key]
        assert reports[0]["stats"]["steps"] == reports[1]["stats"]["steps"]

    def test_unknown_solver_is_usage_error(self, single_pair_file):
        """Test an unknown solver exits with the usage code"""
        with pytest.raises(SystemExit) as exc:
            main(["solve", str(single_pair_file), "--solver", "simplex"])
        assert exc.value.code == 2

    def test_parse_error_exit_code(self, tmp_path, capsys):
        """Test a malformed instance exits 1 with the line number"""
        bad = tmp_path / "bad.smti"
        bad.write_text("1\n0 : (0 0)\n0 : (0)\n")
        assert main(["solve", str(bad)]) == 1
        assert "error: InstanceParseError: line 2:" in capsys.readouterr().err

    def test_non_ascii_digit_is_parse_error(self, tmp_path, capsys):
        """Test a non-ASCII digit is a parse error, not a crash"""
        bad = tmp_path / "superscript.smti"
        bad.write_text("1\n0 : (²)\n0 : (0)\n", encoding="utf-8")
        assert main(["solve", str(bad), "--solver", "bf"]) == 1
        assert "error: InstanceParseError: line 2:" in capsys.readouterr().err

    def test_missing_file_exit_code(self, tmp_path, capsys):
        """Test a missing instance exits 1 with the OS reason"""
        assert main(["solve", str(tmp_path / "absent.smti")]) == 1
        err = capsys.readouterr().err
        assert "error: InputReadError" in err
        assert "No such file" in err

    def test_undecodable_file_reports_reason(self, tmp_path, capsys):
        """Test a non-UTF-8 instance file names the decoding failure"""
        bad = tmp_path / "latin1.smti"
        bad.write_bytes(b"1\n0 : (0)\n0 : (0) \xff\n")
        assert main(["solve", str(bad)]) == 1
        assert "codec can't decode" in capsys.readouterr().err

    def test_brute_force_size_guard(self, tmp_path, capsys):
        """Test brute force refuses a large instance with exit code 1"""
        main(["generate", "--n", "9", "--p1", "0.5", "--out-dir", str(tmp_path)])
        code = main(["solve", str(tmp_path / "inst_9_0.5_0_0.smti"), "--solver", "bf"])
        assert code == 1
        assert "InstanceTooLargeError" in capsys.readouterr().err

    def test_branch_and_bound_timeout_exit_code(self, corpus_file, capsys, monkeypatch):
        """Test a timed-out search exits 2 and prints the incumbent"""
        clock = itertools.count()
        monkeypatch.setattr(settings, "TIMEOUT_CHECK_INTERVAL", 1)
        monkeypatch.setattr("smti.services.exact.time.perf_counter", lambda: float(next(clock)))
        code = main(["solve", str(corpus_file), "--solver", "bnb", "--time-limit-ms", "1"])
        out = capsys.readouterr().out
        assert code == 2
        assert "optimal: false" in out
        assert "timed_out=true" in out

    def test_negative_time_limit_rejected(self, single_pair_file, capsys):
        """Test a negative time limit is rejected"""
        assert main(["solve", str(single_pair_file), "--time-limit-ms", "-5"]) == 1
        assert "InvalidParameterError" in capsys.readouterr().err


@pytest.mark.integration
class TestCheckCommand:
    """smti check"""

    def test_stable_matching(self, single_pair_file, tmp_path, capsys):
        """Test check prints stability and the three costs"""
        matching = tmp_path / "mu.txt"
        matching.write_text("0 0\n")
        assert main(["check", str(single_pair_file), str(matching)]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "stable, 0 blocking pairs",
            "max-cardinality: 1",
            "egalitarian: 2",
            "sex-equal: 0",
        ]

    def test_empty_matching_lists_both_single_pair(self, single_pair_file, tmp_path, capsys):
        """Test check lists the blocking pair with its case label"""
        matching = tmp_path / "mu.txt"
        matching.write_text("")
        main(["check", str(single_pair_file), str(matching)])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "unstable, 1 blocking pairs"
        assert lines[1] == "(0, 0) A3a"

    def test_case_labels(self, woman_prefers_file, tmp_path, capsys):
        """Test check labels an A3c blocking pair"""
        matching = tmp_path / "mu.txt"
        matching.write_text("0 0\n")
        main(["check", str(woman_prefers_file), str(matching)])
        lines = capsys.readouterr().out.splitlines()
        assert lines[:2] == ["unstable, 1 blocking pairs", "(1, 0) A3c"]
        assert "egalitarian: 3" in lines

    def test_invalid_matching(self, single_pair_file, tmp_path, capsys):
        """Test an invalid matching file exits 1"""
        matching = tmp_path / "mu.txt"
        matching.write_text("0 0\n0 0\n")
        assert main(["check", str(single_pair_file), str(matching)]) == 1
        assert "MatchingParseError" in capsys.readouterr().err


@pytest.mark.integration
class TestEncodeCommand:
    """smti encode"""

    def test_asp_to_stdout(self, single_pair_file, capsys):
        """Test encode writes the decision program to stdout"""
        assert main(["encode", str(single_pair_file), "--format", "asp"]) == 0
        out = capsys.readouterr().out
        assert "mrank(m0,w0,1)." in out
        assert ":~" not in out

    def test_asp_variant(self, single_pair_file, capsys):
        """Test encode appends the requested objective's constraints"""
        main(["encode", str(single_pair_file), "--format", "asp", "--objective", "sex-equal"])
        assert "#sum" in capsys.readouterr().out

    def test_lp_to_file(self, single_pair_file, tmp_path):
        """Test encode writes an LP model to the output file"""
        target = tmp_path / "model.lp"
        assert main(["encode", str(single_pair_file), "--format", "lp", "--objective",
                     "egalitarian", "-o", str(target)]) == 0
        text = target.read_text()
        assert "Minimize" in text
        assert "stab_0_0:" in text

    def test_native_round_trip(self, woman_prefers_file, tmp_path):
        """Test re-encoding the canonical form is a fixed point"""
        target = tmp_path / "canonical.smti"
        main(["encode", str(woman_prefers_file), "--format", "native", "-o", str(target)])
        again = tmp_path / "again.smti"
        main(["encode", str(target), "--format", "native", "-o", str(again)])
        assert target.read_text().startswith("#smti-v1\n2\n")
        assert target.read_text() == again.read_text()

    def test_emissions_are_deterministic(self, corpus_file, tmp_path):
        """Test ASP and LP emissions are byte-identical across runs"""
        for fmt in ("asp", "lp"):
            outputs = []
            for k in range(2):
                target = tmp_path / f"{fmt}{k}"
                main(["encode", str(corpus_file), "--format", fmt, "--objective", "egalitarian",
                      "-o", str(target)])
                outputs.append(target.read_bytes())
            assert outputs[0] == outputs[1]
