"""Tests for the command line surface."""

import json

import pytest
from click.testing import CliRunner

from main import cli
from utils.file_utils import FIXTURES_DIR


@pytest.fixture
def runner():
    return CliRunner()


def write_ideal_file(path, prime, generators):
    path.write_text(
        json.dumps(
            {
                "prime": prime,
                "vars": ["x", "y", "z"],
                "generators": [[{"c": 1, "e": list(e)}] for e in generators],
            }
        ),
        encoding="utf-8",
    )
    return path


class TestPredict:
    def test_generic_prediction(self, runner):
        result = runner.invoke(cli, ["predict", "--s1", "5", "--s", "6"])
        assert result.exit_code == 0, result.output
        document = json.loads(result.output)
        assert document["generic_class"] == "G(1)"
        assert document["generic_m"] == 6
        assert document["h"] == [1, 3, 6, 10, 9, 4, 1]

    def test_forced_generator_count(self, runner):
        result = runner.invoke(cli, ["predict", "--s1", "3", "--s", "3"])
        document = json.loads(result.output)
        assert document["generic_class"] == "H(0,0)"
        assert document["generic_m"] == 8
        assert document["special_m"]["m"] == 8

    def test_markdown(self, runner):
        result = runner.invoke(cli, ["predict", "--s1", "4", "--s", "5", "--format", "markdown"])
        assert result.exit_code == 0
        assert "generic class: G(1)" in result.output
        assert "generic m: 9" in result.output

    def test_out_of_range_is_a_usage_error(self, runner):
        result = runner.invoke(cli, ["predict", "--s1", "2", "--s", "4"])
        assert result.exit_code == 2
        assert "requires s < 2*s1" in result.output

    def test_other_embedding_dimension(self, runner):
        result = runner.invoke(cli, ["predict", "--s1", "5", "--s", "6", "--e", "4"])
        assert result.exit_code == 0
        assert json.loads(result.output)["e"] == 4


class TestClassify:
    def test_fixture(self, runner):
        result = runner.invoke(cli, ["classify", "--fixture", "collision_intersection"])
        assert result.exit_code == 0, result.output
        assert "(1,3,4,1)" in result.output
        assert "class:        B" in result.output
        assert "compressed:   yes" in result.output

    def test_binary_file(self, runner):
        path = FIXTURES_DIR / "r1r2a_i2.json"
        result = runner.invoke(cli, ["classify", "--ideal", str(path), "--prime", "2"])
        assert result.exit_code == 0, result.output
        assert "GF(2)" in result.output
        assert "(1,3,6,6,3,1)" in result.output

    def test_complete_intersection_file(self, runner, tmp_path):
        path = write_ideal_file(tmp_path / "ci.json", 32003, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
        result = runner.invoke(cli, ["classify", "--ideal", str(path)])
        assert result.exit_code == 0, result.output
        assert "class:        C(3)" in result.output
        assert "total:" in result.output

    def test_needs_exactly_one_source(self, runner):
        assert runner.invoke(cli, ["classify"]).exit_code == 2
        both = runner.invoke(cli, ["classify", "--fixture", "ci_x2y2z2", "--ideal", "ci.json"])
        assert both.exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["classify", "--ideal", str(tmp_path / "nope.json")])
        assert result.exit_code == 1
        assert "not found" in result.output

    def test_non_integer_prime(self, runner, tmp_path):
        path = tmp_path / "bad_prime.json"
        path.write_text('{"prime": "abc", "generators": [[{"c": 1, "e": [2, 0, 0]}]]}', encoding="utf-8")
        result = runner.invoke(cli, ["classify", "--ideal", str(path)])
        assert result.exit_code == 1
        assert "'prime' must be an integer" in result.output

    def test_not_primary(self, runner, tmp_path, monkeypatch):
        monkeypatch.setenv("TORCLASS_TRUNCATION_CAP", "8")
        path = write_ideal_file(tmp_path / "bad.json", 32003, [(2, 0, 0), (0, 2, 0)])
        result = runner.invoke(cli, ["classify", "--ideal", str(path)])
        assert result.exit_code == 1


class TestPair:
    def test_deterministic(self, runner):
        args = ["pair", "--s1", "2", "--s", "2", "--seed", "3"]
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        assert first.exit_code == 0, first.output
        assert first.output == second.output
        assert '"class": "H(3,2)"' in first.output

    def test_export(self, runner, tmp_path):
        result = runner.invoke(cli, ["pair", "--s1", "2", "--s", "3", "--export", str(tmp_path / "out")])
        assert result.exit_code == 0, result.output
        for name in ("I1", "I2", "I", "I_sum"):
            document = json.loads((tmp_path / "out" / f"{name}.json").read_text(encoding="utf-8"))
            assert document["name"] == name
            assert document["prime"] == 32003


class TestExperiment:
    def test_csv_is_header_first(self, runner):
        result = runner.invoke(
            cli, ["experiment", "--s1", "2", "--s", "2", "--trials", "2", "--seed", "1", "--format", "csv"]
        )
        assert result.exit_code == 0, result.output
        lines = [line for line in result.output.splitlines() if not line.startswith("#")]
        assert lines[0].startswith("s1,s,h,t,modal_class")
        assert lines[1].startswith('2,2,"(1,3,2)",2,"H(3,2)",4')

    def test_writes_file(self, runner, tmp_path):
        out = tmp_path / "rows.md"
        result = runner.invoke(
            cli,
            ["experiment", "--s1", "2", "--s", "3", "--trials", "2", "--format", "markdown", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        text = out.read_text(encoding="utf-8")
        assert "- prime: 32003" in text
        assert "| 2 | 3 |" in text

    def test_bad_environment_value_is_a_usage_error(self, runner, monkeypatch):
        monkeypatch.setenv("TORCLASS_TRIALS", "many")
        result = runner.invoke(cli, ["experiment", "--s1", "2", "--s", "2"])
        assert result.exit_code == 2
        assert "TORCLASS_TRIALS must be an integer" in result.output

    def test_table_rejects_large_max_s(self, runner):
        result = runner.invoke(cli, ["table1", "--max-s", "40", "--trials", "1"])
        assert result.exit_code == 2
