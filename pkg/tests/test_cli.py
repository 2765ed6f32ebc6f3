"""Command-line interface: output, exit codes, JSON determinism."""
import json

import pytest
from click.testing import CliRunner

from addunique import cli, service
from addunique.engine import UniquenessFailure

runner = CliRunner()


def test_seeds_k4():
    result = runner.invoke(cli.main, ["seeds", "--k", "4"])
    assert result.exit_code == 0
    assert "f(2)=-2, f(3)=-1, f(5)=1" in result.output
    assert "f(2)=2, f(3)=3, f(5)=5" in result.output


def test_seeds_k5():
    result = runner.invoke(cli.main, ["seeds", "--k", "5"])
    assert result.exit_code == 0
    assert "f(2)=1/4, f(3)=2/3, f(5)=-2" in result.output
    assert "f(2)=1, f(3)=1, f(5)=1" in result.output


def test_seeds_usage_error():
    result = runner.invoke(cli.main, ["seeds", "--k", "2"])
    assert result.exit_code == cli.EXIT_USAGE


def test_certify_directed():
    result = runner.invoke(cli.main, ["certify", "--k", "4", "--bound", "60"])
    assert result.exit_code == 0
    assert "verdict: unique" in result.output
    assert "f(n) = n for all n <= 60" in result.output
    assert "identity total 18: -10 vs 2" in result.output


def test_certify_usage_error():
    result = runner.invoke(cli.main, ["certify", "--k", "4", "--bound", "5"])
    assert result.exit_code == cli.EXIT_USAGE


def test_certify_falsified_exit_code(monkeypatch):
    def boom(req):
        raise UniquenessFailure("branch survived")

    monkeypatch.setattr(service, "handle_certify", boom)
    result = runner.invoke(cli.main, ["certify", "--k", "4", "--bound", "60"])
    assert result.exit_code == cli.EXIT_FALSIFIED
    assert "FALSIFIED" in result.output


def test_certify_invalid_thread_env(monkeypatch):
    monkeypatch.setenv("ADDUNIQUE_THREADS", "nope")
    result = runner.invoke(
        cli.main, ["certify", "--k", "4", "--bound", "40", "--strategy", "generic"]
    )
    assert result.exit_code == cli.EXIT_USAGE


def test_lemma_command():
    result = runner.invoke(cli.main, ["lemma", "--k", "4", "--bound", "300"])
    assert result.exit_code == 0
    assert "{1, 2, 3, 5, 7}" in result.output


def test_repr_command():
    result = runner.invoke(cli.main, ["repr", "--n", "10", "--k", "3"])
    assert result.exit_code == 0
    assert "1 representations" in result.output
    assert "1 + 3 + 6" in result.output


def test_gauss_command():
    result = runner.invoke(cli.main, ["gauss", "--n", "100"])
    assert result.exit_code == 0
    assert "100 = 0 + 45 + 55" in result.output


def test_json_output_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        result = runner.invoke(
            cli.main,
            ["certify", "--k", "4", "--bound", "60", "--json", str(path)],
        )
        assert result.exit_code == 0
    first, second = (p.read_bytes() for p in paths)
    assert first == second
    body = json.loads(first)
    assert body["verdict"] == "unique"
    assert "duration" not in first.decode()


def test_json_output_for_seeds(tmp_path):
    path = tmp_path / "seeds.json"
    result = runner.invoke(cli.main, ["seeds", "--k", "9", "--json", str(path)])
    assert result.exit_code == 0
    body = json.loads(path.read_text())
    assert len(body["solutions"]) == 3
