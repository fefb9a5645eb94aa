"""End-to-end tests for the command-line interface: subcommands, JSON
output, precision environment variable, and exit codes."""

import json

import pytest

from penner.cli import main
from penner.spectral import default_digits


OMEGA3 = {"n": 3, "entries": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}


@pytest.fixture
def omega_file(tmp_path):
    path = tmp_path / "omega3.json"
    path.write_text(json.dumps(OMEGA3))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_degree_json(omega_file, capsys):
    code, out, _ = run(capsys, [
        "degree", "--omega", omega_file, "--gamma", "1,2,3", "--json",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["degree"] == 3
    assert payload["charpoly"] == "x^3 - 7*x^2 + 5*x - 1"
    assert payload["lambda"].startswith("6.22226252312")


def test_degree_text_output(omega_file, capsys):
    code, out, _ = run(capsys, [
        "degree", "--omega", omega_file, "--gamma", "1,2,3",
    ])
    assert code == 0
    assert "degree: 3" in out


def test_recipe(omega_file, capsys):
    code, out, _ = run(capsys, [
        "recipe", "--omega", omega_file, "--gamma", "1,2,1,3",
        "--check-powering", "--json",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["rank"] == payload["degree"] == 3
    assert payload["k_star"] >= 1


def test_recipe_rejects_noncontractible(omega_file, capsys):
    code, _, err = run(capsys, [
        "recipe", "--omega", omega_file, "--gamma", "1,2,3",
    ])
    assert code == 3
    assert "contractible" in err


def test_recipe_budget_exhausted(omega_file, capsys):
    code, _, err = run(capsys, [
        "recipe", "--omega", omega_file, "--gamma", "1,2,1,3",
        "--k-max", "0",
    ])
    assert code == 4


def test_limit_supported(omega_file, capsys):
    code, out, _ = run(capsys, [
        "limit", "--omega", omega_file, "--gamma", "1,2,3",
        "--scales", "4,8", "--json",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["supported"] and payload["limit"] == "x^2 + x"


def test_limit_divergent(tmp_path, capsys):
    path = tmp_path / "div4.json"
    path.write_text(json.dumps({
        "n": 4,
        "entries": [[0, 0, 1, 2], [0, 0, 1, 1], [1, 1, 0, 1], [2, 1, 1, 0]],
    }))
    code, out, _ = run(capsys, [
        "limit", "--omega", str(path), "--gamma", "1,2,3,4",
        "--scales", "16,32,64,128", "--json",
    ])
    assert code == 0
    payload = json.loads(out)
    assert not payload["supported"]
    assert len(payload["exponents"]) == 4


def test_catalog_list(capsys):
    code, out, _ = run(capsys, ["catalog", "list"])
    assert code == 0
    assert "S43-max" in out and "Mr-12" in out


def test_catalog_show(capsys):
    code, out, _ = run(capsys, ["catalog", "show", "Mr-4", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4 and payload["rank"] == 4


def test_catalog_show_unknown(capsys):
    code, _, err = run(capsys, ["catalog", "show", "bogus"])
    assert code == 2


def test_catalog_degrees(capsys):
    code, out, _ = run(capsys, [
        "catalog", "degrees", "--kind", "S", "--genus", "2", "--json",
    ])
    assert code == 0
    payload = json.loads(out)
    assert payload["degree_sets"] == [[2, 3, 4, 6]]


def test_catalog_degrees_no_pa(capsys):
    code, _, err = run(capsys, [
        "catalog", "degrees", "--kind", "N", "--genus", "3",
    ])
    assert code == 3


def test_selftest(capsys):
    code, out, _ = run(capsys, ["selftest"])
    assert code == 0
    assert "FAIL" not in out


def test_invalid_omega_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "entries": [[0, -1], [-1, 0]]}))
    code, _, err = run(capsys, [
        "degree", "--omega", str(path), "--gamma", "1,2",
    ])
    assert code == 2


def test_missing_omega_file(capsys):
    code, _, err = run(capsys, [
        "degree", "--omega", "/nonexistent.json", "--gamma", "1,2",
    ])
    assert code == 2


def test_precision_env_var(monkeypatch):
    monkeypatch.setenv("PENNER_PRECISION", "80")
    assert default_digits() == 80
    monkeypatch.delenv("PENNER_PRECISION")
    assert default_digits() == 50
