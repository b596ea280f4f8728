import json

import pandas as pd
import pytest

from app import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_prints_catalogue(capsys):
    code, out, err = _run(capsys, "list")
    assert code == cli.EXIT_PASS
    payload = json.loads(out)
    assert payload["schema"] == "1"
    names = {c["name"] for c in payload["checks"]}
    assert {"weyl-denominator", "interp-cs", "kp-cocycle", "dvarpi"} <= names
    assert "dual-coxeter" in err


def test_check_passes_with_flags(capsys):
    code, out, err = _run(capsys, "check", "dual-coxeter", "--algebra", "A2", "--no-timing", "--seed", "3")
    assert code == cli.EXIT_PASS
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["seed"] == 3
    assert payload["parameters"] == {"algebra": "A2"}
    assert "wall_time_ms" not in payload
    assert err.strip().splitlines()[-1].startswith("PASS dual-coxeter")


def test_param_overrides_are_json_decoded(capsys):
    code, out, _ = _run(capsys, "check", "affine-roots", "--param", "algebra=A2", "--param", "n-max=2")
    assert code == cli.EXIT_PASS
    assert json.loads(out)["parameters"] == {"algebra": "A2", "n_max": 2, "max_length": 8}


def test_out_file_matches_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = _run(capsys, "check", "weyl-group", "--algebra", "A1", "--no-timing", "--out", str(target))
    assert code == cli.EXIT_PASS
    assert target.read_text().strip() == out.strip()


def test_same_seed_same_bytes(capsys):
    _, first, _ = _run(capsys, "check", "implementer", "--param", "dim=4", "--seed", "9", "--no-timing")
    _, second, _ = _run(capsys, "check", "implementer", "--param", "dim=4", "--seed", "9", "--no-timing")
    assert first == second


@pytest.mark.parametrize("argv", [
    ["check", "no-such-check"],
    ["check", "dual-coxeter", "--algebra", "E8"],
    ["check", "clifford-relations", "--param", "dim=5"],
    ["check", "affine-roots", "--param", "oops"],
    ["frobnicate"],
    [],
    ["spectrum", "--algebra", "A1"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == cli.EXIT_INPUT
    assert out == ""
    assert "error" in err


def test_failing_check_exits_1(capsys, monkeypatch, toy_registry):
    monkeypatch.setattr(cli, "registry", toy_registry)
    code, out, err = _run(capsys, "check", "nan")
    assert code == cli.EXIT_FAIL
    assert json.loads(out)["pass"] is False
    assert "FAIL nan" in err


def test_structural_error_exits_3(capsys, monkeypatch, toy_registry):
    monkeypatch.setattr(cli, "registry", toy_registry)
    code, out, err = _run(capsys, "check", "broken")
    assert code == cli.EXIT_STRUCTURAL
    assert "structural error" in err


def test_suite_reports_failures(capsys, monkeypatch, toy_registry):
    monkeypatch.setattr(cli, "registry", toy_registry)
    code, out, err = _run(capsys, "suite", "--profile", "full", "--no-timing")
    assert code == cli.EXIT_FAIL
    payload = json.loads(out)
    assert payload["profile"] == "full"
    assert [r["check_name"] for r in payload["reports"]] == ["exact-ok", "broken", "noisy"]
    assert "Failing checks:" in err


def test_quick_toy_suite_passes(capsys, monkeypatch, toy_registry):
    monkeypatch.setattr(cli, "registry", toy_registry)
    code, out, err = _run(capsys, "suite")
    assert code == cli.EXIT_PASS
    assert json.loads(out)["pass"] is True
    assert "All 2 checks passed" in err


def test_spectrum_export(capsys, tmp_path):
    target = tmp_path / "spectrum.csv"
    code, _, _ = _run(capsys, "spectrum", "--algebra", "A1", "--modes", "2", "--mu", "0.1", "--out", str(target))
    assert code == cli.EXIT_PASS
    frame = pd.read_csv(target)
    assert len(frame) == 5 * 3
    assert set(frame["mode"]) == {-2, -1, 0, 1, 2}


def test_unexpected_exception_exits_3(capsys, monkeypatch, toy_registry):
    monkeypatch.setattr(cli, "registry", toy_registry)
    code, out, err = _run(capsys, "check", "singular")
    assert code == cli.EXIT_STRUCTURAL
    assert out == ""
    assert "internal error: LinAlgError" in err
