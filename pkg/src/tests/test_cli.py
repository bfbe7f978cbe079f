import json

import pytest

from src.main import main
from src.schemas.reports import RunReport


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_shor_worked_example_json(capsys):
    code, out, _ = _run(capsys, "shor", "--N", "15", "--a", "7", "--s", "64", "--seed", "1",
                        "--max-rounds", "30", "--format", "json")

    report = RunReport.model_validate_json(out)
    assert code == 0
    assert report.verdict == [3, 5]
    assert [0, 16, 32, 48] in [entry.basis_labels for entry in report.geometry]
    assert all(r.c in (0, 16, 32, 48) for r in report.rounds)


def test_simon_outcomes_are_orthogonal_to_period(capsys):
    code, out, _ = _run(capsys, "simon", "--n", "3", "--r", "1", "--seed", "2", "--format", "json")

    payload = json.loads(out)
    assert set(payload["details"]["outcomes"]) <= {"000", "010", "100", "110"}
    if code == 0:
        assert payload["verdict"] == 1


@pytest.mark.parametrize("seed", ["7", "8", "9"])
def test_constant_deutsch_oracle_is_never_called_balanced(capsys, seed):
    code, out, _ = _run(capsys, "deutsch", "--oracle", "constant0", "--seed", seed, "--format", "json")

    report = RunReport.model_validate_json(out)
    assert report.verdict in (None, "constant")
    assert code == (0 if report.conclusive else 2)


def test_cleve_text_output(capsys):
    code, out, _ = _run(capsys, "cleve", "--oracle", "not")

    assert code == 0
    assert "verdict:    balanced" in out


def test_same_seed_gives_identical_report(capsys):
    argv = ["dj", "--n", "3", "--oracle", "balanced", "--seed", "42", "--format", "json"]
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)

    assert first == second
    assert json.loads(first)["verdict"] == "balanced"


def test_geometry_command(capsys):
    code, out, _ = _run(capsys, "geometry", "--family", "deutsch", "--format", "json")

    report = RunReport.model_validate_json(out)
    assert code == 0
    assert [entry.dimension for entry in report.geometry] == [2, 2, 1, 2, 2]


def test_malformed_oracle_file_names_field(capsys, tmp_path):
    path = tmp_path / "oracle.json"
    path.write_text(json.dumps({"domain_size": 2, "codomain_size": 2, "values": [0, 7]}))

    code, out, err = _run(capsys, "deutsch", "--oracle-file", str(path))

    assert code == 1
    assert out == ""
    assert "values" in err


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["simon", "--n", "3", "--r", "8"], "r:"),
        (["shor"], "modulus"),
        (["shor", "--N", "15", "--a", "20"], "a:"),
        (["deutsch", "--oracle", "random"], "oracle"),
        (["teleport"], "error:"),
    ],
)
def test_invalid_configuration_exits_with_one(capsys, argv, fragment):
    code, out, err = _run(capsys, *argv)

    assert code == 1
    assert out == ""
    assert fragment in err


def test_prime_modulus_is_a_domain_error(capsys):
    code, _, err = _run(capsys, "shor", "--N", "13")

    assert code == 1
    assert "error:" in err


def test_unknown_log_level_is_a_field_diagnostic(capsys):
    code, out, err = _run(capsys, "dj", "--n", "2", "--oracle", "balanced", "--log-level", "bogus")

    assert code == 1
    assert out == ""
    assert "log_level" in err


def test_log_level_is_case_insensitive(capsys):
    code, _, _ = _run(capsys, "cleve", "--oracle", "identity", "--log-level", "debug")

    assert code == 0
