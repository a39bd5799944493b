import json

import pytest

from ramzeta.cli import CliConfig, main, parse_complex


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_text_and_single_row(capsys):
    code, out, _ = run(capsys, "coeffs", "--max-m", "0")
    assert code == 0
    assert out.count("\n") == 1 and out.startswith("m=0")


def test_coeffs_csv_matches_known_x(capsys):
    code, out, _ = run(capsys, "coeffs", "--max-m", "4", "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0].split(",")[:2] == ["m", "x_m"]
    assert len(rows) == 6
    assert rows[5].split(",")[1].startswith("-0.1097239238498524221")


def test_coeffs_json_shape(capsys, tmp_path):
    target = tmp_path / "c.json"
    code, out, _ = run(capsys, "coeffs", "--max-m", "3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload["meta"]["precision_bits"] == 128
    assert [row["m"] for row in payload["data"]] == [0, 1, 2, 3]
    assert isinstance(payload["data"][1]["x_m"], str)


def test_deterministic_output(capsys):
    first = run(capsys, "eval", "--s", "0.5,14.134725", "--terms", "60", "--format", "json")
    second = run(capsys, "eval", "--s", "0.5,14.134725", "--terms", "60", "--format", "json")
    assert first == second and first[0] == 0


def test_eval_gap_shrinks(capsys):
    gaps = []
    for terms in ("100", "400"):
        code, out, _ = run(capsys, "eval", "--s", "0.5,0", "--terms", terms, "--with-oracle", "--format", "json")
        assert code == 0
        gaps.append(float(json.loads(out)["data"][0]["oracle_gap"]))
    assert gaps[1] < gaps[0]


def test_eval_outside_strip(capsys):
    code, _, err = run(capsys, "eval", "--s", "1.5,0")
    assert code == 2 and "outside critical strip" in err


def test_rsum_presets(capsys):
    code, out, _ = run(capsys, "rsum", "harmonic")
    assert code == 0 and out.startswith("R-sum[harmonic] = 0.5772156649015328606")
    code, out, _ = run(capsys, "rsum", "power:2", "--format", "json")
    data = json.loads(out)["data"][0]
    assert data["value"].startswith("0.3333333333333333333")
    assert float(data["closed_form_gap"]) < 1e-25
    code, _, err = run(capsys, "rsum", "nope")
    assert code == 2 and "unknown preset" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "coeffs", "--precision", "20")
    assert code == 2
    code, _, _ = run(capsys, "eval", "--s", "a,b,c")
    assert code == 2


def test_verify_orthogonality_and_roots(capsys):
    code, out, _ = run(capsys, "verify", "orthogonality", "--max-m", "12")
    assert code == 0 and "PASS  gram_identity_upto_12" in out
    code, out, _ = run(capsys, "verify", "roots", "--max-m", "8", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "check,passed,detail"


def test_verify_failure_exit_code(capsys, monkeypatch):
    from ramzeta import cli

    monkeypatch.setattr(cli, "suite_orthogonality", lambda m: [cli.Check("forced", False)])
    code, out, _ = run(capsys, "verify", "orthogonality")
    assert code == 1 and "FAIL  forced" in out


def test_nonconvergence_exit_code(capsys, monkeypatch):
    from ramzeta import cli

    def boom(*a, **k):
        raise ArithmeticError("quadrature did not converge")

    monkeypatch.setattr(cli.zexpand, "zeta_expansion", boom)
    code, _, err = run(capsys, "eval", "--s", "0.5,1")
    assert code == 3 and "did not converge" in err


def test_config_and_parsing():
    assert parse_complex("0.5,2").imag == 2
    assert parse_complex("0.25").imag == 0
    with pytest.raises(ValueError):
        CliConfig(precision_bits=32)
    with pytest.raises(ValueError):
        CliConfig(max_m=-1)
