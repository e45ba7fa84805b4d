"""CLI tests: subcommand wiring, exit codes, deterministic reports, and the
file-output path.  Everything goes through main(argv) in-process."""

from __future__ import annotations

import json

import pytest

from appell_kit.cli import (
    BUNDLE_NOMES,
    MODULAR_TAUS,
    SUITES,
    format_value,
    main,
    parse_complex,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_complex_accepts_both_notations():
    assert parse_complex("1.5i") == 1.5j
    assert parse_complex("0.4+0.1j") == 0.4 + 0.1j
    assert parse_complex(" 2 ") == 2.0 + 0j
    with pytest.raises(Exception):
        parse_complex("bogus")


def test_format_value_is_fifteen_digits():
    assert format_value(1 / 3 + 0j) == "0.333333333333333+0j"
    assert format_value(1.0 - 2.5j) == "1-2.5j"


def test_suite_constants():
    assert SUITES == ("all", "numeric", "exact", "bundles", "modular")
    assert len(BUNDLE_NOMES) == 2
    assert len(MODULAR_TAUS) == 3


def test_verify_single_identity_includes_exact_companion(capsys):
    code, out, err = run_cli(
        capsys, "verify", "FOR1", "--samples", "5", "--exact-order", "40"
    )
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert [r["record_id"] for r in report["records"]] == ["FOR1", "FOR1_EXACT"]
    assert report["records"][0]["kind"] == "numeric-sampled"
    assert report["records"][1]["kind"] == "exact-coefficients"
    assert "elapsed" in err


def test_verify_unknown_target_is_usage_error(capsys):
    code, out, err = run_cli(capsys, "verify", "BOGUS")
    assert code == 2
    assert out == ""


def test_verify_exit_one_on_failed_tolerance(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "DEF", "--samples", "3", "--tolerance", "1e-30"
    )
    assert code == 1
    report = json.loads(out)
    assert report["passed"] is False
    assert report["records"][0]["passed"] is False


def test_verify_reports_are_byte_identical(capsys):
    args = ("verify", "numeric", "--samples", "4", "--seed", "11")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert len(report["records"]) == 25


def test_verify_csv_format(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "FOR2", "--samples", "3", "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "record_id,kind,worst,tolerance,passed,detail"
    assert lines[1].startswith("FOR2,numeric-sampled,")
    assert lines[2].startswith("FOR2_EXACT,exact-coefficients,,,True,")
    for line in lines[1:]:
        assert len(line.split(",")) == 6  # commas in detail are sanitized


def test_verify_exact_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "exact", "--exact-order", "40")
    assert code == 0
    report = json.loads(out)
    ids = [r["record_id"] for r in report["records"]]
    assert ids == [
        "FOR1_EXACT",
        "FOR2_EXACT",
        "TRIANGULAR_ANDREWS",
        "TRIANGULAR_COUNTS",
        "TRIANGULAR_DOUBLE_SUM",
    ]
    assert all(r["passed"] for r in report["records"])


def test_verify_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "verify", "FOR1", "--samples", "3", "--out", str(path)
    )
    assert code == 0
    assert out == ""
    report = json.loads(path.read_text())
    assert report["target"] == "FOR1"


def test_verify_seed_environment_default(capsys, monkeypatch):
    monkeypatch.setenv("APPELL_KIT_SEED", "42")
    code, out, _ = run_cli(capsys, "verify", "FOR1", "--samples", "3")
    assert code == 0
    assert json.loads(out)["seed"] == 42
    monkeypatch.setenv("APPELL_KIT_SEED", "not-a-number")
    code, out, _ = run_cli(capsys, "verify", "FOR1", "--samples", "3")
    assert code == 0
    assert json.loads(out)["seed"] == 0


def test_eval_kappa(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "kappa", "--a", "0.7+0.4i", "--z", "1.3-0.2j", "--u", "0.35"
    )
    assert code == 0
    assert out.strip() == "0.737152292187006+2.08245360811233j"


def test_eval_missing_argument_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "eval", "kappa", "--a", "0.5", "--z", "1.2")
    assert code == 2
    assert "requires --u" in err


def test_eval_at_pole_is_domain_error(capsys):
    code, _, err = run_cli(
        capsys, "eval", "kappa", "--a", "1", "--z", "1.2", "--u", "0.3"
    )
    assert code == 2
    assert "domain error" in err


def test_eval_bad_complex_literal(capsys):
    code, _, _ = run_cli(capsys, "eval", "theta", "--z", "huh", "--u", "0.3")
    assert code == 2


def test_qseries_triangular_counts(capsys):
    code, out, _ = run_cli(capsys, "qseries", "t3", "--order", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["variable"] == "q"
    assert payload["coefficients"] == [
        [0, 1, 1],
        [1, 3, 1],
        [2, 3, 1],
        [3, 4, 1],
        [4, 6, 1],
        [5, 3, 1],
        [6, 6, 1],
        [7, 9, 1],
    ]


def test_qseries_routes_agree(capsys):
    _, t3_out, _ = run_cli(capsys, "qseries", "t3", "--order", "7")
    _, andrews_out, _ = run_cli(capsys, "qseries", "andrews", "--order", "7")
    _, double_out, _ = run_cli(capsys, "qseries", "double_sum", "--order", "7")
    t3 = json.loads(t3_out)["coefficients"]
    assert json.loads(andrews_out)["coefficients"] == t3
    assert json.loads(double_out)["coefficients"] == t3


def test_qseries_csv(capsys):
    code, out, _ = run_cli(
        capsys, "qseries", "for1_lhs", "--order", "5", "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "exponent,numerator,denominator"
    assert lines[1] == "0,4,1"
    assert len(lines) == 13  # header + one row per exponent below trunc 2*5+2


def test_modular_subcommand(capsys):
    code, out, _ = run_cli(capsys, "modular", "1", "2", "0", "1", "--tau", "1.5i")
    assert code == 0
    payload = json.loads(out)
    assert payload["gamma"] == [1, 2, 0, 1]
    assert payload["chi"] == "1j"
    assert payload["zeta_sq"] == "(1+0j)"
    assert payload["divisibility_worst"] < 1e-10
    assert len(payload["divisibility_per_zero"]) == 9
    assert payload["divisibility_per_zero"][0] == {
        "m": -1,
        "n": -1,
        "residual": payload["divisibility_per_zero"][0]["residual"],
    }


def test_modular_rejects_non_member(capsys):
    code, _, err = run_cli(capsys, "modular", "1", "1", "0", "1")
    assert code == 2
    assert "domain error" in err


def test_modular_rejects_low_tau(capsys):
    code, _, err = run_cli(capsys, "modular", "1", "2", "0", "1", "--tau", "0.05i")
    assert code == 2
    assert "domain error" in err


def test_modular_out_file(tmp_path, capsys):
    path = tmp_path / "modular.json"
    code, out, _ = run_cli(
        capsys, "modular", "0", "-1", "1", "0", "--tau", "2i", "--out", str(path)
    )
    assert code == 0
    assert out == ""
    payload = json.loads(path.read_text())
    assert payload["zeta_sq"] == "(-0-1j)" or payload["zeta_sq"] == "-1j"


def test_missing_subcommand_is_usage_error(capsys):
    assert run_cli(capsys)[0] == 2
