"""CLI behaviour: golden outputs, exit codes, formats."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from riordan.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


# -- golden files -----------------------------------------------------------


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["triangle", "pascal", "--rows", "8"], "triangle_pascal_rows8.json"),
        (
            ["exp", "--a", "1", "--b", "1", "--n", "1", "--t", "1", "--trunc", "8"],
            "exp_creation_t1_trunc8.json",
        ),
        (
            ["check", "time-reversal", "--a", "1", "--b", "1", "--n", "1", "--dim", "6"],
            "check_time_reversal_n1_dim6.json",
        ),
    ],
)
def test_golden_outputs_are_byte_identical(argv, golden):
    code, out, _ = run_cli(argv)
    assert code == 0
    assert out.encode() == (GOLDEN / golden).read_bytes()


def test_identical_invocations_are_deterministic():
    argv = ["check", "ftrm", "--dim", "6", "--seed", "3", "--count", "5"]
    first = run_cli(argv)
    second = run_cli(argv)
    assert first == second


# -- triangle ------------------------------------------------------------------


def test_triangle_named_m():
    code, out, _ = run_cli(["triangle", "m", "--rows", "4"])
    assert code == 0
    assert json.loads(out)["rows"] == [["1"], ["0", "-1"], ["0", "0", "1"], ["0", "0", "0", "-1"]]


def test_triangle_custom_coefficients():
    code, out, _ = run_cli(["triangle", "--f", "1", "--g", "1,-1", "--rows", "3"])
    assert code == 0
    assert json.loads(out)["rows"] == [["1"], ["1", "1"], ["1", "2", "1"]]


def test_triangle_csv_format():
    code, out, _ = run_cli(["triangle", "pascal", "--rows", "3", "--format", "csv"])
    assert code == 0
    assert out == "1\n1,1\n1,2,1\n"


def test_triangle_pretty_alignment():
    code, out, _ = run_cli(["triangle", "pascal", "--rows", "3", "--pretty"])
    assert code == 0
    assert out == "1\n1 1\n1 2 1\n"


def test_unknown_triangle_name_is_a_usage_error():
    code, _, err = run_cli(["triangle", "cantor", "--rows", "3"])
    assert code == 2
    assert "unknown triangle" in err


def test_malformed_coefficients_are_a_usage_error():
    code, _, err = run_cli(["triangle", "--f", "1", "--g", "one,minus-one", "--rows", "3"])
    assert code == 2
    assert "cannot parse rational" in err


def test_zero_constant_term_is_rejected():
    code, _, err = run_cli(["triangle", "--f", "0,1", "--g", "1", "--rows", "3"])
    assert code == 2
    assert "constant term" in err


# -- exp --------------------------------------------------------------------------


def test_exp_b_zero_prints_exponential_series():
    code, out, _ = run_cli(["exp", "--a", "1", "--b", "0", "--n", "2", "--t", "1", "--trunc", "6"])
    assert code == 0
    doc = json.loads(out)
    assert doc["f"]["coeffs"] == ["1", "0", "1", "0", "1/2", "0", "1/6"]
    assert doc["g"]["coeffs"] == ["1", "0", "0", "0", "0", "0", "0"]
    assert doc["oracle_check"] == "pass"


def test_exp_at_time_zero_is_identity():
    code, out, _ = run_cli(["exp", "--a", "1", "--b", "1", "--n", "1", "--t", "0", "--trunc", "4"])
    assert code == 0
    doc = json.loads(out)
    assert doc["f"]["coeffs"][0] == "1"
    assert all(c == "0" for c in doc["f"]["coeffs"][1:])
    assert doc["g"] == doc["f"]


def test_exp_accepts_rational_and_decimal_time():
    code, out, _ = run_cli(["exp", "--a", "1", "--b", "1", "--n", "1", "--t", "0.5", "--trunc", "3"])
    assert code == 0
    assert json.loads(out)["g"]["coeffs"] == ["1", "-1/2", "0", "0"]


def test_exp_diagonal_exact_mode_violation():
    code, _, err = run_cli(["exp", "--a", "1", "--b", "1", "--n", "0", "--t", "1"])
    assert code == 3
    assert "float mode" in err


def test_exp_diagonal_float_mode():
    code, out, _ = run_cli(
        ["exp", "--a", "1", "--b", "1", "--n", "0", "--t", "1", "--trunc", "3", "--mode", "float"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["f"] == [1.0]
    assert abs(doc["g"][0] - 0.36787944117144233) < 1e-15
    diag = [doc["matrix"]["rows"][j][j] for j in range(4)]
    import math

    for j, value in enumerate(diag):
        assert abs(value - math.exp(j + 1)) < 1e-11


# -- apply ------------------------------------------------------------------------------


def test_apply_pascal_to_one():
    code, out, _ = run_cli(["apply", "--f", "1", "--g", "1,-1", "--gamma", "1", "--trunc", "6"])
    assert code == 0
    assert json.loads(out)["coeffs"] == ["1"] * 7


def test_apply_identity_echoes():
    code, out, _ = run_cli(["apply", "--f", "1", "--g", "1", "--gamma", "2,0,5", "--trunc", "4"])
    assert code == 0
    assert json.loads(out)["coeffs"] == ["2", "0", "5", "0", "0"]


def test_apply_pascal_to_x_counts():
    code, out, _ = run_cli(["apply", "--f", "1", "--g", "1,-1", "--gamma", "0,1", "--trunc", "5"])
    assert code == 0
    assert json.loads(out)["coeffs"] == ["0", "1", "2", "3", "4", "5"]


def test_apply_rejects_non_riordan_pair():
    code, _, err = run_cli(["apply", "--f", "0,1", "--g", "1", "--gamma", "1"])
    assert code == 2


# -- flow --------------------------------------------------------------------------------


def test_flow_moment_curve_rows():
    code, out, _ = run_cli(
        ["flow", "--dim", "3", "--x0", "1,0,0", "--t", "0,1,2"]
    )
    assert code == 0
    doc = json.loads(out)
    assert [row["x"] for row in doc["rows"]] == [
        ["1", "0", "0"],
        ["1", "1", "1"],
        ["1", "2", "4"],
    ]


def test_flow_time_zero_echoes_state():
    code, out, _ = run_cli(["flow", "--dim", "2", "--x0", "3,-1/2", "--t", "0"])
    assert code == 0
    assert json.loads(out)["rows"][0]["x"] == ["3", "-1/2"]


def test_flow_dim_two_line():
    code, out, _ = run_cli(["flow", "--dim", "2", "--x0", "1,0", "--t", "3"])
    assert code == 0
    assert json.loads(out)["rows"][0]["x"] == ["1", "3"]


def test_flow_rk4_columns_and_error_summary():
    code, out, _ = run_cli(
        ["flow", "--dim", "3", "--x0", "1,0,0", "--t", "1", "--rk4", "500"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["rk4_steps"] == 500
    assert doc["max_error"] < 1e-9
    assert len(doc["rows"][0]["rk4"]) == 3


def test_flow_csv_format():
    code, out, _ = run_cli(
        ["flow", "--dim", "2", "--x0", "1,0", "--t", "0,1", "--format", "csv"]
    )
    assert code == 0
    assert out == "t,x0,x1\n0,1,0\n1,1,1\n"


def test_flow_diagonal_generator_needs_float_mode():
    code, _, err = run_cli(["flow", "--n", "0", "--dim", "3", "--x0", "1,0,0", "--t", "1"])
    assert code == 3
    code, out, _ = run_cli(
        ["flow", "--n", "0", "--dim", "2", "--x0", "1,1", "--t", "1", "--mode", "float"]
    )
    assert code == 0
    doc = json.loads(out)
    import math

    assert abs(doc["rows"][0]["x"][0] - math.e) < 1e-11
    assert abs(doc["rows"][0]["x"][1] - math.e**2) < 1e-10


def test_flow_wrong_state_length():
    code, _, err = run_cli(["flow", "--dim", "3", "--x0", "1,0", "--t", "1"])
    assert code == 2


# -- check --------------------------------------------------------------------------------


def test_check_symmetry_even_n_passes():
    code, out, _ = run_cli(["check", "symmetry", "--a", "1", "--b", "1", "--n", "2", "--dim", "6"])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_check_time_reversal_even_n_fails_with_counterexample():
    code, out, _ = run_cli(
        ["check", "time-reversal", "--a", "1", "--b", "1", "--n", "2", "--dim", "6"]
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["passed"] is False
    assert doc["counterexample"]["involution"] == "M"
    assert {"i", "j", "lhs", "rhs"} <= set(doc["counterexample"])


def test_check_pseudo_involution_odd_vs_even():
    code, out, _ = run_cli(
        ["check", "pseudo-involution", "--a", "2", "--b", "3", "--n", "1", "--t", "1/2"]
    )
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run_cli(
        ["check", "pseudo-involution", "--a", "1", "--b", "1", "--n", "2"]
    )
    assert code == 1 and json.loads(out)["passed"] is False


def test_check_oracle_exp():
    code, out, _ = run_cli(
        ["check", "oracle-exp", "--a", "-2", "--b", "3", "--n", "2", "--t", "1/2", "--trunc", "10"]
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_check_ftrm_and_a_sequence_suites():
    code, out, _ = run_cli(["check", "ftrm", "--dim", "6", "--seed", "1", "--count", "10"])
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run_cli(["check", "a-sequence", "--depth", "8", "--seed", "1", "--count", "5"])
    assert code == 0 and json.loads(out)["passed"] is True


def test_check_unknown_suite_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        run_cli(["check", "trace-formula"])
    assert exc.value.code == 2


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        run_cli([])
    assert exc.value.code == 2
