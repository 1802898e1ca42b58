"""Command-line interface: outputs, exit codes, schema conformance, determinism."""

import json
from pathlib import Path

import jsonschema
import pytest

from agdeform import cli

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "src/agdeform/schemas/report.schema.json").read_text()
)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload, err


def test_flow_point_text(capsys):
    code, out, err = run_cli(capsys, "flow", "--point", "1,3;2,0;0,0", "--t", "1")
    assert code == 0
    assert out == "1/2,3/2;1,-3;0,0\n"
    assert err == ""


def test_flow_point_json(capsys):
    code, payload, _ = run_json(capsys, "flow", "--point", "1,3;2,0;0,0", "--t", "1")
    assert code == 0
    assert payload["command"] == "flow"
    assert payload["flowed"] == "1/2,3/2;1,-3;0,0"


def test_flow_negative_t_equals_form(capsys):
    code, out, _ = run_cli(capsys, "flow", "--point", "1,3;2,0;0,0", "--t=-1/4")
    assert code == 0
    assert out.strip() == cli_flow_reference("1,3;2,0;0,0", "-1/4")


def cli_flow_reference(point_text, t_text):
    from agdeform.exactalg import parse_rational
    from agdeform.model import Chart, ChartPoint, flow_point

    chart = Chart(3)
    return flow_point(ChartPoint.parse(chart, point_text), parse_rational(t_text)).format()


def test_flow_pole_exit_2(capsys):
    code, out, err = run_cli(capsys, "flow", "--point", "2,0;0,0;0,0", "--t=-1/2")
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_flow_suite_json(capsys):
    code, payload, _ = run_json(capsys, "flow", "--n", "3")
    assert code == 0
    ids = [r["checkId"] for r in payload["reports"]]
    assert ids == sorted(ids)
    assert any(i.startswith("flow.group_law") for i in ids)
    assert all(r["status"] == "pass" for r in payload["reports"])


def test_bad_point_exit_2(capsys):
    code, _, err = run_cli(capsys, "flow", "--point", "1,2;3", "--t", "1")
    assert code == 2
    assert "error:" in err


def test_verify_bad_n_exit_2(capsys):
    code, _, err = run_cli(capsys, "verify", "--n", "1")
    assert code == 2
    assert "error:" in err


def test_phi_requires_n3(capsys):
    code, _, err = run_cli(capsys, "phi", "--n", "2")
    assert code == 2
    assert "n >= 3" in err


def test_phi_emit_latex(capsys):
    code, payload, _ = run_json(capsys, "phi", "--n", "3", "--emit", "latex")
    assert code == 0
    expressions = payload["expressions"]
    assert "q" in expressions and "phiPrime" in expressions and "phi2" in expressions
    assert "\\frac" in expressions["phiPrime"] or "x_{11}" in expressions["phiPrime"]
    assert all(r["status"] == "pass" for r in payload["reports"])


def test_torsion_sweep_json(capsys):
    code, payload, _ = run_json(
        capsys, "torsion", "--n", "3", "--c", "1,0", "--sample-balls", "2", "--seed", "0"
    )
    assert code == 0
    points = payload["points"]
    assert len(points) == 200
    assert all(rec["lemmaVerdict"] and not rec["membershipVerdict"] for rec in points)
    assert all(r["status"] == "pass" for r in payload["reports"])


def test_torsion_bad_c_exit_2(capsys):
    code, _, err = run_cli(capsys, "torsion", "--n", "3", "--c", "1,zzz")
    assert code == 2
    assert "error:" in err


def test_curvature_kappa_output(capsys):
    code, payload, _ = run_json(capsys, "curvature", "--n", "3", "--r", "2", "--emit", "latex")
    assert code == 0
    assert payload["kappa"]["r"] == 2
    assert "latex" in payload["kappa"]
    assert all(r["status"] == "pass" for r in payload["reports"])


def test_curvature_r_out_of_range(capsys):
    code, _, err = run_cli(capsys, "curvature", "--n", "3", "--r", "1")
    assert code == 2
    assert "error:" in err


def test_reptheory_surjective_exit_codes(capsys):
    code2, payload2, _ = run_json(capsys, "reptheory", "--n", "2", "--check", "surjective")
    assert code2 == 0
    assert payload2["rank"]["surjective"] is True
    code3, payload3, _ = run_json(capsys, "reptheory", "--n", "3", "--check", "surjective")
    assert code3 == 1
    assert payload3["rank"]["surjective"] is False
    assert payload3["rank"]["complementDim"] == 24


def test_reptheory_suite_with_dimensions(capsys):
    code, payload, _ = run_json(capsys, "reptheory", "--n", "2")
    assert code == 0
    assert payload["dimensions"]["n"] == 2
    assert payload["rank"]["rank"] == 24
    assert all(r["status"] == "pass" for r in payload["reports"])


def test_verify_quick_byte_identical(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--n", "2", "--format", "json")
    code2, out2, _ = run_cli(capsys, "verify", "--n", "2", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    jsonschema.validate(payload, SCHEMA)
    assert all(r["status"] == "pass" for r in payload["reports"])
    assert all("elapsedMs" not in r for r in payload["reports"])


def test_timings_flag_adds_elapsed(capsys):
    code, payload, _ = run_json(capsys, "verify", "--n", "2", "--timings")
    assert code == 0
    assert all("elapsedMs" in r for r in payload["reports"])


def test_text_output_has_summary(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].endswith("fail")
    assert any(line.startswith("PASS") for line in lines)


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
