import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from jordan import cli
from jordan.polyring import Poly
from jordan.scalars import parse_scalar, sqrt_exact
from jordan.verification import ReportBuilder

from conftest import F, x

DATA = Path(__file__).parent / "data"
SCHEMA = json.loads(resources.files("jordan").joinpath("schemas/report-v1.json").read_text())
REQUEST_SCHEMA = json.loads(resources.files("jordan").joinpath("schemas/request-v1.json").read_text())


def invoke(op, request, *flags, tmp_path=None, capsys=None):
    """Run the CLI in-process; returns (exit code, parsed report, raw text)."""
    path = tmp_path / "req.json"
    path.write_text(json.dumps(request) if not isinstance(request, str) else request)
    code = cli.main([op, "--input", str(path), *flags])
    text = capsys.readouterr().out
    return code, json.loads(text), text


@pytest.fixture
def run(tmp_path, capsys):
    def _run(op, request, *flags):
        return invoke(op, request, *flags, tmp_path=tmp_path, capsys=capsys)

    return _run


def poly_of(witness):
    return Poly([parse_scalar(c) for c in witness["coefficients"]])


# --- golden example -------------------------------------------------------------------

def test_golden_report_is_reproduced_byte_for_byte(capsys):
    code = cli.main(["both", "--input", str(DATA / "example_request.json")])
    assert code == 0
    assert capsys.readouterr().out == (DATA / "example_report.json").read_text()


def test_golden_report_contains_the_worked_witnesses():
    r = json.loads((DATA / "example_report.json").read_text())
    assert r["exit_code"] == 0 and r["mode_used"] == "exact"
    add, mul = r["result"]["additive"]["witnesses"], r["result"]["multiplicative"]["witnesses"]
    assert poly_of(add["E"]) == -F(1, 2) * (x - 2) ** 2
    assert poly_of(add["H"]) == -F(1, 2) * x**3 + F(5, 2) * x**2 - 4 * x + 4
    assert poly_of(mul["u"]) == F(1, 4) * x * (x**2 - 4 * x + 6)
    r2 = sqrt_exact(2)
    e = F(1, 4) * (r2 - 2) * (x**3 + (r2 - 4) * x**2 + 4 * (1 - r2) * x + 2 * r2 - 4)
    h = F(1, 2) * (r2 - 2) * (x**3 - 5 * x**2 + 8 * x - 8 - 2 * r2)
    assert poly_of(mul["e"]) == e and poly_of(mul["h"]) == h


def test_reports_validate_against_schema(run):
    for op in ("additive", "multiplicative", "both", "classify", "ad-spectrum", "Ad-spectrum"):
        _, report, _ = run(op, {"matrix": [[2, 1], [0, 3]]})
        jsonschema.validate(report, SCHEMA)
    jsonschema.validate(json.loads((DATA / "example_report.json").read_text()), SCHEMA)
    jsonschema.validate(json.loads((DATA / "example_request.json").read_text()), REQUEST_SCHEMA)


def test_console_script_runs_as_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "jordan.cli", "both", "--input", str(DATA / "example_request.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == (DATA / "example_report.json").read_text()


# --- exit codes ------------------------------------------------------------------------

def test_singular_multiplicative_exits_3(run):
    code, report, _ = run("multiplicative", {"matrix": [[0, 0], [0, 0]]})
    assert code == 3 and report["error"]["type"] == "NotInvertible"
    jsonschema.validate(report, SCHEMA)


def test_exact_unavailable_exits_4_naming_the_factor(run):
    code, report, _ = run("additive", {"matrix": [[0, 0, 2], [1, 0, 0], [0, 1, 0]], "mode": "exact"})
    assert code == 4 and report["error"]["factor"] == "x^3 - 2"
    code, report, _ = run("additive", {"matrix": [[0, 0, 2], [1, 0, 0], [0, 1, 0]]})
    assert code == 0 and report["mode_used"] == "numeric"


@pytest.mark.parametrize(
    "request_",
    [
        {"matrix": [[1, 2]]},
        {"matrix": [[1, "abc"], [0, 1]]},
        {"matrix": [[1, "sqrt(2)"], [0, 1]]},
        {"matrix": [[1, True], [0, 1]]},
        {"matrix": [[1]], "tolerance": -1},
        {"matrix": [[1]], "mode": "fast"},
        {"matrix": [[1]], "samples": 0},
        {"matrix": [[1]], "operation": "classify"},
        {},
        [1, 2],
    ],
)
def test_invalid_requests_exit_2(run, request_):
    code, report, _ = run("additive", request_)
    assert code == 2 and report["status"] == "invalid_input" and "error" in report
    jsonschema.validate(report, SCHEMA)


def test_malformed_json_exits_2(run):
    code, report, _ = run("additive", "{not json")
    assert code == 2 and report["error"]["type"] == "JSONDecodeError"


def test_failed_verification_exits_1(run, monkeypatch):
    def broken(X, d, **kw):
        rb = ReportBuilder("additive verification")
        rb.add("sum_reconstruction", False, 1.0)
        return rb.build()

    monkeypatch.setattr(cli, "verify_additive", broken)
    code, report, _ = run("additive", {"matrix": [[1, 0], [0, 2]]})
    assert code == 1 and report["error"]["failed_checks"] == ["sum_reconstruction"]
    jsonschema.validate(report, SCHEMA)


def test_non_semisimple_ad_spectrum_is_invalid_input(run):
    code, report, _ = run("ad-spectrum", {"matrix": [[0, 1], [0, 0]]})
    assert code == 2 and report["error"]["type"] == "NotSemisimple"


# --- options and determinism -------------------------------------------------------------

def test_decimal_entries_are_read_exactly(run):
    _, report, _ = run("additive", {"matrix": [[0.5, 0], [0, "1/3"]]})
    assert report["request"]["matrix"] == [["1/2", "0"], ["0", "1/3"]]


def test_timing_is_opt_in(run):
    _, plain, _ = run("classify", {"matrix": [[1, 1], [0, 1]]})
    _, timed, _ = run("classify", {"matrix": [[1, 1], [0, 1]]}, "--timing")
    assert "timing" not in plain and timed["timing"]["seconds"] >= 0


def test_flags_override_request(run):
    _, report, _ = run("additive", {"matrix": [[1]], "mode": "exact"}, "--mode", "numeric")
    assert report["request"]["mode"] == "numeric" and report["mode_used"] == "numeric"


def test_output_file(tmp_path, capsys):
    req, out = tmp_path / "r.json", tmp_path / "o.json"
    req.write_text(json.dumps({"matrix": [[1, 1], [-1, 1]]}))
    assert cli.main(["classify", "-i", str(req), "-o", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["result"]["classification"]


def test_lie_closure_samples_are_replayable(run):
    req = {"lie": {"family": "so", "p": 2, "q": 1}, "samples": 3, "seed": 7}
    code, report, text = run("lie-closure", req)
    assert code == 0
    assert [(s["kind"], s["seed"]) for s in report["result"]["samples"]] == [
        ("algebra", 7), ("algebra", 8), ("algebra", 9), ("group", 7), ("group", 8), ("group", 9)
    ]
    jsonschema.validate(report, SCHEMA)
    _, _, again = run("lie-closure", req)
    assert again == text


def test_lie_closure_on_supplied_matrix(run):
    code, report, _ = run("lie-closure", {"lie": {"family": "sl", "n": 2}, "kind": "group", "matrix": [[2, 0], [0, "1/2"]]})
    assert code == 0 and report["mode_used"] == "exact"
    code, report, _ = run("lie-closure", {"lie": {"family": "sl", "n": 2}, "kind": "algebra", "matrix": [[1, 0], [0, 1]]})
    assert code == 2 and report["error"]["type"] == "NotMember"
