"""
Command-line front end.

    jordan <operation> [--input PATH] [--output PATH] [--mode auto|exact|numeric]
                       [--tolerance T] [--seed N] [--samples K] [--timing]

The request is a JSON object read from ``--input`` (or standard input); the
report is JSON on ``--output`` (or standard output).  Exit codes:

    0  computed, every verification passed
    1  computed, some verification failed
    2  invalid input
    3  singular matrix where an invertible one is needed
    4  exact mode requested but unavailable
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .corpus import random_algebra_element, random_group_element
from .decompose import additive_jordan, multiplicative_jordan, verify_additive, verify_multiplicative
from .errors import (
    ExactModeUnavailable,
    JordanError,
    NotInvertible,
    NotMember,
    NotSemisimple,
    ShapeError,
    SizeLimit,
)
from .exactmat import SquareMatrix
from .lie import (
    Ad_spectrum_check,
    LieStructure,
    ad_spectrum_check,
    closure_check_algebra,
    closure_check_group,
)
from .scalars import parse_scalar
from .spectral import classify_operator
from .verification import VerificationReport

SCHEMA_VERSION = "1.0"
OPERATIONS = ("additive", "multiplicative", "both", "classify", "ad-spectrum", "Ad-spectrum", "lie-closure")
MODES = ("auto", "exact", "numeric")
DEFAULT_TOLERANCE = 1e-9
DEFAULT_SAMPLES = 100

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_SINGULAR, EXIT_EXACT = range(5)


class InvalidRequest(ValueError):
    pass


# ---------------------------------------------------------------------------
# request parsing
# ---------------------------------------------------------------------------

def _entry(v):
    if isinstance(v, bool):
        raise InvalidRequest("matrix entries must be numbers or strings")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        # JSON decimals are read as the exact decimal they print as
        return parse_scalar(repr(v))
    if isinstance(v, str):
        try:
            val = parse_scalar(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidRequest(f"cannot parse matrix entry {v!r}") from exc
        if not isinstance(val, Fraction):
            raise InvalidRequest(f"matrix entries must be rational, got {v!r}")
        return val
    raise InvalidRequest("matrix entries must be numbers or strings")


def parse_matrix(data) -> SquareMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InvalidRequest("matrix must be a non-empty list of rows")
    n = len(data)
    if any(len(r) != n for r in data):
        raise InvalidRequest("matrix must be square")
    return SquareMatrix([[_entry(v) for v in r] for r in data])


def build_request(operation: str, raw: dict, args) -> dict:
    if not isinstance(raw, dict):
        raise InvalidRequest("request must be a JSON object")
    if "operation" in raw and raw["operation"] != operation:
        raise InvalidRequest(f"request says {raw['operation']!r} but the subcommand is {operation!r}")
    req = {"operation": operation}
    req["mode"] = args.mode or raw.get("mode", "auto")
    if req["mode"] not in MODES:
        raise InvalidRequest(f"mode must be one of {', '.join(MODES)}")
    tol = args.tolerance if args.tolerance is not None else raw.get("tolerance", DEFAULT_TOLERANCE)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        raise InvalidRequest("tolerance must be a positive number")
    req["tolerance"] = float(tol)
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise InvalidRequest("seed must be an integer")
    req["seed"] = seed
    samples = args.samples if args.samples is not None else raw.get("samples", DEFAULT_SAMPLES)
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 1:
        raise InvalidRequest("samples must be a positive integer")
    req["samples"] = samples
    if "matrix" in raw:
        req["matrix"] = parse_matrix(raw["matrix"])
    elif operation != "lie-closure":
        raise InvalidRequest("request needs a 'matrix'")
    if operation == "lie-closure":
        if "lie" not in raw:
            raise InvalidRequest("lie-closure needs a 'lie' structure")
        try:
            req["lie"] = LieStructure.from_json(raw["lie"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidRequest(f"bad lie structure: {exc}") from exc
        kind = raw.get("kind", "both")
        if kind not in ("algebra", "group", "both"):
            raise InvalidRequest("kind must be 'algebra', 'group' or 'both'")
        if "matrix" in req and kind == "both":
            raise InvalidRequest("a supplied matrix needs kind 'algebra' or 'group'")
        req["kind"] = kind
    return req


def _echo(req: dict) -> dict:
    out = {}
    for k, v in req.items():
        if isinstance(v, SquareMatrix):
            out[k] = v.to_json()["entries"]
        elif isinstance(v, LieStructure):
            out[k] = v.to_json()
        else:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _verification(*reports: VerificationReport) -> dict:
    return {
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }


def _additive(req):
    d = additive_jordan(req["matrix"], req["mode"])
    return {"additive": d.to_json()}, d.mode, [verify_additive(req["matrix"], d, tolerance=_tol(req, d.E))]


def _multiplicative(req):
    d = multiplicative_jordan(req["matrix"], req["mode"])
    rep = verify_multiplicative(req["matrix"], d, tolerance=_tol(req, d.e))
    return {"multiplicative": d.to_json()}, d.mode, [rep]


def _tol(req, component: SquareMatrix):
    """User tolerance scaled like the library default; unused for exact results."""
    if component.is_exact():
        return None
    return req["tolerance"] * req["matrix"].n * max(1.0, req["matrix"].frobenius_norm())


def _both(req):
    r1, m1, v1 = _additive(req)
    r2, m2, v2 = _multiplicative(req)
    used = m1 if m1 == m2 else "mixed"
    return {**r1, **r2}, used, v1 + v2


def _classify(req):
    c = classify_operator(req["matrix"], req["mode"])
    out = {"classification": c.to_json()}
    used = "numeric"
    if c.spectral is not None:
        out["spectral"] = c.spectral.to_json()
        used = c.spectral.mode
    return out, used, []


def _ad(req):
    rep = ad_spectrum_check(req["matrix"], req["mode"])
    return {}, "exact" if "(exact)" in rep.title else "numeric", [rep]


def _Ad(req):
    rep = Ad_spectrum_check(req["matrix"], req["mode"])
    return {}, "numeric" if "(numeric)" in rep.title else "exact", [rep]


def _lie_closure(req):
    L = req["lie"]
    tol = req["tolerance"]
    reports, samples = [], []
    if "matrix" in req:
        check = closure_check_algebra if req["kind"] == "algebra" else closure_check_group
        reports.append(check(req["matrix"], L, req["mode"], tol))
    else:
        family_n = L.n
        if L.family == "so" and (L.p, L.q) != (2, 1):
            raise InvalidRequest("random sampling supports so(2,1) only; supply a matrix for other signatures")
        kinds = ("algebra", "group") if req["kind"] == "both" else (req["kind"],)
        for kind in kinds:
            for i in range(req["samples"]):
                seed = req["seed"] + i
                if kind == "algebra":
                    X = random_algebra_element(L.family, family_n, seed)
                    rep = closure_check_algebra(X, L, req["mode"], tol)
                else:
                    g = random_group_element(L.family, family_n, seed)
                    rep = closure_check_group(g, L, req["mode"], tol)
                reports.append(rep)
                samples.append({"kind": kind, "seed": seed, "passed": rep.passed})
    modes = sorted({"numeric" if "(numeric)" in r.title else "exact" for r in reports})
    used = modes[0] if len(modes) == 1 else "mixed"
    out = {"samples": samples} if samples else {}
    return out, used, reports


HANDLERS = {
    "additive": _additive,
    "multiplicative": _multiplicative,
    "both": _both,
    "classify": _classify,
    "ad-spectrum": _ad,
    "Ad-spectrum": _Ad,
    "lie-closure": _lie_closure,
}


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def _error(kind: str, exc: BaseException, **extra) -> dict:
    err = {"type": kind, "message": str(exc)}
    err.update(extra)
    return err


def run(operation: str, raw, args) -> tuple[int, dict]:
    """Execute one request; returns ``(exit_code, report)``."""
    report: dict = {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "operation": operation}
    t0 = time.perf_counter()
    try:
        req = build_request(operation, raw, args)
        report["request"] = _echo(req)
        result, used, reports = HANDLERS[operation](req)
        report["mode_used"] = used
        report["result"] = result
        report["verification"] = _verification(*reports)
        code = EXIT_OK if report["verification"]["passed"] else EXIT_VERIFY
        if code:
            failed = [c["name"] for r in report["verification"]["reports"] for c in r["checks"] if not c["passed"]]
            report["error"] = {"type": "VerificationFailed", "message": "some checks failed", "failed_checks": failed}
    except NotInvertible as exc:
        code = EXIT_SINGULAR
        report["error"] = _error("NotInvertible", exc)
    except ExactModeUnavailable as exc:
        code = EXIT_EXACT
        extra = {"factor": exc.factor.pretty()} if getattr(exc, "factor", None) is not None else {}
        report["error"] = _error("ExactModeUnavailable", exc, **extra)
    except (InvalidRequest, ShapeError, SizeLimit, NotSemisimple, NotMember) as exc:
        code = EXIT_INPUT
        report["error"] = _error(type(exc).__name__, exc)
    except JordanError as exc:
        code = EXIT_VERIFY
        report["error"] = _error(type(exc).__name__, exc)
    report["status"] = {0: "ok", 1: "verification_failed", 2: "invalid_input", 3: "singular", 4: "exact_unavailable"}[code]
    report["exit_code"] = code
    if getattr(args, "timing", False):
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    return code, report


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jordan", description="Jordan decompositions with polynomial witnesses.")
    ap.add_argument("--version", action="version", version=f"jordan {__version__}")
    sub = ap.add_subparsers(dest="operation", required=True)
    for op in OPERATIONS:
        p = sub.add_parser(op)
        p.add_argument("--input", "-i", help="request JSON (default: standard input)")
        p.add_argument("--output", "-o", help="report JSON (default: standard output)")
        p.add_argument("--mode", choices=MODES)
        p.add_argument("--tolerance", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identical output)")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        raw = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        code, report = EXIT_INPUT, {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "operation": args.operation,
            "status": "invalid_input",
            "exit_code": EXIT_INPUT,
            "error": _error(type(exc).__name__, exc),
        }
    else:
        code, report = run(args.operation, raw, args)
    out = json.dumps(report, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
