"""Batch front-end.

Usage::

    capsplit allocate|diff|check|split-interval|psi-diff --in FILE [--mode exact|float] [--tolerance DEC]
    capsplit fuzz --seed N --cases N [--max-m N] [--magnitude Q] [--mode exact|float]

Scenario subcommands read a scenario file (see :mod:`capsplit.scenarios`),
evaluate the entries of their kind in file order and print one JSON record per
entry on stdout. ``diff`` and ``check`` both consume ``diff`` entries.

Exit status: 0 when everything passes, 1 on a contract failure (violated
precondition, broken identity, invalid schedule), 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import scenarios as sio
from .core import CapsplitError, NumericMode, allocate, classify_pivot, split_interval
from .decomposition import (
    DecompositionMode,
    DominancePair,
    check_dominance,
    decompose_difference,
    decompose_via_psi,
)
from .fuzz import allocation_failures, run_fuzz
from .oracle import FuzzConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_FLOAT_TOLERANCE = Fraction(1, 10**12)

# subcommand -> scenario kind it consumes
COMMAND_KINDS = {
    "allocate": "allocate",
    "diff": "diff",
    "check": "diff",
    "split-interval": "split",
    "psi-diff": "psi_diff",
}

fmt = sio.format_number


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _violations(vs) -> list:
    return [
        {"hypothesis": v.hypothesis.value, "index": v.index, "lhs": fmt(v.lhs), "rhs": fmt(v.rhs)}
        for v in vs
    ]


def _close(a, b, tol) -> bool:
    return a == b if not tol else abs(a - b) <= tol


def _allocate(v, tol):
    x, caps = v["x"], v["caps"]
    alloc = allocate(x, caps)
    failed = allocation_failures(x, alloc.schedule, tol)
    bounds = alloc.terms[0] <= caps[0] and alloc.residual >= 0 and all(
        0 <= t <= y for t, y in zip(alloc.terms[1:-1], caps[1:])
    )
    checks = {
        "conservation": _verdict("conservation" not in failed),
        "bounds": _verdict(bounds),
        "oracle_agreement": _verdict("oracle_equivalence" not in failed),
        "pivot_consistency": _verdict("pivot" not in failed),
    }
    outputs = {"terms": [fmt(t) for t in alloc.terms], "pivot": str(classify_pivot(x, alloc.schedule))}
    return outputs, checks


def _diff(v, tol):
    pair = DominancePair(v["x1"], v["caps1"], v["x2"], v["caps2"])
    mode = DecompositionMode(v.get("mode", "checked"))
    result = decompose_difference(pair, DecompositionMode.UNCHECKED, tol)
    outputs = {
        "mode": mode.value,
        "term_diffs": [fmt(d) for d in result.term_diffs],
        "signed_diffs": [fmt(d) for d in result.signed_diffs],
        "total": fmt(result.total),
        "expected": fmt(result.expected),
        "identity_holds": result.identity_holds,
        "violations": _violations(result.violations),
    }
    if mode is DecompositionMode.CHECKED:
        checks = {
            "preconditions": _verdict(not result.violations),
            "nonnegative_diffs": _verdict(result.nonneg_certified),
            "identity": _verdict(result.identity_holds),
        }
    else:
        checks = {}
    return outputs, checks


def _check(v, tol):
    pair = DominancePair(v["x1"], v["caps1"], v["x2"], v["caps2"])
    violations = check_dominance(pair)
    failed = {x.hypothesis.value for x in violations}
    checks = {h: _verdict(h not in failed) for h in ("x_order", "cap_order", "increment_budget", "partial_sum")}
    return {"violations": _violations(violations)}, checks


def _split(v, tol):
    a, b, lengths = v["a"], v["b"], v["lengths"]
    points = split_interval(a, b, lengths)
    terms = allocate(b - a, lengths).terms
    checks = {
        "endpoints": _verdict(points[0] == a and _close(points[-1], b, tol)),
        "monotone": _verdict(all(p <= q for p, q in zip(points, points[1:]))),
        "piece_lengths": _verdict(all(_close(q - p, t, tol) for p, q, t in zip(points, points[1:], terms))),
    }
    return {"breakpoints": [fmt(p) for p in points]}, checks


def _psi_diff(v, tol):
    result = decompose_via_psi(v["x"], v["y1"], v["y2"], v["psi_at_y1"], v["psi_at_y2"], tol)
    outputs = {
        "swapped": result.swapped,
        "term_diffs": [fmt(d) for d in result.term_diffs],
        "total": fmt(result.total),
        "expected": fmt(result.expected),
    }
    checks = {"nonnegative_diffs": _verdict(result.nonneg_certified), "identity": _verdict(result.identity_holds)}
    return outputs, checks


HANDLERS = {"allocate": _allocate, "diff": _diff, "check": _check, "split-interval": _split, "psi-diff": _psi_diff}


def _convert(values: dict, mode: NumericMode) -> dict:
    out = {}
    for k, v in values.items():
        if isinstance(v, list):
            out[k] = [mode.coerce(x) for x in v]
        elif isinstance(v, str):
            out[k] = v
        else:
            out[k] = mode.coerce(v)
    return out


def _echo(values: dict) -> dict:
    return {k: (v if isinstance(v, str) else [fmt(x) for x in v] if isinstance(v, list) else fmt(v)) for k, v in values.items()}


def evaluate(command: str, sf: sio.ScenarioFile, mode: NumericMode | None = None, tolerance=None):
    """Yield one report record per scenario of the kind ``command`` consumes."""
    mode = mode or sf.numeric_mode
    if mode is NumericMode.EXACT:
        tol = 0
    else:
        tol = float(tolerance if tolerance is not None else sf.tolerance if sf.tolerance is not None else DEFAULT_FLOAT_TOLERANCE)
    kind = COMMAND_KINDS[command]
    for index, scenario in enumerate(sf.scenarios):
        if scenario.kind != kind:
            continue
        values = _convert(scenario.values, mode)
        record = {"index": index, "command": command, "numeric_mode": mode.value, "inputs": _echo(values)}
        try:
            outputs, checks = HANDLERS[command](values, tol)
        except CapsplitError as exc:
            record.update(status="fail", error={"type": type(exc).__name__, "message": str(exc)})
        else:
            failed = sorted(k for k, c in checks.items() if c != "pass")
            record.update(outputs=outputs, checks=checks, status=_verdict(not failed))
        yield record


def _number_arg(text: str) -> Fraction:
    try:
        return sio.parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capsplit", description="Waterfall split kernel: batch reports and fuzzing.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMAND_KINDS:
        p = sub.add_parser(name, help=f"evaluate {COMMAND_KINDS[name]} scenarios")
        p.add_argument("--in", dest="infile", required=True, help="scenario file, '-' for stdin")
        p.add_argument("--mode", choices=[m.value for m in NumericMode], help="override the file's numeric_mode")
        p.add_argument("--tolerance", type=_number_arg, help="absolute tolerance for float mode checks")
    p = sub.add_parser("fuzz", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--magnitude", type=_number_arg, default=Fraction(100))
    p.add_argument("--denominator-bound", type=int, default=12)
    p.add_argument("--mode", choices=[m.value for m in NumericMode], default="exact")
    p.add_argument("--tolerance", type=_number_arg)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _fuzz(args, out, err) -> int:
    try:
        config = FuzzConfig(
            seed=args.seed,
            cases=args.cases,
            max_m=args.max_m,
            magnitude_bound=args.magnitude,
            denominator_bound=args.denominator_bound,
            mode=NumericMode(args.mode),
        )
    except ValueError as exc:
        print(f"capsplit fuzz: {exc}", file=err)
        return EXIT_USAGE
    tolerance = None if args.tolerance is None else (0 if config.mode is NumericMode.EXACT else float(args.tolerance))
    report = run_fuzz(config, tolerance)
    print(json.dumps({"summary": report.as_dict()}), file=out)
    if not report.ok:
        f = report.first_failure
        print(f"capsplit fuzz: {f['suite']} failed at seed {f['seed']} index {f['index']}: {f['detail']}", file=err)
        return EXIT_FAIL
    return EXIT_OK


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.command == "fuzz":
        return _fuzz(args, out, err)

    try:
        sf = sio.loads(_read(args.infile))
    except OSError as exc:
        print(f"capsplit {args.command}: cannot read {args.infile}: {exc.strerror}", file=err)
        return EXIT_USAGE
    except sio.ScenarioError as exc:
        print(f"capsplit {args.command}: {args.infile}: {exc}", file=err)
        return EXIT_USAGE
    mode = NumericMode(args.mode) if args.mode else None
    if args.tolerance is not None and (mode or sf.numeric_mode) is not NumericMode.FLOAT:
        print(f"capsplit {args.command}: --tolerance needs float mode", file=err)
        return EXIT_USAGE

    status = EXIT_OK
    for record in evaluate(args.command, sf, mode, args.tolerance):
        print(json.dumps(record), file=out)
        if record["status"] != "pass":
            status = EXIT_FAIL
            reason = record["error"]["message"] if "error" in record else ", ".join(
                k for k, c in record["checks"].items() if c != "pass"
            )
            print(f"capsplit {args.command}: scenario {record['index']}: {reason}", file=err)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
