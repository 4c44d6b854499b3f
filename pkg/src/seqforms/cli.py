"""Command-line entry point.

Turns JSON sequence rules into classification, form-assessment,
reconstruction and scenario reports. Reports are JSON (schema "seqforms/1")
or flat CSV; the report body is byte-stable for fixed inputs, with runtime
kept in a separate metadata block.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
import time

import numpy as np

from .classify import classify_finite, diagnose_asymptotic
from .core import DEFAULT_TOL, CoeffVector, Tolerances, TruncationLadder
from .errors import SeqFormsError
from .forms import zero_closed_check
from .operators import build_bundle
from .reconstruct import canonical_dual, reconstruct_with, reproducing_pair_duals
from .scenarios import run_scenario, scenario_ids
from .sequences import spec_from_json

SCHEMA = "seqforms/1"


class UsageError(Exception):
    """Bad arguments or unreadable/invalid input files (exit code 2)."""


def _ladder_arg(text: str) -> TruncationLadder:
    try:
        sizes = tuple(int(p) for p in text.split(","))
        return TruncationLadder(sizes)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad ladder {text!r}: {exc}") from exc


def _load_sequence(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
        return spec_from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot load sequence rule from {path}: {exc}") from exc


def _tolerances(args) -> Tolerances:
    kwargs = {}
    if getattr(args, "tol_eq", None) is not None:
        kwargs["eq_tol"] = args.tol_eq
    if getattr(args, "tol_rank", None) is not None:
        kwargs["rank_tol"] = args.tol_rank
    try:
        return dataclasses.replace(DEFAULT_TOL, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqforms",
        description="numerical workbench for sequence-defined sesquilinear forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol-eq", type=float, default=None,
                       help="override the equality tolerance")
        p.add_argument("--tol-rank", type=float, default=None,
                       help="override the relative rank cutoff")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("classify", help="classify one sequence at a truncation")
    p.add_argument("--spec", required=True, help="sequence rule JSON file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, default=None, help="default: dim")
    p.add_argument("--ladder", type=_ladder_arg, default=None,
                   help="comma-separated sizes for an asymptotic diagnosis")
    add_common(p)

    p = sub.add_parser("form-assess", help="assess the two-sequence pair form")
    p.add_argument("--left", required=True, help="rule JSON for the left sequence")
    p.add_argument("--right", required=True, help="rule JSON for the right sequence")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, default=None, help="default: dim")
    add_common(p)

    p = sub.add_parser("reconstruct",
                       help="canonical or pair duals with residual checks")
    p.add_argument("--spec", default=None,
                   help="rule JSON for a single sequence (canonical dual)")
    p.add_argument("--left", default=None, help="rule JSON for the left sequence")
    p.add_argument("--right", default=None, help="rule JSON for the right sequence")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, default=None, help="default: dim")
    p.add_argument("--trials", type=int, default=50,
                   help="number of random probe vectors")
    add_common(p)

    p = sub.add_parser("scenario", help="run one catalog scenario")
    p.add_argument("--id", required=True, dest="scenario_id")
    p.add_argument("--ladder", type=_ladder_arg, default=None)
    add_common(p)

    p = sub.add_parser("list", help="list the scenario catalog")
    add_common(p)

    return parser


def _report_classify(args, tol):
    spec = _load_sequence(args.spec)
    count = args.count if args.count is not None else args.dim
    bundle = build_bundle(spec, args.dim, count, tol)
    rep = classify_finite(bundle, tol)
    out = rep.to_dict()
    if args.ladder is not None:
        out["asymptotic"] = diagnose_asymptotic(spec, args.ladder, tol).to_dict()
    return out


def _report_form_assess(args, tol):
    left = _load_sequence(args.left)
    right = _load_sequence(args.right)
    count = args.count if args.count is not None else args.dim
    fa = zero_closed_check(left, right, args.dim, count, tol)
    return fa.to_dict(include_matrix=args.dim <= 64)


def _residual_stats(systems, dim, trials):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(trials):
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        f = CoeffVector(z / np.linalg.norm(z))
        for system in systems:
            _, res = reconstruct_with(system, f)
            worst = max(worst, res)
    return worst


def _report_reconstruct(args, tol):
    count = args.count if args.count is not None else args.dim
    pair = args.left is not None and args.right is not None
    if args.spec is not None and not pair:
        spec = _load_sequence(args.spec)
        bundle = build_bundle(spec, args.dim, count, tol)
        systems = [canonical_dual(bundle, tol)]
    elif pair and args.spec is None:
        left = _load_sequence(args.left)
        right = _load_sequence(args.right)
        fa = zero_closed_check(left, right, args.dim, count, tol)
        b_left = build_bundle(left, args.dim, count, tol)
        b_right = build_bundle(right, args.dim, count, tol)
        systems = list(reproducing_pair_duals(fa, b_left, b_right, tol))
    else:
        raise UsageError(
            "reconstruct needs either --spec or both --left and --right"
        )
    worst = _residual_stats(systems, args.dim, args.trials)
    return {
        "systems": [s.to_dict(include_columns=args.dim <= 64) for s in systems],
        "max_residual": worst,
        "trials": args.trials,
        "dim": args.dim,
        "count": count,
    }


def _report_scenario(args, tol):
    report = run_scenario(args.scenario_id, args.ladder, tol)
    return report.to_dict(include_runtime=False), report.runtime


def _flatten(prefix, obj, row):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, row)
    elif isinstance(obj, list):
        # matrices and other nested lists stay JSON-only; scalar entries and
        # records inside lists are flattened positionally
        for i, v in enumerate(obj):
            if isinstance(v, (dict, int, float, str, bool, type(None))):
                _flatten(f"{prefix}[{i}]", v, row)
    else:
        row[prefix] = obj


def _emit(payload, args):
    if args.format == "csv":
        row = {}
        _flatten("", payload["report"], row)
        row["schema"] = payload["schema"]
        row["command"] = payload["command"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        keys = list(row)
        writer.writerow(keys)
        writer.writerow([row[k] for k in keys])
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        tol = _tolerances(args)
        t0 = time.perf_counter()
        runtime = None
        if args.command == "classify":
            report = _report_classify(args, tol)
        elif args.command == "form-assess":
            report = _report_form_assess(args, tol)
        elif args.command == "reconstruct":
            report = _report_reconstruct(args, tol)
        elif args.command == "scenario":
            report, runtime = _report_scenario(args, tol)
        else:
            report = {"scenarios": scenario_ids()}
        if runtime is None:
            runtime = time.perf_counter() - t0
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SeqFormsError as exc:
        error = {
            "schema": SCHEMA,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        sys.stderr.write(json.dumps(error, indent=2) + "\n")
        return 1

    payload = {
        "schema": SCHEMA,
        "command": args.command,
        "report": report,
        "meta": {"runtime_s": runtime},
    }
    try:
        _emit(payload, args)
    except OSError as exc:
        sys.stderr.write(f"error: cannot write output: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
