"""Command-line entry point: ``isopencil analyze|range|lax|similar``.

Exit codes: 0 analysis completed (whatever the verdict), 1 input error,
2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import lax, numrange, symmetry
from .analysis import AnalyzeConfig, emit_support_csv, matrix_to_json, parse_matrix, run_analyze
from .errors import NumericalFailure

log = logging.getLogger("isopencil")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    B = parse_matrix(args.file)
    cfg = AnalyzeConfig(samples=args.samples, tol=args.tol, word_tol=args.word_tol, lax_steps=args.lax_steps)
    _emit(run_analyze(B, cfg).to_json(), args.out)
    return EXIT_OK


def cmd_range(args) -> int:
    B = parse_matrix(args.file)
    emit_support_csv(B, args.k, args.samples, args.csv)
    log.info("wrote %d rows to %s", args.samples, args.csv)
    return EXIT_OK


def cmd_lax(args) -> int:
    B = parse_matrix(args.file)
    traj = lax.integrate_U(B, args.steps)
    summary = {
        "steps": traj.steps,
        "max_similarity_error": traj.max_similarity_error,
        "max_unitarity_error": traj.max_unitarity_error,
    }
    if args.out:
        doc = dict(summary)
        doc["t"] = [float(t) for t in traj.t_grid]
        doc["U"] = [matrix_to_json(U)["rows"] for U in traj.U_samples]
        doc["P"] = [matrix_to_json(P)["rows"] for P in traj.P_samples]
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
            fh.write("\n")
    sys.stdout.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_similar(args) -> int:
    B = parse_matrix(args.file)
    sol = symmetry.solve_K(B)
    doc = {"exists": bool(sol.exists), "residual": sol.residual}
    if sol.exists:
        doc["K"] = matrix_to_json(sol.K)
        doc["conjugation_error"] = symmetry.verify_rotation_similarity(B, sol.K, args.samples)
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isopencil", description="Isospectrality of Re(e^{-it} B).")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run every check and print a JSON report")
    a.add_argument("file")
    a.add_argument("--samples", type=int, default=numrange.DEFAULT_SAMPLES)
    a.add_argument("--tol", type=float, default=numrange.DISK_TOL)
    a.add_argument("--word-tol", type=float, default=1e-9)
    a.add_argument("--lax-steps", type=int, default=None, help="also integrate the Lax flow")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("range", help="export the rank-k support function as CSV")
    r.add_argument("file")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--samples", type=int, default=numrange.DEFAULT_SAMPLES)
    r.add_argument("--csv", required=True)
    r.set_defaults(func=cmd_range)

    x = sub.add_parser("lax", help="integrate U' = P(t) U and report errors")
    x.add_argument("file")
    x.add_argument("--steps", type=int, default=lax.DEFAULT_STEPS)
    x.add_argument("--out")
    x.set_defaults(func=cmd_lax)

    s = sub.add_parser("similar", help="solve [K, B] = -iB for skew-adjoint K")
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=64)
    s.set_defaults(func=cmd_similar)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    np.set_printoptions(precision=6, suppress=True)
    try:
        return args.func(args)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
