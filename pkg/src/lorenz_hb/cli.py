"""Command-line interface: ``find``, ``verify`` and ``sample``.

Exit status: 0 success, 2 usage error, 3 solver failure, 4 verification
failure (closure above threshold), 5 I/O or parse error.
"""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import io
from .lorenz import LorenzParams
from .newton import (CycleResult, NewtonConfig, SolverError, default_schedule,
                     run_continuation)
from .system import assemble_residual
from .taylor import IntegrationError, TaylorConfig, matching_digits, verify_orbit

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4, 5
SEED_H = 5


class UsageError(Exception):
    pass


def _parse_schedule(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad schedule {text!r}") from None


def _fmt_state(x) -> str:
    return "(" + ", ".join(f"{float(v):.10f}" for v in x) + ")"


def cmd_find(args, out) -> int:
    seed = None
    if args.seed:
        try:
            seed, file_params = io.read_coefficients(args.seed)
        except (OSError, io.FormatError) as exc:
            print(f"error: cannot read seed {args.seed}: {exc}", file=sys.stderr)
            return EXIT_IO
        del file_params  # parameters come from the command line
    try:
        params = LorenzParams(args.sigma, args.r, args.b)
        if args.schedule:
            schedule = _parse_schedule(args.schedule)
            if args.h is not None and schedule and schedule[-1] != args.h:
                raise UsageError(f"schedule ends at {schedule[-1]} but --h is {args.h}")
        else:
            h = 35 if args.h is None else args.h
            start = SEED_H if seed is None else min(SEED_H, h)
            if seed is None and h < SEED_H:
                raise UsageError(f"the built-in seed needs --h >= {SEED_H}")
            schedule = default_schedule(h, start=start)
        if seed is None and schedule and schedule[0] < SEED_H:
            raise UsageError(f"the built-in seed needs the schedule to start at h >= {SEED_H}")
        cfg = NewtonConfig(tol=args.tol, max_iter=args.max_iter)
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result = run_continuation(schedule, params, cfg, seed=seed)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"solver failure at stage h={exc.stage_h}: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    print(f"T = {result.period:.12f}", file=out)
    print(f"X(0) = {_fmt_state(result.initial_condition)}", file=out)
    print(f"residual = {result.residual_norm:.3e}", file=out)
    for h, n in result.iterations_per_stage:
        print(f"stage h={h}: {n} iterations", file=out)
    try:
        io.write_coefficients(args.out, result.state, params)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        state, params = io.read_coefficients(args.file)
    except (OSError, io.FormatError) as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    if not state.omega > 0:
        print("error: omega must be positive", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = TaylorConfig(term_tol=args.term_tol, max_order=args.order,
                           precision_bits=args.precision_bits)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cycle = CycleResult(state, params, float(np.max(np.abs(assemble_residual(state, params)))))
    try:
        rep = verify_orbit(cycle, params, cfg)
    except IntegrationError as exc:
        print(f"integration failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY

    print(f"T = {cycle.period:.12f}", file=out)
    print(f"X(0) = {_fmt_state(cycle.initial_condition)}", file=out)
    print(f"forward closure error = {rep.forward_closure_error:.3e} "
          f"({matching_digits(rep.forward_closure_error)} matching decimal digits)", file=out)
    print(f"backward recovery error = {rep.backward_recovery_error:.3e} "
          f"({matching_digits(rep.backward_recovery_error)} matching decimal digits)", file=out)
    print(f"steps = {rep.steps_taken}", file=out)
    if rep.forward_closure_error > args.closure_tol:
        print(f"not a cycle: closure error exceeds {args.closure_tol:.1e}", file=out)
        return EXIT_VERIFY
    print("cycle verified", file=out)
    return EXIT_OK


def cmd_sample(args, out) -> int:
    if args.n < 2:
        print("usage error: --n must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        state, _ = io.read_coefficients(args.file)
        rows = io.sample(state, args.n)
        io.write_trajectory(args.out, rows)
    except (OSError, io.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.n} samples over T = {state.period:.12f} to {args.out}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorenz-hb",
        description="Harmonic-balance search and Taylor-series verification of Lorenz cycles.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log Newton progress")
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("find", help="solve the balance equations with continuation in h")
    f.add_argument("--h", type=int, default=None, help="target number of harmonics (default 35)")
    f.add_argument("--schedule", help="comma-separated harmonic counts, e.g. 5,10,35")
    f.add_argument("--tol", type=float, default=1e-8, help="residual max-norm tolerance")
    f.add_argument("--max-iter", type=int, default=50)
    f.add_argument("--seed", help="coefficient file used as the initial guess "
                                  "(default: built-in h=5 seed)")
    f.add_argument("--sigma", type=float, default=10.0)
    f.add_argument("--r", type=float, default=28.0)
    f.add_argument("--b", type=float, default=8.0 / 3.0)
    f.add_argument("--out", default="cycle.txt", help="coefficient file to write")
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify", help="check a cycle by Taylor-series integration")
    v.add_argument("file")
    v.add_argument("--term-tol", type=float, default=1e-16)
    v.add_argument("--order", type=int, default=20)
    v.add_argument("--precision-bits", type=int, default=53,
                   help="working precision; values above 53 use mpmath")
    v.add_argument("--closure-tol", type=float, default=1e-5,
                   help="largest forward closure error accepted as a cycle")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample", help="tabulate the cycle over one period")
    s.add_argument("file")
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--out", default="trajectory.csv")
    s.set_defaults(func=cmd_sample)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    with np.errstate(all="ignore"):
        return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
