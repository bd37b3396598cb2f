"""Command-line interface.

Subcommands:
    fig2    control-vs-cascade comparison sweep to CSV (and optional SVG)
    sweep   run a config-file driven parameter sweep to CSV
    point   evaluate one quantity at one parameter point
    verify  run the seeded oracle-equivalence and invariant suite

Exit code is 0 on success and 1 with a one-line diagnostic on any error.
"""

from __future__ import annotations

import argparse
import sys

from .selfcheck import run_all_checks
from .sweep import (
    DEFAULT_AXIS,
    DEFAULT_PROBE,
    DEFAULT_XI,
    NOISE_KINDS,
    QUANTITIES,
    compute_quantity,
    emit_csv,
    emit_svg,
    fig2_preset,
    format_number,
    parse_config,
    run_sweep,
)


def _parse_triple(raw: str) -> tuple[float, float, float]:
    parts = raw.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected X,Y,Z, got {raw!r}")
    try:
        return tuple(float(s) for s in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three numbers, got {raw!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icoswitch",
        description="Switched quantum channel with indefinite causal order: "
        "noisy qubit phase-estimation sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fig2 = sub.add_parser("fig2", help="control-vs-cascade sweep over the noise level")
    fig2.add_argument("--steps", type=int, default=201, help="grid points on [0, 1] (default 201)")
    fig2.add_argument(
        "--xi", type=float, default=DEFAULT_XI, help="phase in radians (default pi/5)"
    )
    fig2.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    fig2.add_argument("--svg", default=None, help="also write an SVG line plot here")
    fig2.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")

    sweep = sub.add_parser("sweep", help="run a sweep described by a config file")
    sweep.add_argument("--config", required=True, help="path to the key = value config")
    sweep.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    sweep.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")

    point = sub.add_parser("point", help="print one quantity at one parameter point")
    point.add_argument("--noise", choices=NOISE_KINDS, default="bitflip")
    point.add_argument("--p", type=float, required=True, help="noise level in [0, 1]")
    point.add_argument("--pc", type=float, default=0.5, help="control weight (default 0.5)")
    point.add_argument("--xi", type=float, default=DEFAULT_XI, help="phase in radians")
    point.add_argument("--axis", type=_parse_triple, default=DEFAULT_AXIS, help="rotation axis X,Y,Z")
    point.add_argument("--probe", type=_parse_triple, default=DEFAULT_PROBE, help="probe Bloch X,Y,Z")
    point.add_argument("--quantity", choices=QUANTITIES, required=True)

    sub.add_parser("verify", help="run the oracle-equivalence and invariant suite")
    return parser


def _write_csv(columns, rows, out_path) -> None:
    if out_path is None:
        emit_csv(rows, sys.stdout.buffer, columns)
        sys.stdout.buffer.flush()
    else:
        emit_csv(rows, out_path, columns)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "fig2":
            columns, rows = fig2_preset(steps=args.steps, xi=args.xi, threads=args.threads)
            _write_csv(columns, rows, args.out)
            if args.svg is not None:
                emit_svg(rows, "p", columns[1:], args.svg)
        elif args.command == "sweep":
            with open(args.config, encoding="utf-8") as fh:
                cfg = parse_config(fh.read())
            columns, rows = run_sweep(cfg, threads=args.threads)
            _write_csv(columns, rows, args.out)
        elif args.command == "point":
            value = compute_quantity(
                args.quantity, args.noise, args.p, args.pc, args.xi, args.axis, args.probe
            )
            print(format_number(value))
        elif args.command == "verify":
            results = run_all_checks()
            for res in results:
                print(f"{'PASS' if res.passed else 'FAIL'}  {res.name}: {res.detail}")
            failed = sum(not r.passed for r in results)
            print(f"{len(results) - failed}/{len(results)} checks passed")
            if failed:
                return 1
        return 0
    except BrokenPipeError:
        return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
