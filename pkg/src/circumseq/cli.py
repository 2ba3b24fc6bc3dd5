"""Command-line interface.

Exit codes: 0 success; 1 malformed flags or unreadable input; 2 parameters
outside the admissible domain; 3 degenerate geometry; 4 no solution found.
Set ICS_LOG to a logging level name (e.g. DEBUG) for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import __version__
from .engine import (
    IcsSequence,
    analyze_sequence,
    characteristic_sequence,
    generate,
    special_offset,
    verify_ics,
)
from .errors import (
    CircumseqError,
    ConstraintViolationError,
    DegenerateGeometryError,
    InputFormatError,
    InvalidArgumentError,
    NumericalInstabilityError,
)
from .fileio import fmt_float, points_csv, read_points_file, sequence_json
from .lyness import lyness_orbit, max_product, maximize_product_numeric, solve_periodic
from .synthesis import build_from_params

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONSTRAINT = 2
EXIT_DEGENERATE = 3
EXIT_NO_SOLUTION = 4


class _Parser(argparse.ArgumentParser):
    # malformed flags must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text: str):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty parameter list")
    return values


def _pin(text: str):
    try:
        pos, val = text.split("=", 1)
        return int(pos), float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected POSITION=VALUE, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circumseq", description=__doc__)
    parser.add_argument("--version", action="version", version=f"circumseq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_gen = sub.add_parser("generate", help="build a sequence and write it to a file")
    p_gen.add_argument("--dim", type=int, help="ambient dimension d")
    src = p_gen.add_mutually_exclusive_group(required=True)
    src.add_argument("--params", type=_float_list,
                     help="comma-separated characteristic prefix a_1..a_{d-1}")
    src.add_argument("--seed-file", help="file with d+1 seed points (JSON or CSV)")
    p_gen.add_argument("--steps", type=int, required=True, help="points to append")
    p_gen.add_argument("--out", required=True, help="output path")
    p_gen.add_argument("--format", choices=("json", "csv"), default="json")
    p_gen.add_argument("--header", action="store_true", help="write a CSV header row")
    p_gen.set_defaults(func=cmd_generate)

    p_ana = sub.add_parser("analyze", help="report the similarity law of a sequence file")
    p_ana.add_argument("--in", dest="in_path", required=True, help="input path (JSON or CSV)")
    p_ana.add_argument("--tol", type=float, default=1e-7,
                       help="period-detection tolerance, relative to diameter")
    p_ana.add_argument("--format", choices=("text", "json"), default="text")
    p_ana.set_defaults(func=cmd_analyze)

    p_per = sub.add_parser("periodic", help="solve for parameters of exactly periodic sequences")
    p_per.add_argument("--dim", type=int, required=True)
    p_per.add_argument("--fix", type=_pin, action="append", default=[],
                       metavar="POSITION=VALUE",
                       help="pin coordinate (1-based); repeat to pin d-2 of them")
    p_per.add_argument("--format", choices=("text", "json"), default="text")
    p_per.set_defaults(func=cmd_periodic)

    p_max = sub.add_parser("maxprod", help="closed-form vs numeric cycle-product maximum")
    p_max.add_argument("--dim", type=int, required=True)
    p_max.add_argument("--rng-seed", type=int, default=0, help="seed for the ascent starts")
    p_max.add_argument("--format", choices=("text", "json"), default="text")
    p_max.set_defaults(func=cmd_maxprod)

    p_lyn = sub.add_parser("lyness", help="print the periodic orbit of a parameter prefix")
    p_lyn.add_argument("--dim", type=int, required=True)
    p_lyn.add_argument("--params", type=_float_list, required=True)
    p_lyn.add_argument("--terms", type=int, default=None,
                       help="orbit length (default: two full periods)")
    p_lyn.add_argument("--format", choices=("text", "json"), default="text")
    p_lyn.set_defaults(func=cmd_lyness)

    return parser


def _check_dim(dim, expected_from, count):
    if dim is not None and dim != count:
        raise InvalidArgumentError(f"--dim {dim} does not match {expected_from} ({count})")


def cmd_generate(args) -> int:
    params = None
    if args.seed_file is not None:
        data = read_points_file(args.seed_file)
        d = data.dim
        _check_dim(args.dim, "seed-file dimension", d)
        if data.points.shape[0] != d + 1:
            raise InputFormatError(
                f"seed file must hold exactly d+1 = {d + 1} points, got {data.points.shape[0]}"
            )
        seq = generate(data.points, args.steps, require_good_position=False)
        params = data.params
    else:
        if args.dim is None:
            raise InvalidArgumentError("--dim is required with --params")
        _check_dim(args.dim, "len(params)+1", len(args.params) + 1)
        seq = build_from_params(args.params, args.steps)
        params = np.asarray(args.params, dtype=float)
    if args.format == "json":
        text = sequence_json(seq.d, seq.points, params=params)
    else:
        text = points_csv(seq.points, header=args.header)
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    note = f" ({seq.stop_reason})" if seq.stop_reason else ""
    print(f"wrote {len(seq)} points to {args.out}{note}")
    return EXIT_OK


def _analysis_dict(analysis):
    return {
        "r": analysis.scale_factor,
        "v": analysis.shift_vector,
        "period": analysis.period,
        "residual": analysis.affine_residual,
    }


def cmd_analyze(args) -> int:
    data = read_points_file(args.in_path)
    pts = data.points
    d = data.dim
    verify_ics(pts)
    offset = special_offset(pts)
    tail = pts[offset:]
    seq = IcsSequence(d=d, points=tail)
    char = characteristic_sequence(seq)
    analysis = None
    if tail.shape[0] >= 2 * d + 5:
        analysis = analyze_sequence(seq, period_tol_rel=args.tol)

    if args.format == "json":
        payload = _analysis_dict(analysis) if analysis is not None else None
        print(sequence_json(d, pts, params=data.params, analysis=payload), end="")
        return EXIT_OK

    print(f"dimension:      {d}")
    print(f"points:         {pts.shape[0]}")
    if offset == 0:
        print("position:       good from the start (special)")
    else:
        print(f"position:       good after shift {offset}")
    head = " ".join(fmt_float(x) for x in char[: min(char.size, 2 * (d + 2))])
    print(f"char sequence:  {head}" + (" ..." if char.size > 2 * (d + 2) else ""))
    if analysis is None:
        print(f"analysis:       skipped (need at least 2d+5 = {2 * d + 5} points)")
        return EXIT_OK
    print(f"scale factor r: {fmt_float(analysis.scale_factor)}")
    print(f"shift vector v: [{', '.join(fmt_float(c) for c in analysis.shift_vector)}]")
    print(f"affine resid:   {analysis.affine_residual:.3e} (relative to diameter)")
    if analysis.period is None:
        print(f"period:         none detected (tolerance {args.tol:g})")
    else:
        print(f"period:         {analysis.period} (residual {analysis.period_residual:.3e})")
    return EXIT_OK


def cmd_periodic(args) -> int:
    roots = solve_periodic(args.dim, dict(args.fix) if args.fix else None)
    if not roots:
        print("no admissible root on the scanned segment", file=sys.stderr)
        return EXIT_NO_SOLUTION
    if args.format == "json":
        rows = ",\n".join(
            "    [" + ", ".join(fmt_float(c) for c in vec) + "]" for vec in roots
        )
        print('{\n  "dim": %d,\n  "target": %s,\n  "roots": [\n%s\n  ]\n}'
              % (args.dim, fmt_float(0.5 ** (args.dim + 2)), rows))
        return EXIT_OK
    for k, vec in enumerate(roots, start=1):
        print(f"root {k}: " + " ".join(fmt_float(c) for c in vec))
    return EXIT_OK


def cmd_maxprod(args) -> int:
    closed = max_product(args.dim)
    params, value = maximize_product_numeric(args.dim, seed=args.rng_seed)
    diff = abs(value - closed.g_max)
    if args.format == "json":
        print(
            '{\n'
            f'  "dim": {args.dim},\n'
            f'  "t_star": {fmt_float(closed.t_star)},\n'
            f'  "g_max": {fmt_float(closed.g_max)},\n'
            f'  "r_min": {fmt_float(closed.r_min)},\n'
            f'  "numeric_max": {fmt_float(value)},\n'
            f'  "numeric_params": [{", ".join(fmt_float(c) for c in params)}],\n'
            f'  "difference": {fmt_float(diff)}\n'
            '}'
        )
        return EXIT_OK
    print(f"closed form:  t_star {fmt_float(closed.t_star)}  g_max {fmt_float(closed.g_max)}"
          f"  r_min {fmt_float(closed.r_min)}")
    print(f"numeric:      {fmt_float(value)} at [{', '.join(fmt_float(c) for c in params)}]")
    print(f"difference:   {diff:.3e}")
    return EXIT_OK


def cmd_lyness(args) -> int:
    _check_dim(args.dim, "len(params)+1", len(args.params) + 1)
    terms = args.terms if args.terms is not None else 2 * (args.dim + 2)
    orbit = lyness_orbit(args.params, terms)
    if args.format == "json":
        print('{\n  "dim": %d,\n  "params": [%s],\n  "terms": [%s]\n}'
              % (args.dim,
                 ", ".join(fmt_float(c) for c in args.params),
                 ", ".join(fmt_float(c) for c in orbit)))
        return EXIT_OK
    for i, value in enumerate(orbit, start=1):
        print(f"{i:4d}  {fmt_float(value)}")
    return EXIT_OK


def main(argv=None) -> int:
    level = os.environ.get("ICS_LOG")
    if level:
        logging.basicConfig(stream=sys.stderr,
                            level=getattr(logging, level.upper(), logging.INFO))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConstraintViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (DegenerateGeometryError, NumericalInstabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InputFormatError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CircumseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
