"""Command-line interface.

Subcommands: codes, validate, syndrome-table, distance, simulate,
threshold.  Exit codes: 0 ok, 2 configuration error, 3 runtime error;
failures print a single machine-greppable ERR_CONFIG/ERR_RUNTIME line to
stderr.  All qubit labels in output are 1-based and CSV output is
byte-reproducible for a fixed seed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .code_library import get_code, registered_names
from .decoders import LookupDecoder, MwpmDecoder
from .montecarlo import sweep, threshold_scan
from .pauli import enumerate_paulis, format_sparse
from .stabilizer_code import distance as code_distance

CONFIG_ERROR = 2
RUNTIME_ERROR = 3


class ConfigError(Exception):
    pass


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _get_code_or_fail(name: str):
    try:
        return get_code(name)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_codes(args) -> int:
    for name in registered_names():
        print(name)
    print("surface_d<lambda> is accepted for any lambda >= 2")
    return 0


def cmd_validate(args) -> int:
    code = _get_code_or_fail(args.code)
    report = code.validate(distance_max_weight=args.check_distance)
    if report.ok:
        print(f"valid, k={code.k}")
        return 0
    for problem in report.problems:
        print(f"invalid: {problem}")
    raise ConfigError(f"code {code.name} failed validation")


def cmd_syndrome_table(args) -> int:
    code = _get_code_or_fail(args.code)
    letters = tuple(args.letters) if args.letters else ("X", "Y", "Z")
    lines = ["error\tsyndrome"]
    for w in range(0, args.max_weight + 1):
        for p in enumerate_paulis(code.n, w, letters):
            lines.append(f"{format_sparse(p)}\t{code.syndrome(p)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_distance(args) -> int:
    code = _get_code_or_fail(args.code)
    max_weight = args.max_weight or code.n
    letters = tuple(args.letters) if args.letters else ("X", "Y", "Z")
    found = code_distance(code, max_weight, letters)
    if found is None:
        print(f"distance > {max_weight}")
    else:
        print(f"distance {found}")
    return 0


def _build_decoder(args, code):
    if args.decoder == "lookup":
        return LookupDecoder(code, max_weight=args.max_weight)
    if args.decoder == "mwpm":
        if code.layout is None:
            raise ConfigError(f"decoder mwpm needs a lattice code, {code.name} has no layout")
        return MwpmDecoder(code)
    raise ConfigError(f"unknown decoder {args.decoder!r}")


def _p_grid(args) -> list[float]:
    if args.steps is not None:
        if args.steps < 1:
            raise ConfigError("--steps must be >= 1")
        if args.p_start is None or args.p_end is None:
            raise ConfigError("--p-start and --p-end are required with --steps")
        if args.steps == 1:
            return [args.p_start]
        if args.log_grid:
            import math

            if args.p_start <= 0:
                raise ConfigError("--log-grid needs --p-start > 0")
            a, b = math.log(args.p_start), math.log(args.p_end)
            return [math.exp(a + (b - a) * i / (args.steps - 1)) for i in range(args.steps)]
        h = (args.p_end - args.p_start) / (args.steps - 1)
        return [args.p_start + h * i for i in range(args.steps)]
    single = {"iid_x": args.px, "iid_xz": args.px, "depolarizing": args.p}[args.noise]
    if single is None:
        raise ConfigError("give --px/--p for a single point or --p-start/--p-end/--steps")
    return [single]


def cmd_simulate(args) -> int:
    code = _get_code_or_fail(args.code)
    if args.noise == "iid_xz" and args.px is not None and args.pz is not None and args.px != args.pz:
        raise ConfigError("sweeps treat iid_xz symmetrically; --px must equal --pz")
    grid = _p_grid(args)
    post_select = args.post_select
    if args.decoder == "none" and not post_select:
        raise ConfigError("--decoder none is only meaningful with --post-select")
    decoder = None if args.decoder == "none" else _build_decoder(args, code)
    report = sweep(
        code,
        decoder,
        args.noise,
        grid,
        args.trials,
        args.seed,
        post_select=post_select,
        workers=args.threads,
    )
    _emit(report.to_json() if args.format == "json" else report.to_csv(), args.out)
    return 0


def cmd_threshold(args) -> int:
    distances = [int(tok) for tok in args.distances.split(",")]
    if len(distances) < 2:
        raise ConfigError("--distances needs at least two comma-separated values")
    if args.steps is None or args.p_start is None or args.p_end is None:
        raise ConfigError("threshold scans require --p-start, --p-end and --steps")
    grid = _p_grid(args)
    scan = threshold_scan(distances, grid, args.trials, args.seed, workers=args.threads)
    _emit(scan.to_json() if args.format == "json" else scan.to_csv(), args.out)
    print(
        f"p_th estimate: {scan.p_threshold:.4f} +/- {scan.sigma:.4f} "
        f"from {len(scan.crossings)} crossing(s)",
        file=sys.stderr,
    )
    return 0


def _add_grid_flags(sub):
    sub.add_argument("--p-start", type=float, default=None)
    sub.add_argument("--p-end", type=float, default=None)
    sub.add_argument("--steps", type=int, default=None)
    sub.add_argument("--log-grid", action="store_true")
    sub.add_argument("--trials", type=int, default=10000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"stabkit {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("codes", help="list registered codes")
    sub.set_defaults(func=cmd_codes)

    sub = subs.add_parser("validate", help="check every stabilizer-code invariant")
    sub.add_argument("code")
    sub.add_argument(
        "--check-distance",
        type=int,
        default=None,
        metavar="W",
        help="also cross-check the declared distance by search up to weight W",
    )
    sub.set_defaults(func=cmd_validate)

    sub = subs.add_parser("syndrome-table", help="TSV of errors and their syndromes")
    sub.add_argument("code")
    sub.add_argument("max_weight", type=int)
    sub.add_argument("--letters", nargs="+", choices=("X", "Y", "Z"), default=None)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=cmd_syndrome_table)

    sub = subs.add_parser("distance", help="exhaustive distance search")
    sub.add_argument("code")
    sub.add_argument("--max-weight", type=int, default=None)
    sub.add_argument("--letters", nargs="+", choices=("X", "Y", "Z"), default=None)
    sub.set_defaults(func=cmd_distance)

    sub = subs.add_parser("simulate", help="Monte Carlo logical-error-rate sweep")
    sub.add_argument("--code", required=True)
    sub.add_argument("--decoder", choices=("lookup", "mwpm", "none"), default="lookup")
    sub.add_argument("--noise", choices=("iid_x", "iid_xz", "depolarizing"), default="iid_x")
    sub.add_argument("--px", type=float, default=None)
    sub.add_argument("--pz", type=float, default=None)
    sub.add_argument("--p", type=float, default=None)
    sub.add_argument("--post-select", action="store_true")
    sub.add_argument("--max-weight", type=int, default=None, help="lookup-table build depth")
    _add_grid_flags(sub)
    sub.set_defaults(func=cmd_simulate)

    sub = subs.add_parser("threshold", help="surface-code threshold-crossing scan")
    sub.add_argument("--distances", required=True, help="comma-separated lattice distances")
    _add_grid_flags(sub)
    sub.set_defaults(func=cmd_threshold)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"ERR_CONFIG: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    except (ValueError, KeyError, OSError) as exc:
        print(f"ERR_RUNTIME: {exc}", file=sys.stderr)
        return RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
