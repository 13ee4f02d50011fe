"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 I/O error.
Reports go to stdout as JSON; sweep and trajectory data go to CSV files.
Progress messages (``-v``) go to stderr only, so data files are
byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings

from . import __version__
from .distributions import Event, merge_spaces
from .errors import InfoError, ParseError
from .extreal import LogBase
from .finetune import fine_tuning_report, target_event
from .io import (
    TRAJECTORY_HEADER,
    load_json,
    parse_distribution,
    parse_event,
    parse_family,
    parse_graph,
    trajectory_rows,
    write_csv,
)
from .markov import WalkConfig, trajectory
from .measures import full_report
from .regimes import regime_report
from .sweeps import SWEEP_KINDS, SweepSpec, sweep_header, sweep_rows

log = logging.getLogger("conservedinfo")

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_IO = 0, 2, 3, 4


class _IOFailure(Exception):
    pass


def _base(text: str) -> LogBase:
    try:
        return LogBase.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _read(path: str):
    try:
        return load_json(path)
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=2, allow_nan=False)
    sys.stdout.write("\n")


def _write_csv(path: str, header, rows) -> int:
    if path == "-":
        return write_csv(sys.stdout, header, rows)
    try:
        return write_csv(path, header, rows)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_measure(args) -> int:
    P1 = parse_distribution(_read(args.p1))
    P2 = parse_distribution(_read(args.p2))
    target = _read(args.target)
    merged = P1.labels != P2.labels
    M1, M2 = merge_spaces(P1, P2) if merged else (P1, P2)
    if merged:
        log.info("merged label sets into %d outcomes", M1.size)
    if isinstance(target, dict) and "indices" not in target:
        T = parse_event(target, M1)
    else:
        # Indices refer to P1's original label order.
        T = parse_event(target)
        T.check_bounds(P1.size)
        if merged:
            T = Event.of_labels(M1, [P1.labels[i] for i in T])
    _emit(full_report(M1, M2, T, args.base).to_dict())
    return EXIT_OK


def cmd_regime(args) -> int:
    with warnings.catch_warnings():
        if not args.verbose:
            warnings.simplefilter("ignore")
        rep = regime_report(args.p, args.q, args.base)
    _emit(rep.to_dict())
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = SweepSpec(
        kind=args.kind,
        grid_min=args.min,
        grid_max=args.max,
        grid_steps=args.steps,
        q_min=args.q_min,
        q_max=args.q_max,
        q_steps=args.q_steps,
        base=args.base,
    )
    n = _write_csv(args.out, sweep_header(spec), sweep_rows(spec))
    log.info("wrote %d rows to %s", n, args.out)
    return EXIT_OK


def cmd_markov(args) -> int:
    G = parse_graph(_read(args.graph))
    P1 = parse_distribution(_read(args.p1))
    T = parse_event(_read(args.target), P1)
    cfg = WalkConfig(steps=args.steps, laziness=args.laziness)
    points = trajectory(P1, G, T, cfg, args.base)
    n = _write_csv(args.out, TRAJECTORY_HEADER, trajectory_rows(points))
    log.info("wrote %d trajectory rows to %s (laziness %g)", n, args.out, cfg.resolve_laziness(G))
    return EXIT_OK


def cmd_finetune(args) -> int:
    family = parse_family(_read(args.family))
    T = target_event(family, args.target)
    result = fine_tuning_report(family, T, args.delta, args.base)
    _emit(result.to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", type=_base, default=LogBase(2.0),
                        help="logarithm base: 2 (default), e, or 10")
    common.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")

    parser = argparse.ArgumentParser(
        prog="conservedinfo",
        description="Active information, conserved active information and related measures.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common],
                       help="all measures for two distribution files and a target event")
    p.add_argument("p1", help="baseline distribution JSON")
    p.add_argument("p2", help="informed distribution JSON")
    p.add_argument("target", help="target event JSON (indices into p1's labels, or labels)")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("regime", parents=[common],
                       help="classify a (p, q) pair under a uniform baseline")
    p.add_argument("p", type=float, help="baseline target probability, 0 < p < 1/2")
    p.add_argument("q", type=float, help="informed target probability, 0 <= q <= 1")
    p.set_defaults(func=cmd_regime)

    p = sub.add_parser("sweep", parents=[common], help="Bernoulli sweep as CSV")
    p.add_argument("kind", choices=SWEEP_KINDS)
    p.add_argument("--min", type=float, default=0.01)
    p.add_argument("--max", type=float, default=0.99)
    p.add_argument("--steps", type=int, default=99)
    p.add_argument("--q-min", type=float, default=None, help="surfaces only; defaults to --min")
    p.add_argument("--q-max", type=float, default=None, help="surfaces only; defaults to --max")
    p.add_argument("--q-steps", type=int, default=None, help="surfaces only; defaults to --steps")
    p.add_argument("-o", "--out", required=True, help="output CSV path ('-' for stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("markov", parents=[common],
                       help="random-walk trajectory of I+ and coarsened conserved AIN")
    p.add_argument("graph", help="graph JSON {n, edges}")
    p.add_argument("p1", help="initial distribution JSON over vertices 0..n-1")
    p.add_argument("target", help="target event JSON")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--laziness", type=float, default=None,
                   help="holding probability; default 0.5 on bipartite graphs, else 0")
    p.add_argument("-o", "--out", required=True, help="output CSV path ('-' for stdout)")
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("finetune", parents=[common], help="fine-tuning report for a family file")
    p.add_argument("family", help="family JSON {kind, domain, h, grid}")
    p.add_argument("--target", type=float, nargs=2, metavar=("A", "B"), required=True,
                   help="target interval [A, B]")
    p.add_argument("--delta", type=float, required=True, help="tuning level in (0, 1)")
    p.set_defaults(func=cmd_finetune)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        field = f" [field: {exc.field}]" if exc.field else ""
        print(f"parse error: {exc}{field}", file=sys.stderr)
        return EXIT_PARSE
    except _IOFailure as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InfoError, ValueError) as exc:
        print(f"validation error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
