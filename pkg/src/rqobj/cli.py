"""Command-line entry point ``rqobj``.

Exit status: 0 success, 1 usage or I/O error, 2 numerical or internal
failure, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import InternalError, NumericalFailureError, RQObjError, UsageError
from .harness.config import OBJECT_METHODS, ExperimentConfig
from .harness.csvio import write_table
from .harness.experiments import EXPERIMENTS, run_moments, run_sample
from .harness.selftest import format_report, run_selftest

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_SELFTEST = 0, 1, 2, 3


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise _UsageExit()


def _dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common(p: argparse.ArgumentParser, *, seed_required: bool) -> None:
    p.add_argument("--method", help="generator option string (default: the object's standard)")
    p.add_argument("--rng", default="mt", help="pseudo-random generator: mt or gnu (default mt)")
    p.add_argument("--samples", type=int, default=1, help="number of samples")
    if seed_required:
        p.add_argument("--seed", type=int, required=True, help="master seed (required)")
    else:
        p.add_argument("--seed", type=int, default=5489, help="seed (default 5489)")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    objects = ", ".join(f"{o}: {'/'.join(m)}" for o, m in OBJECT_METHODS.items())
    parser = _Parser(prog="rqobj", description="Random quantum objects and Monte-Carlo experiments.",
                     epilog=f"methods per object -- {objects}")
    parser.add_argument("--version", action="version", version=f"rqobj {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="write raw samples of one object type")
    p.add_argument("--object", default="rpv", choices=list(OBJECT_METHODS))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ancilla-dim", type=int, default=None, help="ancilla size for rdm ptrace")
    _common(p, seed_required=False)

    p = sub.add_parser("moments", help="running uniform moments and lag-1 correlations")
    p.add_argument("--object", default="rn", choices=["rn"])
    _common(p, seed_required=False)

    p = sub.add_parser("experiment", help="run a Monte-Carlo experiment")
    p.add_argument("name", choices=list(EXPERIMENTS))
    p.add_argument("--dim", type=int, default=None, help="single dimension")
    p.add_argument("--dims", type=_dims, default=None,
                   help="comma-separated dimensions (ppt: total d = 2 * d_b, even)")
    p.add_argument("--shards", type=int, default=1, help="sub-streams per dimension")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--bins", type=int, default=20, help="phase histogram bins (eigenphase)")
    _common(p, seed_required=True)

    sub.add_parser("selftest", help="run the fixed-seed invariant battery")
    return parser


def _run(args) -> int:
    if args.command == "selftest":
        checks = run_selftest()
        sys.stdout.write(format_report(checks))
        return EXIT_OK if all(c.passed for c in checks) else EXIT_SELFTEST
    if args.command == "sample":
        cfg = ExperimentConfig(object=args.object, method=args.method, rng=args.rng,
                               dims=(args.dim,), samples=args.samples, seed=args.seed,
                               out=args.out, ancilla_dim=args.ancilla_dim)
        run_sample(cfg)
        return EXIT_OK
    if args.command == "moments":
        cfg = ExperimentConfig(object="rn", rng=args.rng, samples=args.samples,
                               seed=args.seed, out=args.out)
        run_moments(cfg)
        return EXIT_OK
    obj, runner = EXPERIMENTS[args.name]
    if args.dims is None and args.dim is None:
        raise UsageError("experiment needs --dim or --dims")
    dims = args.dims if args.dims is not None else (args.dim,)
    cfg = ExperimentConfig(object=obj, method=args.method, rng=args.rng, dims=dims,
                           samples=args.samples, seed=args.seed, out=None,
                           shards=args.shards, jobs=args.jobs, bins=args.bins)
    table = runner(cfg)
    write_table(table, args.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except _UsageExit:
        return EXIT_USAGE
    except (NumericalFailureError, InternalError, ArithmeticError) as exc:
        sys.stderr.write(f"rqobj: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except (RQObjError, ValueError) as exc:
        sys.stderr.write(f"rqobj: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"rqobj: I/O error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
