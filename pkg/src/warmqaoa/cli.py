"""warmqaoa command line: generate, solve, compare, projection-sweep, verify.

Exit codes: 0 ok, 1 usage or input error, 2 numerical failure, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .bench import (ALGOS, COMPARE_HEADER, GENERATOR, SWEEP_HEADER, Instance, RunOptions,
                    compare_rows, make_graph, run_algo, sweep_rows)
from .graphs import InvariantViolation, read_edgelist, write_edgelist
from .gw import NumericalBreakdown
from .oracle import CapacityError
from .train import TrainOptions

log = logging.getLogger("warmqaoa")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(t)) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def _write_json(obj, path: Path | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is None:
        print(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")


def _write_csv(rows, header, path: Path | None) -> None:
    fh = sys.stdout if path is None else open(path, "w", newline="")
    try:
        w = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    finally:
        if path is not None:
            fh.close()


def _manifest(args, **extra) -> dict:
    return {"version": __version__, "command": args.command, "seed": args.seed,
            "argv": sys.argv[1:], **extra}


def _run_options(args) -> RunOptions:
    return RunOptions(
        projections=getattr(args, "projections", 1),
        restarts=getattr(args, "restarts", 10),
        inits=getattr(args, "inits", 10),
        epsilon=getattr(args, "epsilon", 0.25),
        rotation=getattr(args, "rotation", "vertex-at-top"),
        tol=args.tol,
        train=TrainOptions(max_iter=getattr(args, "max_iter", 1000)),
    )


# --- verbs ------------------------------------------------------------------

def cmd_generate(args) -> int:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i in range(args.count):
        g = make_graph(args.seed, args.n, i)
        if not g.is_cubic():
            raise InvariantViolation("generator produced a non-cubic graph")
        name = f"u3r_n{args.n}_s{args.seed}_{i:03d}.txt"
        write_edgelist(g, out / name, comment=f"u3r n={args.n} seed={args.seed} index={i}")
        files.append(name)
    _write_json(_manifest(args, n=args.n, count=args.count, generator=GENERATOR, files=files),
                out / "manifest.json")
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_edgelist(args.graph)
    inst = Instance(g, args.seed, 0, _run_options(args))
    rec = run_algo(inst, args.algo)
    rec["graph"] = str(args.graph)
    _write_json(rec, Path(args.out) if args.out else None)
    return EXIT_OK


def cmd_compare(args) -> int:
    opts = _run_options(args)
    rows, records = compare_rows(args.n, args.graphs, args.algos, args.seed, opts, args.jobs)
    out = Path(args.out) if args.out else None
    _write_csv(rows, COMPARE_HEADER, out)
    if out is not None:
        _write_json(_manifest(args, n=args.n, graphs=args.graphs, algos=args.algos,
                              generator=GENERATOR, records=records),
                    out.with_suffix(".json"))
    return EXIT_OK


def cmd_sweep(args) -> int:
    opts = _run_options(args)
    rows, records = sweep_rows(args.n, args.R, args.graphs, args.seed, args.cap, opts, args.jobs)
    out = Path(args.out) if args.out else None
    _write_csv(rows, SWEEP_HEADER, out)
    if out is not None:
        recs = [{**r, "per_r": {str(k): list(v) for k, v in r["per_r"].items()}} for r in records]
        _write_json(_manifest(args, n=args.n, R=args.R, graphs=args.graphs, cap=args.cap,
                              generator=GENERATOR, records=recs),
                    out.with_suffix(".json"))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES

    t0 = time.perf_counter()
    checks = SUITES[args.suite](args.seed)
    ok = all(c["passed"] for c in checks)
    summary = {"suite": args.suite, "seed": args.seed, "passed": ok,
               "wall_time": time.perf_counter() - t0, "checks": checks, "version": __version__}
    _write_json(summary, Path(args.out) if args.out else None)
    for c in checks:
        if not c["passed"]:
            log.error("check failed: %s", c)
    return EXIT_OK if ok else EXIT_VERIFY


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed")
    common.add_argument("--out", default=None, help="output file or directory")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--tol", type=float, default=1e-7, help="SDP relative-gap tolerance")
    common.add_argument("-v", "--verbose", action="store_true")

    algo_flags = argparse.ArgumentParser(add_help=False)
    algo_flags.add_argument("--projections", type=int, default=1)
    algo_flags.add_argument("--restarts", type=int, default=10, help="BM restarts")
    algo_flags.add_argument("--inits", type=int, default=10, help="angle initial points")
    algo_flags.add_argument("--epsilon", type=float, default=0.25, help="WS-QAOA regularization")
    algo_flags.add_argument("--rotation", choices=("vertex-at-top", "uniform"), default="vertex-at-top")
    algo_flags.add_argument("--max-iter", type=int, default=1000, help="WS-ab training iterations")

    p = _Parser(prog="warmqaoa", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("generate", parents=[common], help="random 3-regular edge lists")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", parents=[common, algo_flags], help="one algorithm on one graph file")
    s.add_argument("graph", type=Path)
    s.add_argument("--algo", choices=ALGOS, required=True)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("compare", parents=[common, algo_flags], help="mean cuts per (n, algorithm)")
    s.add_argument("--n", type=_int_list, required=True, help="e.g. '40,60,80'")
    s.add_argument("--graphs", type=int, default=40)
    s.add_argument("--algos", type=lambda t: [a for a in t.replace(",", " ").split() if a],
                   default=["gw", "qaoa-wsab", "qaoa-ws", "qaoa-warmest", "qaoa-std"])
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("projection-sweep", parents=[common, algo_flags],
                       help="best-of-R GW against WS-ab, and projections needed to match")
    s.add_argument("--n", type=_int_list, required=True)
    s.add_argument("--R", type=_int_list, default=[1, 10, 50, 100])
    s.add_argument("--graphs", type=int, default=10)
    s.add_argument("--cap", type=int, default=10_000)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    s.add_argument("suite", choices=("oracle", "closedform", "guarantees"))
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NumericalBreakdown as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except InvariantViolation as exc:
        log.error("invariant violated: %s", exc)
        return EXIT_VERIFY
    except (CapacityError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
