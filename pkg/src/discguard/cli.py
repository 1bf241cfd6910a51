"""Command line: ``discguard solve|bench|render|fixture``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bench
from .api import IncompatibleMethod, make_samples, solve
from .deployment import METHODS, verify_cover
from .geometry import GeometryError
from .ilp import DEFAULT_NODE_BUDGET, SolverBudgetExceeded
from .instances import FIXTURES, DocumentError, dump_problem, load_deployment, load_problem, save_deployment
from .render import render_svg
from .sampling import PERIMETER, REGION

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _positive(kind):
    def parse(s):
        v = kind(s)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {s}")
        return v
    return parse


def cmd_solve(args) -> int:
    prob = load_problem(_read(args.problem))
    k = args.k or prob.k
    eps = args.epsilon or prob.epsilon
    try:
        sol = solve(
            prob.polygon, prob.mode, args.method, k, eps,
            grid_side=args.grid_side, node_budget=args.node_budget,
            snap_radii=args.snap_radii, seed=args.seed,
        )
    except IncompatibleMethod as exc:
        raise UsageError(str(exc)) from None
    text = save_deployment(sol.deployment, sol.samples)
    _write(args.output, text)
    if not sol.check.ok:
        print(f"error: cover verification failed (gap {sol.check.worst_gap:.6g} > r {sol.deployment.radius:.6g})",
              file=sys.stderr)
        return EXIT_INPUT
    print(f"{args.method}: k={k} radius={sol.deployment.radius:.6g} N={len(sol.samples)} verified",
          file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    base = (bench.FULL if args.full else bench.DESK)[args.suite]
    over = {}
    if args.instances:
        over["instances"] = args.instances
    if args.n_vertices:
        over["n_vertices"] = args.n_vertices
    if args.k:
        over["ks"] = tuple(args.k)
    if args.sizes:
        over["sizes"] = tuple(args.sizes)
    if args.node_budget:
        over["node_budget"] = args.node_budget
    cfg = bench.SuiteConfig(**{**base.__dict__, **over})
    records = bench.run_suite(args.suite, cfg, seed=args.seed, jobs=args.jobs)
    _write(args.output, bench.to_csv(records))
    if args.summary:
        for row in bench.summarize(records):
            print(json.dumps(row), file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    prob = load_problem(_read(args.problem))
    dep, stored = load_deployment(_read(args.solution))
    samples = make_samples(prob.polygon, prob.mode, prob.epsilon)
    check = verify_cover(dep, samples)
    if abs(check.worst_gap - stored["worst_gap"]) > 1e-6 or check.ok != stored["ok"]:
        raise UsageError("solution does not match the problem (verification differs)")
    svg = render_svg(prob.polygon, dep, samples if args.samples else None)
    _write(args.output, svg)
    return EXIT_OK


def cmd_fixture(args) -> int:
    _write(args.output, dump_problem(FIXTURES[args.name](), args.mode, args.k, args.epsilon))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # Exit status 2 is reserved for solver-budget exhaustion.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="discguard", description="Guard polygon perimeters or regions with k discs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve a problem document")
    s.add_argument("problem", help="problem JSON path, or - for stdin")
    s.add_argument("--method", choices=METHODS, required=True)
    s.add_argument("--k", type=_positive(int), help="override the document's k")
    s.add_argument("--epsilon", type=_positive(float), help="override the document's epsilon")
    s.add_argument("--grid-side", type=_positive(float), help="ILP candidate cell side (default epsilon)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--node-budget", type=_positive(int), default=DEFAULT_NODE_BUDGET)
    s.add_argument("--snap-radii", action="store_true", help="probe only candidate-sample distances")
    s.add_argument("-o", "--output", help="solution path (default stdout)")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run a benchmark suite, CSV to stdout")
    b.add_argument("suite", choices=bench.SUITES)
    b.add_argument("--full", action="store_true", help="full-scale cells instead of desk defaults")
    b.add_argument("--jobs", type=_positive(int), default=1)
    b.add_argument("--seed", type=int, default=0, help="suite seed")
    b.add_argument("--instances", type=_positive(int))
    b.add_argument("--n-vertices", type=_positive(int))
    b.add_argument("--k", type=_positive(int), nargs="+")
    b.add_argument("--sizes", type=_positive(int), nargs="+", help="N (cont) or grid size (ILP)")
    b.add_argument("--node-budget", type=_positive(int))
    b.add_argument("--summary", action="store_true", help="per-cell aggregates on stderr")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="draw a solution as SVG")
    r.add_argument("problem")
    r.add_argument("solution")
    r.add_argument("--samples", action="store_true", help="also dot the samples")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)

    f = sub.add_parser("fixture", help="write a built-in fixture as a problem document")
    f.add_argument("name", choices=sorted(FIXTURES))
    f.add_argument("--mode", choices=(PERIMETER, REGION), default=PERIMETER)
    f.add_argument("--k", type=_positive(int), default=1)
    f.add_argument("--epsilon", type=_positive(float), default=0.05)
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_fixture)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except SolverBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DocumentError, GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
