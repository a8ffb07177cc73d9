"""Command-line entry point: ``ogtc <command> ...``.

Exit codes: 0 success, 2 infeasible parents, 1 any other error (bad input,
bad arguments, solver limits). Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import sys

from . import formats, ga, suites
from .blp import MAX, BlpInstance, as_genotype, bits_str, better, violated_rows
from .errors import InfeasibleParents, OgtcError
from .generators import FAMILIES, generate
from .graph import WeightedGraph
from .maxsat import CnfInstance
from .problems import KINDS, METHODS, make_problem
from .reductions import SplpInstance

CSV_HELP = """\
CSV schema (comma separated, header row, integer values):
  ga          generation,best,mean     one row per generation, 0 = initial population;
                                       mean is the population mean rounded half-to-even
  ga-compare  instance,seed,optimized_best,uniform_best,evaluations
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # keep exit status 2 for infeasible parents only
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_kind(data) -> str:
    if isinstance(data, WeightedGraph):
        return "mwis"
    if isinstance(data, CnfInstance):
        return "maxsat"
    if isinstance(data, SplpInstance):
        return "splp"
    return "blp"


def _load(args):
    fmt = args.format or formats.infer_format(args.infile)
    orlib_kind = args.problem if args.problem in formats.ORLIB_KINDS else None
    data = formats.parse(args.infile, fmt, orlib_kind)
    return make_problem(args.problem or _default_kind(data), data)


def _add_input(p):
    p.add_argument("--in", dest="infile", required=True, help="instance file")
    p.add_argument("--format", choices=formats.FORMATS, help="file format (default: from the extension)")
    p.add_argument("--problem", choices=KINDS,
                   help="problem kind (default: mwis for graphs, maxsat for CNF, splp or blp for JSON)")


def cmd_crossover(args, out):
    problem = _load(args)
    res = problem.crossover(args.p1, args.p2, args.method)
    out.write(f"offspring: {bits_str(res.offspring)}\n")
    out.write(f"value: {res.value}\n")
    out.write(f"trace: {' > '.join(res.trace)}\n")
    return 0


def cmd_verify(args, out):
    problem = _load(args)
    x = as_genotype(args.x, problem.n)
    ok = problem.feasible(x)
    out.write(f"feasible: {'yes' if ok else 'no'}\n")
    out.write(f"value: {problem.objective(x)}\n")
    if not ok and isinstance(problem.data, BlpInstance):
        out.write(f"violated rows: {' '.join(map(str, violated_rows(problem.data, x)))}\n")
    return 0


def _write_csv(path, header, rows, out):
    if path in (None, "-"):
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def cmd_ga(args, out):
    problem = _load(args)
    cfg = ga.GaConfig(args.pop, args.gens, args.crossover, args.mutation, args.seed)
    run = ga.run(problem, cfg)
    _write_csv(args.csv, ("generation", "best", "mean"), run.rows(), out)
    if args.csv not in (None, "-"):
        out.write(f"best: {run.best[-1]}\n")
        out.write(f"genotype: {bits_str(run.best_genotype)}\n")
        out.write(f"evaluations: {run.evaluations}\n")
    return 0


def _parse_params(items):
    params = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise OgtcError(f"parameter {item!r} must look like key=value")
        params[key] = value
    return params


def cmd_gen(args, out):
    g = generate(args.family, _parse_params(args.params), args.seed)
    fmt = args.format or formats.infer_format(args.out)
    formats.write(g.instance, args.out, fmt, g.kind if fmt == "orlib" else None)
    out.write(f"problem: {g.kind}\n")
    out.write(f"p1: {bits_str(g.p1)}\n")
    out.write(f"p2: {bits_str(g.p2)}\n")
    return 0


def cmd_selftest(args, out):
    results = suites.run_all(args.scale)
    for r in results:
        out.write(f"{'PASS' if r.ok else 'FAIL'} {r.line()}\n")
        for f in r.failures:
            out.write(f"    {f}\n")
    passed = sum(r.passed for r in results)
    failed = sum(r.failed for r in results)
    out.write(f"total: {passed} passed, {failed} failed\n")
    return 0 if all(r.ok for r in results) else 1


def ga_compare_rows(instances=20, n=50, m=20, seed=0, pop=20, gens=20):
    """One row per instance: best found by each crossover under the same evaluation budget."""
    rows = []
    for i in range(instances):
        inst_seed = seed * 1000 + i
        g = generate("random-packing", {"n": n, "m": m, "density": 0.1, "cmin": 1, "cmax": 20}, inst_seed)
        problem = make_problem(g.kind, g.instance)
        runs = {
            kind: ga.run(problem, ga.GaConfig(pop, gens, kind, 0.0, inst_seed))
            for kind in (ga.OPTIMIZED, ga.UNIFORM)
        }
        opt, uni = runs[ga.OPTIMIZED], runs[ga.UNIFORM]
        assert opt.evaluations == uni.evaluations
        rows.append((i, inst_seed, opt.best[-1], uni.best[-1], opt.evaluations))
    return rows


def cmd_ga_compare(args, out):
    rows = ga_compare_rows(args.instances, args.n, args.m, args.seed, args.pop, args.gens)
    header = ("instance", "seed", "optimized_best", "uniform_best", "evaluations")
    _write_csv(args.csv, header, rows, out)
    if args.csv not in (None, "-"):
        wins = sum(better(MAX, r[2], r[3]) for r in rows)
        ties = sum(r[2] == r[3] for r in rows)
        out.write(f"optimized better on {wins}, tied on {ties}, of {len(rows)} instances\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ogtc",
        description="Optimized gene-transmitting crossover for Boolean linear programs.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("crossover", help="best feasible offspring of two parents")
    _add_input(p)
    p.add_argument("--p1", required=True, help="first parent as a 0/1 string")
    p.add_argument("--p2", required=True, help="second parent as a 0/1 string")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("verify", help="feasibility and objective of a genotype")
    _add_input(p)
    p.add_argument("--x", required=True, help="genotype as a 0/1 string")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ga", help="steady-state GA run, CSV trajectory",
                       epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_input(p)
    p.add_argument("--crossover", choices=(ga.OPTIMIZED, ga.UNIFORM), default=ga.OPTIMIZED)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pop", type=int, default=20)
    p.add_argument("--gens", type=int, default=10)
    p.add_argument("--mutation", type=float, default=0.0, help="per-bit flip probability")
    p.add_argument("--csv", help="output path (default: stdout)")
    p.set_defaults(func=cmd_ga)

    p = sub.add_parser("gen", help="write a random instance and print two feasible parents")
    p.add_argument("--family", choices=tuple(FAMILIES), required=True)
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=formats.FORMATS)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="run the oracle-equivalence property suites")
    p.add_argument("--scale", choices=("small", "full"), default="small")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("ga-compare", help="optimized vs uniform crossover on random set packing",
                       epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--m", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pop", type=int, default=20)
    p.add_argument("--gens", type=int, default=20)
    p.add_argument("--csv", help="output path (default: stdout)")
    p.set_defaults(func=cmd_ga_compare)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InfeasibleParents as exc:
        print(f"ogtc: infeasible parents: {exc}", file=sys.stderr)
        return 2
    except OgtcError as exc:
        print(f"ogtc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ogtc: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, IndexError, RecursionError) as exc:
        print(f"ogtc: unexpected {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
