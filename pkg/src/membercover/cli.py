"""Command-line front end: gen, solve, exact, verify, bench, plot.

Exit codes: 0 success, 1 usage or parse errors, 2 uncoverable instance.
The only environment knob is MEMBERCOVER_THREADS, which parallelizes the
bench matrix; results are ordered by (seed, solver) regardless.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .covers import CoverSolution, Uncoverable, covers_all, membership
from .halfplanes import additive_error_cover, exact_mmgsc_halfplanes, ptas
from .instances import (
    KIND_HALFPLANES,
    KIND_SQUARES,
    InstanceDoc,
    InstanceParseError,
    generate,
    parse_instance,
    serialize_instance,
)
from .oracle import (
    BudgetExceeded,
    OracleBudget,
    exact_minsize_bruteforce,
    exact_mmgsc_bruteforce,
    exact_mpgsc_bruteforce,
)
from .ply import ply as ply_of
from .ply import solve_mpgsc
from .squares import solve_mmgsc_squares_report
from .svgplot import render_svg

BENCH_SCHEMA_VERSION = 1
CSV_COLUMNS = [
    "seed",
    "kind",
    "solver",
    "n_points",
    "n_ranges",
    "value",
    "oracle_value",
    "lp_value",
    "size",
    "millis",
]

OBJECTIVE_MEMBERSHIP = "membership"
OBJECTIVE_PLY = "ply"
OBJECTIVE_SIZE = "size"


@dataclass(frozen=True)
class RunReport:
    solver: str
    digest: str
    kind: str
    n_points: int
    n_ranges: int
    cover: tuple[int, ...]
    value: int
    size: int
    lp_value: Fraction | None
    millis: float
    oracle_value: int | None = None

    def to_json(self, doc: InstanceDoc) -> str:
        value = (
            ply_of([r for r in doc.ranges if r.id in set(self.cover)]).value
            if self.solver.endswith("ply")
            else membership(doc.sprime, self.cover, doc.ranges)
        )
        assert value == self.value, "cached objective drifted from the cover"
        obj = {
            "schema": BENCH_SCHEMA_VERSION,
            "solver": self.solver,
            "digest": self.digest,
            "kind": self.kind,
            "n_points": self.n_points,
            "n_ranges": self.n_ranges,
            "cover": list(self.cover),
            "value": self.value,
            "size": self.size,
            "lp_value": None if self.lp_value is None else str(self.lp_value),
            "millis": round(self.millis, 3),
            "oracle_value": self.oracle_value,
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"


class _CliParser(argparse.ArgumentParser):
    def error(self, message: str):  # map usage errors to exit code 1
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _solve_one(doc: InstanceDoc, solver: str, epsilon: Fraction) -> tuple[CoverSolution, Fraction | None]:
    if solver == "squares-membership":
        report = solve_mmgsc_squares_report(doc.s, doc.sprime, doc.ranges)
        return report.cover, report.max_lp_value
    if solver == "squares-ply":
        cover, _report = solve_mpgsc(doc.s, doc.ranges)
        return cover, None
    if solver == "halfplanes-additive":
        return additive_error_cover(doc.s, doc.sprime, doc.ranges), None
    if solver == "halfplanes-exact":
        return exact_mmgsc_halfplanes(doc.s, doc.sprime, doc.ranges), None
    if solver.startswith("halfplanes-ptas-"):
        eps = Fraction(solver.rsplit("-", 1)[1])
        return ptas(doc.s, doc.sprime, doc.ranges, eps), None
    if solver == "halfplanes-ptas":
        return ptas(doc.s, doc.sprime, doc.ranges, epsilon), None
    raise ValueError(f"unknown solver {solver!r}")


def _objective_value(doc: InstanceDoc, solver: str, cover: CoverSolution) -> int:
    if solver.endswith("ply"):
        return ply_of([r for r in doc.ranges if r.id in set(cover.ids)]).value
    return cover.memb


def _oracle_value(doc: InstanceDoc, solver: str, budget: OracleBudget) -> int | None:
    try:
        if solver.endswith("ply"):
            value, _ = exact_mpgsc_bruteforce(doc.s, doc.ranges, budget)
        else:
            value, _ = exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.ranges, budget)
        return value
    except BudgetExceeded:
        return None


def run_report(
    doc: InstanceDoc,
    solver: str,
    seed: int,
    epsilon: Fraction = Fraction(1),
    with_oracle: bool = False,
    budget: OracleBudget = OracleBudget(),
) -> RunReport:
    start = time.perf_counter()
    cover, lp_value = _solve_one(doc, solver, epsilon)
    millis = (time.perf_counter() - start) * 1000
    oracle_value = _oracle_value(doc, solver, budget) if with_oracle else None
    return RunReport(
        solver=solver,
        digest=doc.digest(),
        kind=doc.kind,
        n_points=doc.n_points,
        n_ranges=doc.n_ranges,
        cover=cover.ids,
        value=_objective_value(doc, solver, cover),
        size=cover.size,
        lp_value=lp_value,
        millis=millis,
        oracle_value=oracle_value,
    )


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def bench_solvers(kind: str) -> list[str]:
    if kind == KIND_SQUARES:
        return ["squares-membership", "squares-ply"]
    return ["halfplanes-additive", "halfplanes-ptas-1", "halfplanes-ptas-1/2"]


def _bench_seed(args_tuple):
    kind, seed, n_points, max_ranges, extent, with_oracle = args_tuple
    n_ranges = (seed % max_ranges) + 1
    doc = generate(kind, n_points=n_points, n_ranges=n_ranges, extent=extent, seed=seed)
    rows = []
    for solver in bench_solvers(kind):
        try:
            report = run_report(doc, solver, seed, with_oracle=with_oracle)
        except Uncoverable:
            rows.append(
                {
                    "seed": seed,
                    "kind": kind,
                    "solver": solver,
                    "n_points": doc.n_points,
                    "n_ranges": doc.n_ranges,
                    "value": "uncoverable",
                    "oracle_value": "",
                    "lp_value": "",
                    "size": "",
                    "millis": "0",
                }
            )
            continue
        rows.append(
            {
                "seed": seed,
                "kind": kind,
                "solver": solver,
                "n_points": report.n_points,
                "n_ranges": report.n_ranges,
                "value": report.value,
                "oracle_value": "" if report.oracle_value is None else report.oracle_value,
                "lp_value": "" if report.lp_value is None else str(report.lp_value),
                "size": report.size,
                "millis": f"{report.millis:.3f}",
            }
        )
    return rows


def run_bench(
    kind: str,
    seeds: int,
    max_ranges: int,
    n_points: int,
    extent: int,
    with_oracle: bool,
) -> tuple[list[dict], dict]:
    tasks = [
        (kind, seed, n_points, max_ranges, extent, with_oracle)
        for seed in range(seeds)
    ]
    threads = int(os.environ.get("MEMBERCOVER_THREADS", "1"))
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_bench_seed, tasks))
    else:
        chunks = [_bench_seed(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r["seed"], r["solver"]))

    summary: dict = {
        "schema": BENCH_SCHEMA_VERSION,
        "kind": kind,
        "seeds": seeds,
        "solvers": {},
    }
    for solver in bench_solvers(kind):
        solver_rows = [r for r in rows if r["solver"] == solver]
        ratios = []
        violations = 0
        for r in solver_rows:
            if r["value"] == "uncoverable" or r["oracle_value"] == "":
                continue
            value, oracle = int(r["value"]), int(r["oracle_value"])
            if oracle > 0:
                ratios.append(value / oracle)
            elif value > 0:
                violations += 1
        summary["solvers"][solver] = {
            "runs": len(solver_rows),
            "max_ratio": max(ratios) if ratios else None,
            "zero_opt_nonzero_value": violations,
        }
    return rows, summary


def write_csv(rows: list[dict], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_gen(args) -> int:
    doc = generate(
        args.kind,
        n_points=args.points,
        n_ranges=args.ranges,
        extent=args.extent,
        seed=args.seed,
        n_prime=args.prime_points,
    )
    text = serialize_instance(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _load(path: str) -> InstanceDoc:
    with open(path) as fh:
        return parse_instance(fh.read())


def _cmd_solve(args) -> int:
    doc = _load(args.instance)
    if args.objective == OBJECTIVE_PLY:
        if doc.kind != KIND_SQUARES:
            raise _UsageError("ply objective needs a squares instance")
        solver = "squares-ply"
    elif doc.kind == KIND_SQUARES:
        solver = "squares-membership"
    else:
        solver = "halfplanes-ptas"
    report = run_report(
        doc,
        solver,
        seed=doc.seed or 0,
        epsilon=Fraction(args.epsilon),
        with_oracle=args.with_oracle,
    )
    sys.stdout.write(report.to_json(doc))
    return 0


def _cmd_exact(args) -> int:
    doc = _load(args.instance)
    budget = OracleBudget(max_ranges=args.max_ranges)
    if args.objective == OBJECTIVE_PLY:
        value, ids = exact_mpgsc_bruteforce(doc.s, doc.ranges, budget)
    elif args.objective == OBJECTIVE_SIZE:
        value, ids = exact_minsize_bruteforce(doc.s, doc.ranges, budget)
    elif doc.kind == KIND_HALFPLANES and args.solver == "search":
        cover = exact_mmgsc_halfplanes(doc.s, doc.sprime, doc.ranges)
        value, ids = cover.memb, cover.ids
    else:
        value, ids = exact_mmgsc_bruteforce(doc.s, doc.sprime, doc.ranges, budget)
    obj = {
        "objective": args.objective,
        "value": value,
        "witness": list(ids),
        "digest": doc.digest(),
    }
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_verify(args) -> int:
    doc = _load(args.instance)
    with open(args.cover) as fh:
        try:
            cover_doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceParseError(f"cover file: {exc.msg}", line=exc.lineno)
    ids = cover_doc.get("cover")
    if not isinstance(ids, list) or not all(isinstance(i, int) for i in ids):
        raise InstanceParseError("cover file needs a list of ids", field_name="cover")
    known = {r.id for r in doc.ranges}
    unknown = sorted(set(ids) - known)
    if unknown:
        raise InstanceParseError(
            f"cover names unknown range ids {unknown}", field_name="cover"
        )
    ok = covers_all(doc.s, ids, doc.ranges)
    memb = membership(doc.sprime, ids, doc.ranges)
    obj = {"covers": ok, "membership": memb, "size": len(set(ids))}
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    return 0 if ok else 2


def _cmd_bench(args) -> int:
    rows, summary = run_bench(
        kind=args.kind,
        seeds=args.seeds,
        max_ranges=args.max_ranges,
        n_points=args.points,
        extent=args.extent,
        with_oracle=args.with_oracle,
    )
    if args.out_csv:
        with open(args.out_csv, "w") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    summary_text = json.dumps(summary, sort_keys=True, indent=2) + "\n"
    if args.out_json:
        with open(args.out_json, "w") as fh:
            fh.write(summary_text)
    else:
        sys.stdout.write(summary_text)
    return 0


def _cmd_plot(args) -> int:
    doc = _load(args.instance)
    cover_ids: list[int] = []
    if args.cover:
        with open(args.cover) as fh:
            cover_ids = json.load(fh).get("cover", [])
    svg = render_svg(doc, cover_ids)
    with open(args.out, "w") as fh:
        fh.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _CliParser(prog="membercover")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance")
    gen.add_argument("--kind", choices=(KIND_SQUARES, KIND_HALFPLANES), required=True)
    gen.add_argument("--points", type=int, default=8)
    gen.add_argument("--prime-points", type=int, default=None)
    gen.add_argument("--ranges", type=int, default=8)
    gen.add_argument("--extent", type=int, default=4)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="run the approximation solvers")
    solve.add_argument("instance")
    solve.add_argument(
        "--objective",
        choices=(OBJECTIVE_MEMBERSHIP, OBJECTIVE_PLY),
        default=OBJECTIVE_MEMBERSHIP,
    )
    solve.add_argument("--epsilon", default="1")
    solve.add_argument("--with-oracle", action="store_true")
    solve.set_defaults(func=_cmd_solve)

    exact = sub.add_parser("exact", help="run the exact oracles")
    exact.add_argument("instance")
    exact.add_argument(
        "--objective",
        choices=(OBJECTIVE_MEMBERSHIP, OBJECTIVE_PLY, OBJECTIVE_SIZE),
        default=OBJECTIVE_MEMBERSHIP,
    )
    exact.add_argument(
        "--solver",
        choices=("bruteforce", "search"),
        default="bruteforce",
        help="membership on halfplanes can also use the escalation search",
    )
    exact.add_argument("--max-ranges", type=int, default=16)
    exact.set_defaults(func=_cmd_exact)

    verify = sub.add_parser("verify", help="check a cover file against an instance")
    verify.add_argument("instance")
    verify.add_argument("cover")
    verify.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="run a seeded solver matrix")
    bench.add_argument("--kind", choices=(KIND_SQUARES, KIND_HALFPLANES), required=True)
    bench.add_argument("--seeds", type=int, default=20)
    bench.add_argument("--max-ranges", type=int, default=8)
    bench.add_argument("--points", type=int, default=8)
    bench.add_argument("--extent", type=int, default=4)
    bench.add_argument("--with-oracle", action="store_true")
    bench.add_argument("--out-csv", default=None)
    bench.add_argument("--out-json", default=None)
    bench.set_defaults(func=_cmd_bench)

    plot = sub.add_parser("plot", help="render an instance (and cover) as SVG")
    plot.add_argument("instance")
    plot.add_argument("--cover", default=None)
    plot.add_argument("--out", required=True)
    plot.set_defaults(func=_cmd_plot)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InstanceParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Uncoverable as exc:
        print(f"uncoverable: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
