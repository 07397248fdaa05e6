"""``kcl``: run, crosscheck and generate.

Exit codes: 0 success, 1 runtime error, 2 usage error, 3 crosscheck disagreement.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from .generators import MODELS, GenSpec, generate
from .graph import Graph, load_edge_list, orient, stats
from .listing import ENGINES, ListOptions
from .listing.brute import OracleRefused, brute_force, within_guard
from .ordering import degeneracy_ordering
from .parallel import STRATEGIES, ParallelPlan
from .pipeline import list_cliques
from .sink import CliqueSink, format_clique

ORDERINGS = ("degree", "degeneracy", "color")
EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3

# engines compared by `kcl crosscheck`: (column name, algo, ordering)
CROSSCHECK = [
    ("sdegree", "sdegree", None),
    ("bitcol", "bitcol", None),
    ("chiba", "chiba", None),
    ("kclist-degeneracy", "kclist", "degeneracy"),
    ("kclist-degree", "kclist", "degree"),
    ("kclist-color", "kclist", "color"),
]

ENGINE_ORDERING = {"sdegree": "degree", "bitcol": "degeneracy+color", "chiba": "degree-descending"}


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    dataset: str
    k: int
    algorithm: str
    ordering: str
    strategy: str
    workers: int
    precore: bool
    prelist: bool
    count: int
    saturated: bool
    timed_out: bool
    timings_ms: dict = field(default_factory=dict)
    scratch: dict = field(default_factory=dict)
    graph: dict = field(default_factory=dict)


def _load(path: str) -> Graph:
    if path == "-":
        return load_edge_list(sys.stdin.buffer)
    return load_edge_list(path)


def _plan(args) -> ParallelPlan:
    strategy = args.strategy or ("node" if args.workers > 1 else "serial")
    try:
        return ParallelPlan(strategy=strategy, workers=args.workers, seed=args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _options(args, ordering: str | None = None) -> ListOptions:
    try:
        return ListOptions(precore=not args.no_precore, prelist=not args.no_prelist,
                           word_bits=args.word_bits, ordering=ordering or "degeneracy")
    except ValueError as e:
        raise UsageError(str(e)) from None


def _check_combination(args, plan: ParallelPlan) -> None:
    if args.k < 1:
        raise UsageError("-k must be >= 1")
    if args.ordering is not None and args.algo != "kclist":
        raise UsageError(f"--ordering applies to kclist only, not {args.algo}")
    if args.algo == "chiba" and plan.strategy != "serial":
        raise UsageError("chiba is sequential by construction; it cannot run with --strategy "
                         f"{plan.strategy}")
    if plan.strategy == "edge" and args.k < 3:
        raise UsageError("--strategy edge requires k >= 3")


def build_report(dataset: str, g: Graph, args, plan: ParallelPlan, result, load_ms: float) -> RunReport:
    s = stats(g)
    dag = orient(g, degeneracy_ordering(g)[0])
    peak = max((u.peak for u in result.scratch), default=0)
    bound = max((u.bound for u in result.scratch), default=0)
    unit = result.scratch[0].unit if result.scratch else "ids"
    ordering = (args.ordering or "degeneracy") if args.algo == "kclist" else ENGINE_ORDERING[args.algo]
    return RunReport(
        dataset=dataset, k=args.k, algorithm=args.algo, ordering=ordering, strategy=plan.strategy,
        workers=plan.workers, precore=not args.no_precore, prelist=not args.no_prelist,
        count=result.count, saturated=result.saturated, timed_out=result.timed_out,
        timings_ms={"load": round(load_ms, 3), **{k: round(v, 3) for k, v in result.timings.items()}},
        scratch={"unit": unit, "peak": peak, "bound": bound, "workers": len(result.scratch)},
        graph={"n": s.n, "m": s.m, "degeneracy": s.degeneracy, "h_index": s.h_index,
               "max_out_degree": dag.max_out_degree},
    )


def format_table(r: RunReport) -> str:
    rows = [
        ("dataset", r.dataset), ("k", r.k), ("algorithm", r.algorithm), ("ordering", r.ordering),
        ("strategy", f"{r.strategy} x{r.workers}"),
        ("preprocess", f"precore={'on' if r.precore else 'off'} prelist={'on' if r.prelist else 'off'}"),
        ("count", f"{r.count}{' (saturated)' if r.saturated else ''}{' (timed out, partial)' if r.timed_out else ''}"),
        ("graph", " ".join(f"{k}={v}" for k, v in r.graph.items())),
        ("time ms", " ".join(f"{k}={v:.1f}" for k, v in r.timings_ms.items())),
        ("scratch", f"peak={r.scratch['peak']} bound={r.scratch['bound']} {r.scratch['unit']}"),
    ]
    w = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{w}}  {v}" for k, v in rows)


def cmd_run(args) -> int:
    plan = _plan(args)
    _check_combination(args, plan)
    options = _options(args, args.ordering)
    t0 = time.perf_counter()
    g = _load(args.input)
    load_ms = (time.perf_counter() - t0) * 1e3
    out = sys.stdout
    sink = CliqueSink(callback=lambda c: out.write(format_clique(c) + "\n")) if args.emit else None
    result = list_cliques(g, args.k, args.algo, options, plan, sink=sink, time_limit=args.time_limit)
    report = build_report(os.path.basename(args.input), g, args, plan, result, load_ms)
    dest = sys.stderr if args.emit else sys.stdout
    if args.json:
        print(json.dumps(asdict(report), indent=2), file=dest)
    else:
        print(format_table(report), file=dest)
    if report.saturated:
        print("warning: clique count saturated at 2^64-1", file=sys.stderr)
    if report.timed_out:
        print("warning: time limit reached; count is partial", file=sys.stderr)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    g = _load(args.input)
    oracle = not args.skip_oracle
    if oracle:
        bad = [k for k in args.k if not within_guard(g.n, k)]
        if bad:
            raise UsageError(f"instance too large for the brute-force oracle at k={bad[0]} "
                             "(needs n <= 30 or C(n,k) <= 10^7); pass --skip-oracle")
    columns = [name for name, _, _ in CROSSCHECK] + (["oracle"] if oracle else [])
    print("k  " + "  ".join(columns))
    first_bad = None
    for k in args.k:
        row = {}
        sets = {}
        for name, algo, ordering in CROSSCHECK:
            opts = _options(args, ordering)
            r = list_cliques(g, k, algo, opts, emit=args.emit)
            row[name] = r.count
            if args.emit:
                sets[name] = sorted(tuple(sorted(c)) for c in r.cliques)
        if oracle:
            row["oracle"], found = brute_force(g, k, emit=args.emit)
            if args.emit:
                sets["oracle"] = sorted(tuple(sorted(c)) for c in found)
        print(f"{k}  " + "  ".join(str(row[c]) for c in columns))
        ref = columns[-1]
        for c in columns:
            differs = row[c] != row[ref] or (args.emit and sets[c] != sets[ref])
            if differs and first_bad is None:
                first_bad = (k, c, ref, row[c], row[ref])
    if first_bad is not None:
        k, a, b, ca, cb = first_bad
        print(f"DISAGREE k={k}: {a}={ca} vs {b}={cb}", file=sys.stderr)
        return EXIT_DISAGREE
    print("all agree")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.model, args.n, p=args.p, clique=args.clique, attach=args.attach, seed=args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = generate(spec).to_text()
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-precore", action="store_true", help="skip the (k-1)-core reduction")
    p.add_argument("--no-prelist", action="store_true", help="skip complete-component short-circuit")
    p.add_argument("--word-bits", type=int, default=64, help="bitmap word width L for bitcol (1..64)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kcl", description="k-clique listing toolkit")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="list or count k-cliques (default command)")
    run.add_argument("--input", required=True, help="edge-list file, or - for stdin")
    run.add_argument("-k", type=int, required=True)
    run.add_argument("--algo", choices=tuple(ENGINES), default="sdegree")
    run.add_argument("--ordering", choices=ORDERINGS, default=None, help="vertex ordering (kclist only)")
    run.add_argument("--strategy", choices=STRATEGIES, default=None,
                     help="default: serial, or node when --workers > 1")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--emit", action="store_true", help="print every clique on stdout")
    run.add_argument("--json", action="store_true", help="machine-readable report")
    run.add_argument("--seed", type=int, default=None, help="shuffle the parallel work queue")
    run.add_argument("--time-limit", type=float, default=None, metavar="SECONDS",
                     help="soft limit on listing, checked between roots")
    _add_common(run)
    run.set_defaults(func=cmd_run)

    cc = sub.add_parser("crosscheck", help="compare every engine (and the oracle) on one input")
    cc.add_argument("--input", required=True)
    cc.add_argument("-k", type=int, nargs="+", required=True)
    cc.add_argument("--skip-oracle", action="store_true")
    cc.add_argument("--emit", action="store_true", help="also compare the sorted clique sets")
    _add_common(cc)
    cc.set_defaults(func=cmd_crosscheck)

    gen = sub.add_parser("gen", help="write a seeded synthetic edge list")
    gen.add_argument("model", choices=MODELS)
    gen.add_argument("-n", type=int, required=True)
    gen.add_argument("-p", type=float, default=0.1, help="edge probability (gnp, planted-clique)")
    gen.add_argument("--clique", type=int, default=0, help="planted clique size")
    gen.add_argument("--attach", type=int, default=3, help="edges per new vertex (barabasi)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", default=None)
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in ("run", "crosscheck", "gen", "-h", "--help"):
        argv.insert(0, "run")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"kcl: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OracleRefused as e:
        print(f"kcl: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        print(f"kcl: error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
