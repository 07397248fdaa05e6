"""Per-k runtime of each engine on a seeded G(n, p), serial and NodeParallel.

    python scripts/scaling.py --n 2000 --p 0.02 --ks 3 4 5 6 --workers 1 4
"""
import argparse
import json
import time

from kclique.generators import gnp
from kclique.parallel import ParallelPlan
from kclique.pipeline import list_cliques


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--p", type=float, default=0.02)
    ap.add_argument("--seed", type=int, default=2000)
    ap.add_argument("--ks", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--algos", nargs="+", default=["sdegree", "bitcol", "kclist"])
    ap.add_argument("--workers", type=int, nargs="+", default=[1])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    g = gnp(args.n, args.p, args.seed)
    for algo in args.algos:
        for workers in args.workers:
            plan = ParallelPlan("node" if workers > 1 else "serial", workers)
            for k in args.ks:
                best = float("inf")
                for _ in range(args.repeats):
                    t0 = time.perf_counter()
                    r = list_cliques(g, k, algo, plan=plan)
                    best = min(best, time.perf_counter() - t0)
                print(json.dumps({"algo": algo, "workers": workers, "k": k, "count": r.count,
                                  "seconds": round(best, 5), "phases_ms": {a: round(b, 2) for a, b in r.timings.items()}}))


if __name__ == "__main__":
    main()
