"""How much Pre-Core and Pre-List shrink a graph and the listing time.

    python scripts/preprocess_effect.py --model planted-clique --n 3000 --p 0.01 --clique 14 --ks 4 6 8
"""
import argparse
import time

from kclique.generators import GenSpec, generate
from kclique.listing import ListOptions
from kclique.pipeline import list_cliques
from kclique.preprocess import pre_core, pre_list


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="planted-clique")
    ap.add_argument("--n", type=int, default=3000)
    ap.add_argument("--p", type=float, default=0.01)
    ap.add_argument("--clique", type=int, default=14)
    ap.add_argument("--attach", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ks", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--algo", default="bitcol")
    args = ap.parse_args()

    g = generate(GenSpec(args.model, args.n, args.p, args.clique, args.attach, args.seed)).graph
    list_cliques(g, 3, args.algo)  # compile the kernels before timing
    print(f"graph n={g.n} m={g.m}")
    print(f"{'k':>3} {'n_core':>7} {'n_list':>7} {'count':>10} {'ms_on':>9} {'ms_off':>9}")
    for k in args.ks:
        core, _ = pre_core(g, k)
        rest, _ = pre_list(core, k)
        times = {}
        for on in (True, False):
            t0 = time.perf_counter()
            r = list_cliques(g, k, args.algo, ListOptions(precore=on, prelist=on))
            times[on] = (time.perf_counter() - t0) * 1e3
        print(f"{k:>3} {core.n:>7} {rest.n:>7} {r.count:>10} {times[True]:>9.1f} {times[False]:>9.1f}")


if __name__ == "__main__":
    main()
