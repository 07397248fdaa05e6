"""Exhaustive k-subset enumeration: the oracle every engine is checked against."""
from __future__ import annotations

from itertools import chain, combinations, islice
from math import comb

import numpy as np

from ..graph import Graph

MAX_SUBSETS = 10**7
MAX_FREE_N = 30
CHUNK = 1 << 16


class OracleRefused(ValueError):
    pass


def within_guard(n: int, k: int) -> bool:
    return n <= MAX_FREE_N or comb(n, k) <= MAX_SUBSETS


def brute_force(g: Graph, k: int, emit: bool = False) -> tuple[int, list[tuple] | None]:
    """Test every k-subset for pairwise adjacency, in lexicographic order.

    Returns ``(count, cliques)``; cliques are label tuples (``None`` unless
    ``emit``).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    if not within_guard(n, k):
        raise OracleRefused(f"brute force refused: n={n} > {MAX_FREE_N} and C({n},{k}) = {comb(n, k)} "
                            f"exceeds {MAX_SUBSETS}")
    found = [] if emit else None
    if k > n:
        return 0, found
    A = g.adjacency_matrix()
    pairs = list(combinations(range(k), 2))
    it = combinations(range(n), k)
    count = 0
    while True:
        chunk = np.fromiter(chain.from_iterable(islice(it, CHUNK)), dtype=np.int64).reshape(-1, k)
        if not len(chunk):
            break
        # keep only subsets whose pairs tested so far are all adjacent
        for i, j in pairs:
            chunk = chunk[A[chunk[:, i], chunk[:, j]]]
        count += len(chunk)
        if emit:
            found.extend(map(tuple, g.labels[chunk].tolist()))
    return count, found
