"""Reference engines in plain Python: Chiba-Nishizeki and kClist.

Both are deliberately simple so they can serve as independent implementations
in differential tests. Neither touches the compiled kernels.
"""
from __future__ import annotations

import numpy as np

from ..graph import Graph, orient
from ..ordering import by_name
from ..sink import CliqueSink
from .engine import Engine, ListOptions, ScratchUsage, Worker


def _cn_complete(adj: dict[int, set[int]], l: int, R: list[int], out: list) -> int:
    """Count (and optionally collect) the l-cliques of ``adj`` extending ``R``."""
    if l == 1:
        if out is not None:
            out.extend(tuple(R) + (v,) for v in adj)
        return len(adj)
    if l == 2:
        n = 0
        for v, nb in adj.items():
            for w in nb:
                if v < w:
                    n += 1
                    if out is not None:
                        out.append(tuple(R) + (v, w))
        return n
    adj = {v: set(nb) for v, nb in adj.items()}
    # descending degree in the current graph; ties by id for determinism
    order = sorted(adj, key=lambda v: (-len(adj[v]), v))
    n = 0
    for v in order:
        nb = adj[v]
        if len(nb) >= l - 1:
            sub = {w: adj[w] & nb for w in nb}
            R.append(v)
            n += _cn_complete(sub, l - 1, R, out)
            R.pop()
        for w in nb:
            adj[w].discard(v)
        del adj[v]
    return n


class _WholeGraphWorker(Worker):
    """Processes the single pseudo-unit of a serial-only engine."""

    def run(self, units, sink: CliqueSink) -> np.ndarray:
        counts = np.zeros(len(units), dtype=np.uint64)
        if len(units):
            out = [] if sink.emit else None
            n = self.engine.list_all(out)
            counts[0] = min(n, 2**64 - 1)
            sink.add(n)
            if out:
                sink.extend(out)
        return counts


class ChibaNishizeki(Engine):
    """Vertex elimination in descending degree order; inherently sequential."""

    name = "chiba"
    parallel = False

    def root_units(self) -> np.ndarray:
        return np.array([[-1, -1]], dtype=np.int64)

    def edge_units(self) -> np.ndarray:
        raise ValueError("chiba lists the whole graph in one sequential pass")

    def worker(self) -> Worker:
        return _WholeGraphWorker(self)

    def list_all(self, out: list | None) -> int:
        g = self.graph
        adj = {int(v): set(g.adj(v).tolist()) for v in range(g.n)}
        cliques = [] if out is not None else None
        n = _cn_complete(adj, self.k, [], cliques)
        if out is not None:
            labels = g.labels
            out.extend(tuple(int(labels[v]) for v in c) for c in cliques)
        return n


def _kclist_rec(out_sets: list[set[int]], V: set[int], l: int, R: list[int], out: list | None) -> int:
    if l == 1:
        if out is not None:
            out.extend(tuple(R) + (v,) for v in sorted(V))
        return len(V)
    n = 0
    for v in sorted(V):
        # induced sub-DAG on N+(v) within the current subgraph
        sub = out_sets[v] & V
        if len(sub) < l - 1:
            continue
        R.append(v)
        if l == 2:
            n += len(sub)
            if out is not None:
                out.extend(tuple(R) + (w,) for w in sorted(sub))
        else:
            n += _kclist_rec(out_sets, sub, l - 1, R, out)
        R.pop()
    return n


class _KClistWorker(Worker):
    def run(self, units, sink: CliqueSink) -> np.ndarray:
        e = self.engine
        k = e.k
        out_sets = e.out_sets
        labels = e.dag_labels()
        counts = np.zeros(len(units), dtype=np.uint64)
        for i, (u, v) in enumerate(units.tolist()):
            out = [] if sink.emit else None
            if v < 0:
                n = _kclist_rec(out_sets, out_sets[u], k - 1, [u], out)
            else:
                n = _kclist_rec(out_sets, out_sets[u] & out_sets[v], k - 2, [u, v], out)
            counts[i] = min(n, 2**64 - 1)
            sink.add(n)
            if out:
                sink.extend(tuple(int(labels[x]) for x in c) for c in out)
        return counts


class KClist(Engine):
    """Orient by ``options.ordering``, then recurse on induced out-neighborhoods."""

    name = "kclist"

    def __init__(self, g: Graph, k: int, options: ListOptions):
        super().__init__(g, k, options)
        self.dag = orient(g, by_name(g, options.ordering))
        self.out_sets = [set(self.dag.out(v).tolist()) for v in range(self.dag.n)]

    def worker(self) -> Worker:
        w = _KClistWorker(self)
        w.scratch = ScratchUsage("ids")
        return w
