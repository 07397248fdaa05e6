"""Linear-time reductions applied before listing.

``pre_core`` strips every vertex that cannot sit in a (k-1)-core; ``pre_list``
reports complete connected components in closed form and deletes them.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .graph import Graph
from .sink import CliqueSink, saturating_add, U64_MAX


@dataclass
class ReductionReport:
    removed_vertices: int = 0
    removed_components: int = 0
    precounted_cliques: int = 0
    saturated: bool = False
    emitted: bool = False

    def add_clique_count(self, n: int) -> None:
        self.precounted_cliques, sat = saturating_add(self.precounted_cliques, n)
        self.saturated = self.saturated or sat

    def merge(self, other: "ReductionReport") -> "ReductionReport":
        out = ReductionReport(
            self.removed_vertices + other.removed_vertices,
            self.removed_components + other.removed_components,
            self.precounted_cliques,
            self.saturated or other.saturated,
            self.emitted or other.emitted,
        )
        out.add_clique_count(other.precounted_cliques)
        return out


def pre_core(g: Graph, k: int) -> tuple[Graph, ReductionReport]:
    if k < 2:
        raise ValueError("pre_core needs k >= 2")
    removed = core_cascade(g, k - 1)
    keep = ~removed
    report = ReductionReport(removed_vertices=int(removed.sum()))
    if report.removed_vertices == 0:
        return g, report
    return g.induced(keep), report


def core_cascade(g: Graph, min_degree: int) -> np.ndarray:
    """Queue cascade: mark every vertex that falls below ``min_degree``."""
    deg = g.degrees.tolist()
    offs = g.offsets.tolist()
    nb = g.neighbors.tolist()
    removed = [d < min_degree for d in deg]
    queue = deque(v for v in range(g.n) if removed[v])
    while queue:
        u = queue.popleft()
        for j in range(offs[u], offs[u + 1]):
            v = nb[j]
            deg[v] -= 1
            if deg[v] < min_degree and not removed[v]:
                removed[v] = True
                queue.append(v)
    return np.array(removed, dtype=bool)


def components(g: Graph) -> list[np.ndarray]:
    """Connected components by BFS, each as an ascending vertex array."""
    seen = np.zeros(g.n, dtype=bool)
    offs = g.offsets
    nb = g.neighbors
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in nb[offs[u]:offs[u + 1]].tolist():
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        out.append(np.sort(np.array(comp, dtype=np.int64)))
    return out


def pre_list(g: Graph, k: int, sink: CliqueSink | None = None) -> tuple[Graph, ReductionReport]:
    """Report and delete connected components that are complete graphs."""
    if k < 2:
        raise ValueError("pre_list needs k >= 2")
    report = ReductionReport(emitted=bool(sink is not None and sink.emit))
    deg = g.degrees
    drop = np.zeros(g.n, dtype=bool)
    for comp in components(g):
        n_c = len(comp)
        if n_c < k:
            continue
        stored_arcs = int(deg[comp].sum())  # both directions of every edge
        m_c = stored_arcs // 2
        assert 2 * m_c == stored_arcs
        if stored_arcs != n_c * (n_c - 1):
            continue
        assert m_c == comb(n_c, 2)
        count = comb(n_c, k)
        report.add_clique_count(count)
        report.removed_components += 1
        report.removed_vertices += n_c
        drop[comp] = True
        if sink is not None:
            sink.add(count)
            if sink.emit:
                labels = g.labels[comp].tolist()
                sink.extend(combinations(labels, k))
    if not drop.any():
        return g, report
    return g.induced(~drop), report


__all__ = ["ReductionReport", "pre_core", "pre_list", "components", "core_cascade", "U64_MAX"]
