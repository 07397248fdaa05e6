"""SDegree: degree-ordered DAG, candidate sets shrunk by block-merge intersections."""
from __future__ import annotations

import numba
import numpy as np

from ..graph import orient
from ..intersect import BLOCK_WIDTHS, block_merge_into, merge_into
from ..ordering import degree_ordering
from ..sink import CliqueSink
from .engine import Engine, ListOptions, ScratchUsage, Worker, emit_rows

U64_MAX = np.uint64(0xFFFFFFFFFFFFFFFF)

jit = numba.njit(cache=True, nogil=True)


@jit
def sat_add(a, b):
    b = np.uint64(b)
    if a > U64_MAX - b:
        return U64_MAX
    return a + b


@jit
def _search(off, nbr, k, l0, depth, R, cand, sizes, cursor, out, nout, emit,
            prune_degree, prune_size, block, peak):
    """Find all ``l0``-cliques in ``cand[l0, :sizes[l0]]`` extending ``R[:depth]``.

    Level ``l`` holds the candidate set that still needs ``l`` more vertices;
    ``cand[l - 1]`` receives the intersection computed at level ``l``.
    """
    count = np.uint64(0)
    l = l0
    cursor[l] = 0
    live = sizes[l]
    while True:
        if cursor[l] >= sizes[l]:
            if l == l0:
                break
            live -= sizes[l]
            l += 1
            depth -= 1
            continue
        v = cand[l, cursor[l]]
        cursor[l] += 1
        lo = off[v]
        hi = off[v + 1]
        if prune_degree and hi - lo <= l - 2:
            continue
        if block:
            n = block_merge_into(nbr[lo:hi], cand[l, :sizes[l]], cand[l - 1], block)
        else:
            n = merge_into(nbr[lo:hi], cand[l, :sizes[l]], cand[l - 1])
        if l == 2:
            count = sat_add(count, n)
            if emit:
                for t in range(n):
                    for s in range(depth):
                        out[nout, s] = R[s]
                    out[nout, depth] = v
                    out[nout, depth + 1] = cand[1, t]
                    nout += 1
        elif not prune_size or n > l - 2:
            sizes[l - 1] = n
            R[depth] = v
            depth += 1
            l -= 1
            cursor[l] = 0
            live += n
            if live > peak[0]:
                peak[0] = live
    return count, nout


@jit
def sdegree_units(off, nbr, k, units, counts, cand, sizes, cursor, R, out, emit,
                  prune_degree, prune_size, block, peak):
    """Process root units ``(u, -1)`` and arc units ``(u, v)``; fills ``counts``."""
    nout = 0
    for i in range(units.shape[0]):
        u = units[i, 0]
        v = units[i, 1]
        R[0] = u
        lo = off[u]
        hi = off[u + 1]
        if v < 0:
            d = hi - lo
            for t in range(d):
                cand[k - 1, t] = nbr[lo + t]
            sizes[k - 1] = d
            if d > peak[0]:
                peak[0] = d
            c, nout = _search(off, nbr, k, k - 1, 1, R, cand, sizes, cursor, out, nout, emit,
                              prune_degree, prune_size, block, peak)
            counts[i] = c
            continue
        # arc unit: start one level down with R = (u, v)
        counts[i] = 0
        vlo = off[v]
        vhi = off[v + 1]
        if prune_degree and vhi - vlo <= k - 3:
            continue
        if block:
            n = block_merge_into(nbr[vlo:vhi], nbr[lo:hi], cand[k - 2], block)
        else:
            n = merge_into(nbr[vlo:vhi], nbr[lo:hi], cand[k - 2])
        R[1] = v
        if n > peak[0]:
            peak[0] = n
        if k == 3:
            counts[i] = n
            if emit:
                for t in range(n):
                    out[nout, 0] = u
                    out[nout, 1] = v
                    out[nout, 2] = cand[1, t]
                    nout += 1
            continue
        if prune_size and n <= k - 3:
            continue
        sizes[k - 2] = n
        c, nout = _search(off, nbr, k, k - 2, 2, R, cand, sizes, cursor, out, nout, emit,
                          prune_degree, prune_size, block, peak)
        counts[i] = c
    return nout


class SDegreeWorker(Worker):
    def __init__(self, engine: "SDegree"):
        super().__init__(engine)
        k, delta = engine.k, max(engine.max_out_degree, 1)
        self.cand = np.zeros((k, delta), dtype=np.int32)
        self.sizes = np.zeros(k, dtype=np.int64)
        self.cursor = np.zeros(k, dtype=np.int64)
        self.R = np.zeros(k, dtype=np.int32)
        self.peak = np.zeros(1, dtype=np.int64)
        self.scratch = ScratchUsage("ids", bound=k * engine.max_out_degree,
                                    allocated=(k - 1) * engine.max_out_degree)
        self._no_out = np.zeros((0, k), dtype=np.int32)

    def _call(self, units, counts, out, emit):
        e = self.engine
        o = e.options
        return sdegree_units(e.dag.out_offsets, e.dag.out_neighbors, e.k, units, counts,
                             self.cand, self.sizes, self.cursor, self.R, out, emit,
                             o.prune_degree, o.prune_size, o.block, self.peak)

    def run(self, units: np.ndarray, sink: CliqueSink) -> np.ndarray:
        counts = np.zeros(len(units), dtype=np.uint64)
        self._call(units, counts, self._no_out, False)
        total = sum(counts.tolist())
        if sink.emit and total:
            out = np.empty((total, self.engine.k), dtype=np.int32)
            again = np.zeros_like(counts)
            self._call(units, again, out, True)
            emit_rows(sink, out, self.engine.dag_labels())
        for c in counts.tolist():
            sink.add(c)
        self.scratch.peak = max(self.scratch.peak, int(self.peak[0]))
        return counts


class SDegree(Engine):
    """Degree ordering; ``options.block`` picks the block width (0 = scalar merge)."""

    name = "sdegree"

    def __init__(self, g, k, options: ListOptions):
        super().__init__(g, k, options)
        if options.block not in (0,) + BLOCK_WIDTHS:
            raise ValueError(f"block width must be 0 or one of {BLOCK_WIDTHS}")
        self.dag = orient(g, degree_ordering(g))

    def worker(self) -> SDegreeWorker:
        return SDegreeWorker(self)
