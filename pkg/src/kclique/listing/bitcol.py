"""BitCol: degeneracy-ordered roots, color-ordered induced subgraphs, bitmap candidates.

For a root ``u`` the universe is ``N+(u)`` in ascending (degeneracy) id; bit
``j`` of any row refers to ``universe[j]``. Each worker keeps the encoding of
the last root it built so consecutive arc units of one root reuse it.
"""
from __future__ import annotations

import numba
import numpy as np

from ..graph import orient
from ..intersect import (MaskTable, bit_join_into, clear_bit, fill_ones, merge_positions_into,
                         next_bit, popcount_row, set_bit, words_for)
from ..ordering import degeneracy_ordering
from ..sink import CliqueSink
from .engine import Engine, ListOptions, ScratchUsage, Worker, emit_rows
from .sdegree import sat_add

jit = numba.njit(cache=True, nogil=True)

# worker state slots
_ROOT, _DEG, _WORDS, _STAMP, _PEAK = range(5)


@jit
def build_root(off, nbr, u, L, rows, color, ldeg, visit, mark, pos, state):
    """Encode the color-ordered DAG induced by ``N+(u)`` into ``rows``."""
    lo = off[u]
    d = off[u + 1] - lo
    W = (d + L - 1) // L
    univ = nbr[lo:lo + d]
    for i in range(d):
        for w in range(W):
            rows[i, w] = 0
        color[i] = 0
    # undirected induced adjacency first
    for i in range(d):
        v = univ[i]
        found = merge_positions_into(nbr[off[v]:off[v + 1]], univ, pos)
        for t in range(found):
            j = pos[t]
            set_bit(rows[i], j, L)
            set_bit(rows[j], i, L)
    # visit order: descending local degree, ties by ascending position (counting sort)
    for i in range(d + 1):
        mark[i] = 0
    for i in range(d):
        ldeg[i] = popcount_row(rows[i], W)
        mark[ldeg[i]] += 1
    start = 0
    for deg in range(d, -1, -1):
        c = mark[deg]
        mark[deg] = start
        start += c
    for i in range(d):
        visit[mark[ldeg[i]]] = i
        mark[ldeg[i]] += 1
    # greedy coloring; mark[c] == stamp means color c is taken by a neighbor
    for i in range(d + 2):
        mark[i] = 0
    no_table = np.zeros(0, dtype=np.int8)
    for t in range(d):
        i = visit[t]
        state[_STAMP] += 1
        stamp = state[_STAMP]
        p = next_bit(rows[i], W, L, 0, no_table)
        while p >= 0:
            if color[p] > 0:
                mark[color[p]] = stamp
            p = next_bit(rows[i], W, L, p + 1, no_table)
        c = 1
        while mark[c] == stamp:
            c += 1
        color[i] = c
    # keep only arcs toward lower colors (equal colors are never adjacent)
    for i in range(d):
        p = next_bit(rows[i], W, L, 0, no_table)
        while p >= 0:
            if color[p] >= color[i]:
                clear_bit(rows[i], p, L)
            p = next_bit(rows[i], W, L, p + 1, no_table)
    state[_ROOT] = u
    state[_DEG] = d
    state[_WORDS] = W
    return d, W


@jit
def _search(univ, k, l0, depth, R, rows, cb, W, L, color, first_bit, out, nout, emit,
            prune_color, prune_size, cursor):
    """Extend ``R[:depth]`` by every ``l0``-clique whose bits are set in ``cb[l0]``."""
    count = np.uint64(0)
    l = l0
    cursor[l] = 0
    while True:
        p = next_bit(cb[l], W, L, cursor[l], first_bit)
        if p < 0:
            if l == l0:
                break
            l += 1
            depth -= 1
            continue
        cursor[l] = p + 1
        if prune_color and color[p] < l:
            continue
        bit_join_into(rows[p], cb[l], cb[l - 1], W)
        if l == 2:
            c = popcount_row(cb[1], W)
            count = sat_add(count, c)
            if emit and c:
                q = next_bit(cb[1], W, L, 0, first_bit)
                while q >= 0:
                    for s in range(depth):
                        out[nout, s] = R[s]
                    out[nout, depth] = univ[p]
                    out[nout, depth + 1] = univ[q]
                    nout += 1
                    q = next_bit(cb[1], W, L, q + 1, first_bit)
        elif not prune_size or popcount_row(cb[l - 1], W) >= l - 1:
            R[depth] = univ[p]
            depth += 1
            l -= 1
            cursor[l] = 0
    return count, nout


@jit
def _position(univ, v):
    lo = 0
    hi = univ.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if univ[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


@jit
def bitcol_units(off, nbr, k, L, units, counts, rows, cb, color, ldeg, visit, mark, pos, R,
                 cursor, state, first_bit, out, emit, prune_color, prune_size):
    nout = 0
    for i in range(units.shape[0]):
        u = units[i, 0]
        v = units[i, 1]
        counts[i] = 0
        if state[_ROOT] != u:
            build_root(off, nbr, u, L, rows, color, ldeg, visit, mark, pos, state)
            fill_ones(cb[k - 1], state[_DEG], L)
        d = state[_DEG]
        W = state[_WORDS]
        univ = nbr[off[u]:off[u] + d]
        R[0] = u
        if v < 0:
            lowest = 1 if k >= 3 else k - 1
            words = d * W + (k - lowest) * W
            if words > state[_PEAK]:
                state[_PEAK] = words
            c, nout = _search(univ, k, k - 1, 1, R, rows, cb, W, L, color, first_bit, out, nout,
                              emit, prune_color, prune_size, cursor)
            counts[i] = c
            continue
        p = _position(univ, v)
        if prune_color and color[p] < k - 1:
            continue
        R[1] = v
        for w in range(W):
            cb[k - 2, w] = rows[p, w]
        words = d * W + 2 * W
        if words > state[_PEAK]:
            state[_PEAK] = words
        if k == 3:
            c = popcount_row(cb[1], W)
            counts[i] = c
            if emit and c:
                q = next_bit(cb[1], W, L, 0, first_bit)
                while q >= 0:
                    out[nout, 0] = u
                    out[nout, 1] = v
                    out[nout, 2] = univ[q]
                    nout += 1
                    q = next_bit(cb[1], W, L, q + 1, first_bit)
            continue
        if prune_size and popcount_row(cb[k - 2], W) < k - 2:
            continue
        words = d * W + (k - 1) * W
        if words > state[_PEAK]:
            state[_PEAK] = words
        c, nout = _search(univ, k, k - 2, 2, R, rows, cb, W, L, color, first_bit, out, nout,
                          emit, prune_color, prune_size, cursor)
        counts[i] = c
    return nout


class BitColWorker(Worker):
    def __init__(self, engine: "BitCol"):
        super().__init__(engine)
        k = engine.k
        delta = max(engine.max_out_degree, 1)
        L = engine.options.word_bits
        W = words_for(delta, L)
        self.rows = np.zeros((delta, W), dtype=np.uint64)
        self.cb = np.zeros((k, W), dtype=np.uint64)
        self.color = np.zeros(delta, dtype=np.int64)
        self.ldeg = np.zeros(delta, dtype=np.int64)
        self.visit = np.zeros(delta, dtype=np.int64)
        self.mark = np.zeros(delta + 2, dtype=np.int64)
        self.pos = np.zeros(delta, dtype=np.int64)
        self.R = np.zeros(k, dtype=np.int32)
        self.cursor = np.zeros(k, dtype=np.int64)
        self.state = np.zeros(5, dtype=np.int64)
        self.state[_ROOT] = -1
        dm = engine.max_out_degree
        wm = words_for(dm, L)
        self.scratch = ScratchUsage("words", bound=dm * wm + k * wm, allocated=self.rows.size + self.cb.size)
        self._no_out = np.zeros((0, k), dtype=np.int32)

    def _call(self, units, counts, out, emit):
        e = self.engine
        o = e.options
        return bitcol_units(e.dag.out_offsets, e.dag.out_neighbors, e.k, o.word_bits, units, counts,
                            self.rows, self.cb, self.color, self.ldeg, self.visit, self.mark, self.pos,
                            self.R, self.cursor, self.state, e.first_bit, out, emit,
                            o.prune_color, o.prune_size)

    def run(self, units: np.ndarray, sink: CliqueSink) -> np.ndarray:
        counts = np.zeros(len(units), dtype=np.uint64)
        self._call(units, counts, self._no_out, False)
        total = sum(counts.tolist())
        if sink.emit and total:
            out = np.empty((total, self.engine.k), dtype=np.int32)
            self._call(units, np.zeros_like(counts), out, True)
            emit_rows(sink, out, self.engine.dag_labels())
        for c in counts.tolist():
            sink.add(c)
        self.scratch.peak = max(self.scratch.peak, int(self.state[_PEAK]))
        return counts


class BitCol(Engine):
    name = "bitcol"

    def __init__(self, g, k, options: ListOptions):
        super().__init__(g, k, options)
        self.dag = orient(g, degeneracy_ordering(g)[0])
        if options.decode == "table":
            self.first_bit = MaskTable(options.word_bits).first_bit
        else:
            self.first_bit = np.zeros(0, dtype=np.int8)

    def worker(self) -> BitColWorker:
        return BitColWorker(self)
