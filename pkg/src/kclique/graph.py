"""Undirected graphs in compressed adjacency form, their orientations, and statistics.

Vertex ids inside a :class:`Graph` are compact (``0..n-1``); ``labels`` maps them
back to the ids that appeared in the input file so emitted cliques can be
reported in the caller's vocabulary.
"""
from __future__ import annotations

import io
import os
import struct
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Union

import numpy as np

VERTEX_DTYPE = np.int32
OFFSET_DTYPE = np.int64
BINARY_MAGIC = b"KCLG1"

Source = Union[str, os.PathLike, bytes, BinaryIO, io.TextIOBase]


class EdgeListError(ValueError):
    """Raised for malformed edge-list input; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph.

    ``neighbors[offsets[v]:offsets[v+1]]`` is the strictly ascending neighbor
    list of ``v``; every edge is stored in both directions.
    """

    offsets: np.ndarray
    neighbors: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        for arr in (self.offsets, self.neighbors, self.labels):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    @property
    def m(self) -> int:
        return len(self.neighbors) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def adj(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of undirected edges with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.n, dtype=VERTEX_DTYPE), self.degrees)
        keep = src < self.neighbors
        return np.stack([src[keep], self.neighbors[keep]], axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj(u)
        i = np.searchsorted(a, v)
        return bool(i < len(a) and a[i] == v)

    def adjacency_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=bool)
        e = self.edges()
        mat[e[:, 0], e[:, 1]] = True
        mat[e[:, 1], e[:, 0]] = True
        return mat

    def induced(self, keep: np.ndarray) -> "Graph":
        """Subgraph induced by the boolean mask (or index array) ``keep``.

        Surviving vertices keep their relative order; labels follow them.
        """
        keep = np.asarray(keep)
        if keep.dtype != bool:
            mask = np.zeros(self.n, dtype=bool)
            mask[keep] = True
            keep = mask
        new_id = np.full(self.n, -1, dtype=np.int64)
        new_id[keep] = np.arange(int(keep.sum()))
        e = self.edges()
        e = e[keep[e[:, 0]] & keep[e[:, 1]]]
        return from_edges(int(keep.sum()), new_id[e], labels=self.labels[keep])

    def check(self) -> None:
        """Assert every representation invariant; used by tests and loaders."""
        deg = self.degrees
        assert self.offsets[0] == 0 and np.all(deg >= 0)
        assert deg.sum() == len(self.neighbors) == 2 * self.m
        assert len(self.labels) == self.n
        src = np.repeat(np.arange(self.n), deg)
        assert np.all(src != self.neighbors), "self-loop"
        if len(self.neighbors):
            same_row = src[1:] == src[:-1]
            assert np.all(self.neighbors[1:][same_row] > self.neighbors[:-1][same_row])
        fwd = set(zip(src.tolist(), self.neighbors.tolist()))
        assert all((v, u) in fwd for u, v in fwd), "asymmetric adjacency"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors)
                and np.array_equal(self.labels, other.labels))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edges(n: int, edges: Iterable, labels: np.ndarray | None = None) -> Graph:
    """Build a :class:`Graph` over ``0..n-1`` from any iterable of pairs.

    Duplicates and reversed duplicates collapse; self-loops are dropped.
    """
    e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                   dtype=np.int64).reshape(-1, 2)
    if len(e) and (e.min() < 0 or e.max() >= n):
        raise ValueError("edge endpoint outside 0..n-1")
    e = e[e[:, 0] != e[:, 1]]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    key = np.unique(lo * max(n, 1) + hi)
    lo, hi = key // max(n, 1), key % max(n, 1)
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    offsets = np.zeros(n + 1, dtype=OFFSET_DTYPE)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    if labels is None:
        labels = np.arange(n, dtype=np.int64)
    return Graph(offsets, dst.astype(VERTEX_DTYPE), np.asarray(labels, dtype=np.int64).copy())


def complete_graph(n: int) -> Graph:
    iu = np.triu_indices(n, 1)
    return from_edges(n, np.stack(iu, axis=1))


# -- ingestion -----------------------------------------------------------------

def _read_bytes(source: Source) -> bytes:
    if isinstance(source, bytes):
        return source
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read()
    data = source.read()
    return data.encode() if isinstance(data, str) else data


def load_edge_list(source: Source) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` are comments. Vertex ids are compacted
    in order of first appearance; a self-loop line still registers its vertex.
    """
    data = _read_bytes(source)
    if data.startswith(BINARY_MAGIC):
        return load_binary(data)
    ids: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line[:1] in (b"#", b"%"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListError(lineno, f"expected 2 tokens, got {len(tokens)}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListError(lineno, f"non-integer token in {raw.decode(errors='replace')!r}") from None
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        pairs.append((u, v))
    labels = np.fromiter(ids.keys(), dtype=np.int64, count=len(ids))
    return from_edges(len(ids), np.array(pairs, dtype=np.int64).reshape(-1, 2), labels)


def dump_edge_list(g: Graph) -> str:
    """Serialize so that ``load_edge_list(dump_edge_list(g)) == g``.

    If plain edge order would not reproduce the compact ids (or a vertex is
    isolated), a preamble of self-loop lines registers every vertex in order.
    """
    e = g.edges()
    lab = g.labels
    lines = [f"# n={g.n} m={g.m}"]
    seen_order = list(dict.fromkeys(e.ravel().tolist()))
    if seen_order != list(range(g.n)):
        lines.extend(f"{x} {x}" for x in lab.tolist())
    lines.extend(f"{lab[u]} {lab[v]}" for u, v in e.tolist())
    return "\n".join(lines) + "\n"


def dump_binary(g: Graph) -> bytes:
    """``KCLG1`` cache: magic, u64 n, u64 m, (n+1) u64 offsets, 2m u32 neighbors,
    then n i64 labels. All little-endian."""
    return b"".join([
        BINARY_MAGIC,
        struct.pack("<QQ", g.n, g.m),
        g.offsets.astype("<u8").tobytes(),
        g.neighbors.astype("<u4").tobytes(),
        g.labels.astype("<i8").tobytes(),
    ])


def load_binary(data: bytes) -> Graph:
    if not data.startswith(BINARY_MAGIC):
        raise ValueError("not a KCLG1 file")
    pos = len(BINARY_MAGIC)
    n, m = struct.unpack_from("<QQ", data, pos)
    pos += 16
    offsets = np.frombuffer(data, dtype="<u8", count=n + 1, offset=pos).astype(OFFSET_DTYPE)
    pos += 8 * (n + 1)
    neighbors = np.frombuffer(data, dtype="<u4", count=2 * m, offset=pos).astype(VERTEX_DTYPE)
    pos += 4 * 2 * m
    labels = np.frombuffer(data, dtype="<i8", count=n, offset=pos).astype(np.int64)
    return Graph(offsets, neighbors, labels)


# -- orderings and orientation ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class VertexOrdering:
    """Bijection between vertices and positions; ``rank[v] == i`` means v is (i+1)-th."""

    rank: np.ndarray
    order: np.ndarray

    @classmethod
    def from_order(cls, order) -> "VertexOrdering":
        order = np.asarray(order, dtype=np.int64)
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order))
        return cls(rank, order)

    def __len__(self):
        return len(self.rank)

    def is_bijection(self) -> bool:
        n = len(self.rank)
        return (np.array_equal(np.sort(self.order), np.arange(n))
                and np.array_equal(self.rank[self.order], np.arange(n)))


@dataclass(frozen=True, eq=False)
class Dag:
    """Orientation of ``base`` under ``ordering``.

    Vertices are relabeled so that id == rank; ``out_neighbors`` therefore
    holds relabeled ids sorted ascending, which is ascending rank.
    ``ordering.order[i]`` maps relabeled id ``i`` back to a base vertex.
    """

    base: Graph
    ordering: VertexOrdering
    out_offsets: np.ndarray
    out_neighbors: np.ndarray
    max_out_degree: int

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_offsets)

    def out(self, v: int) -> np.ndarray:
        return self.out_neighbors[self.out_offsets[v]:self.out_offsets[v + 1]]

    def arcs(self) -> np.ndarray:
        src = np.repeat(np.arange(self.n, dtype=VERTEX_DTYPE), self.out_degrees)
        return np.stack([src, self.out_neighbors], axis=1)

    def to_labels(self, ids) -> list[int]:
        """Map relabeled ids to original input labels."""
        return self.base.labels[self.ordering.order[np.asarray(ids)]].tolist()


def orient(g: Graph, ordering: VertexOrdering) -> Dag:
    if len(ordering) != g.n:
        raise ValueError(f"ordering covers {len(ordering)} vertices, graph has {g.n}")
    e = g.edges()
    ru = ordering.rank[e[:, 0]]
    rv = ordering.rank[e[:, 1]]
    src = np.minimum(ru, rv)
    dst = np.maximum(ru, rv)
    idx = np.lexsort((dst, src))
    src, dst = src[idx], dst[idx]
    counts = np.bincount(src, minlength=g.n)
    out_offsets = np.zeros(g.n + 1, dtype=OFFSET_DTYPE)
    np.cumsum(counts, out=out_offsets[1:])
    max_out = int(counts.max()) if g.n else 0
    return Dag(g, ordering, out_offsets, dst.astype(VERTEX_DTYPE), max_out)


# -- statistics ------------------------------------------------------------------

@dataclass
class GraphStats:
    n: int
    m: int
    degeneracy: int
    h_index: int
    max_out_degree: int | None
    degree_histogram: np.ndarray = field(repr=False)


def h_index(degrees: np.ndarray) -> int:
    """Largest h such that at least h vertices have degree >= h."""
    if len(degrees) == 0:
        return 0
    hist = np.bincount(np.minimum(degrees, len(degrees)), minlength=len(degrees) + 1)
    at_least = np.cumsum(hist[::-1])[::-1]
    hs = np.nonzero(at_least >= np.arange(len(at_least)))[0]
    return int(hs.max())


def core_numbers(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Min-degree peeling with bucket queues in O(n + m).

    Repeatedly removes a vertex of minimum residual degree (smallest id first
    within a bucket). Returns ``(peel_order, core)``; ``core`` is the core
    number of every vertex.
    """
    n = g.n
    if n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    offs = g.offsets.tolist()
    nb = g.neighbors.tolist()
    res = g.degrees.tolist()
    maxd = max(res)
    # doubly linked bucket lists, filled in descending id so heads are smallest ids
    head = [-1] * (maxd + 1)
    nxt = [-1] * n
    prv = [-1] * n
    for v in range(n - 1, -1, -1):
        d = res[v]
        h = head[d]
        nxt[v] = h
        if h >= 0:
            prv[h] = v
        head[d] = v
    removed = [False] * n
    order = []
    core = [0] * n
    level = 0
    cur = 0
    for _ in range(n):
        while head[cur] < 0:
            cur += 1
        v = head[cur]
        h = nxt[v]
        head[cur] = h
        if h >= 0:
            prv[h] = -1
        removed[v] = True
        order.append(v)
        level = max(level, cur)
        core[v] = level
        for j in range(offs[v], offs[v + 1]):
            w = nb[j]
            if removed[w]:
                continue
            d = res[w]
            # unlink w from bucket d, push onto bucket d-1
            p, q = prv[w], nxt[w]
            if p >= 0:
                nxt[p] = q
            else:
                head[d] = q
            if q >= 0:
                prv[q] = p
            d -= 1
            res[w] = d
            h = head[d]
            prv[w] = -1
            nxt[w] = h
            if h >= 0:
                prv[h] = w
            head[d] = w
            if d < cur:
                cur = d
    return np.array(order, dtype=np.int64), np.array(core, dtype=np.int64)


def stats(g: Graph, dag: Dag | None = None) -> GraphStats:
    _, core = core_numbers(g)
    deg = g.degrees
    return GraphStats(
        n=g.n,
        m=g.m,
        degeneracy=int(core.max()) if g.n else 0,
        h_index=h_index(deg),
        max_out_degree=None if dag is None else dag.max_out_degree,
        degree_histogram=np.bincount(deg) if g.n else np.zeros(0, dtype=np.int64),
    )
