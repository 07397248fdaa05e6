"""Seeded synthetic graphs standing in for real datasets at desk scale."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, complete_graph, dump_edge_list, from_edges

MODELS = ("gnp", "complete", "planted-clique", "barabasi")


@dataclass
class GenSpec:
    model: str
    n: int
    p: float = 0.1
    clique: int = 0  # planted-clique size
    attach: int = 3  # barabasi: edges added per new vertex
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {', '.join(MODELS)}")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.model == "planted-clique" and not 0 <= self.clique <= self.n:
            raise ValueError("clique size must lie in 0..n")
        if self.model == "barabasi" and not 1 <= self.attach < max(self.n, 2):
            raise ValueError("attach must lie in 1..n-1")


@dataclass
class Generated:
    graph: Graph
    spec: GenSpec
    planted: list[int] = field(default_factory=list)

    def to_text(self) -> str:
        s = self.spec
        head = f"# model={s.model} n={s.n} p={s.p} seed={s.seed}"
        if s.model == "planted-clique":
            head += f"\n# planted: {' '.join(map(str, self.planted))}"
        if s.model == "barabasi":
            head += f" attach={s.attach}"
        return head + "\n" + dump_edge_list(self.graph)


def gnp_edges(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Erdos-Renyi edges drawn row by row, so memory stays O(m + n)."""
    parts = []
    for i in range(n - 1):
        j = np.flatnonzero(rng.random(n - i - 1) < p) + i + 1
        if len(j):
            parts.append(np.stack([np.full(len(j), i), j], axis=1))
    return np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    return from_edges(n, gnp_edges(n, p, np.random.default_rng(seed)))


def planted_clique(n: int, p: float, size: int, seed: int = 0) -> tuple[Graph, list[int]]:
    rng = np.random.default_rng(seed)
    e = gnp_edges(n, p, rng)
    members = np.sort(rng.choice(n, size=size, replace=False))
    iu, ju = np.triu_indices(size, 1)
    e = np.concatenate([e, np.stack([members[iu], members[ju]], axis=1)])
    return from_edges(n, e), members.tolist()


def barabasi(n: int, attach: int, seed: int = 0) -> Graph:
    """Preferential attachment: each new vertex links to ``attach`` distinct
    earlier vertices chosen proportionally to degree (seeded with a star)."""
    rng = np.random.default_rng(seed)
    edges = [(0, v) for v in range(1, attach + 1) if v < n]
    pool = [x for e in edges for x in e]
    for v in range(attach + 1, n):
        targets = set()
        while len(targets) < attach:
            targets.add(pool[int(rng.integers(len(pool)))])
        for t in sorted(targets):
            edges.append((t, v))
            pool.extend((t, v))
    return from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2))


def generate(spec: GenSpec) -> Generated:
    if spec.model == "gnp":
        return Generated(gnp(spec.n, spec.p, spec.seed), spec)
    if spec.model == "complete":
        return Generated(complete_graph(spec.n), spec)
    if spec.model == "planted-clique":
        g, members = planted_clique(spec.n, spec.p, spec.clique, spec.seed)
        return Generated(g, spec, members)
    return Generated(barabasi(spec.n, spec.attach, spec.seed), spec)
