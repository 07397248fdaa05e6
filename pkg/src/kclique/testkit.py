"""Shared test infrastructure: worked-example fixtures, random suites, reference oracles.

Fixtures are stored as edge lists under ``fixtures/``. Each carries the
constraints it must satisfy; :func:`verify_fixture` re-checks all of them
with the brute-force oracle and direct inspection, so a damaged fixture is
caught before any test relies on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from .graph import Graph, from_edges, load_edge_list, orient
from .listing.brute import brute_force
from .ordering import color_ordering, degree_ordering, greedy_coloring, inverse_degree_ordering
from .preprocess import core_cascade, pre_core, pre_list

Check = Callable[[Graph], bool]


@dataclass
class ReconstructedFixture:
    name: str
    graph: Graph
    constraints: list[tuple[str, Check]] = field(default_factory=list)
    # k -> (count, tag: "stated" if given in the worked example, "derived" otherwise)
    expected: dict[int, tuple[int, str]] = field(default_factory=dict)
    reconstructed: bool = True

    def label_ids(self, *labels: int) -> list[int]:
        where = {int(x): i for i, x in enumerate(self.graph.labels)}
        return [where[x] for x in labels]


@dataclass
class FixtureReport:
    name: str
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def verify_fixture(f: ReconstructedFixture) -> FixtureReport:
    failures = []
    for desc, check in f.constraints:
        try:
            good = bool(check(f.graph))
        except Exception as e:  # a crashing check is a failed constraint
            good = False
            desc = f"{desc} ({type(e).__name__}: {e})"
        if not good:
            failures.append(desc)
    for k, (want, tag) in sorted(f.expected.items()):
        got, _ = brute_force(f.graph, k)
        if got != want:
            failures.append(f"{k}-clique count is {got}, expected {want} [{tag}]")
    return FixtureReport(f.name, failures)


# -- helpers over input labels ------------------------------------------------------

def _labels(g: Graph, ids) -> set[int]:
    return {int(g.labels[i]) for i in ids}


def _degree_of(g: Graph, label: int) -> int:
    return int(g.degrees[int(np.flatnonzero(g.labels == label)[0])])


def _precore_removed(g: Graph, k: int) -> set[int]:
    return _labels(g, np.flatnonzero(core_cascade(g, k - 1)))


def _prelist_removed(g: Graph, k: int) -> set[int]:
    reduced, _ = pre_core(g, k)
    after, _ = pre_list(reduced, k)
    return set(reduced.labels.tolist()) - set(after.labels.tolist())


def _v7_after_v8(g: Graph) -> bool:
    keep = g.labels != 8
    return _degree_of(g, 7) == 3 and _degree_of(g.induced(keep), 7) == 2


def _running_degree_dag(g: Graph) -> bool:
    """After both reductions at k=4, only v2 and v5 keep d+ >= 3 and
    N+(v3) ∩ N+(v2) = {v1, v4} under the degree ordering."""
    reduced, _ = pre_list(pre_core(g, 4)[0], 4)
    dag = orient(reduced, degree_ordering(reduced))
    lab = dag.base.labels[dag.ordering.order]
    rich = {int(lab[v]) for v in np.flatnonzero(dag.out_degrees >= 3)}
    rank_of = {int(lab[v]): v for v in range(dag.n)}
    common = set(dag.out(rank_of[3]).tolist()) & set(dag.out(rank_of[2]).tolist())
    return rich == {2, 5} and {int(lab[v]) for v in common} == {1, 4}


def _coloring_visit(g: Graph) -> list[int]:
    return g.labels[inverse_degree_ordering(g).order].tolist()


def _coloring_colors(g: Graph) -> dict[int, int]:
    c = greedy_coloring(g).color
    return {int(g.labels[i]): int(c[i]) for i in range(g.n)}


def _coloring_v4_out(g: Graph) -> set[int]:
    ordering, _ = color_ordering(g)
    dag = orient(g, ordering)
    v4 = int(ordering.rank[int(np.flatnonzero(g.labels == 4)[0])])
    return {int(g.labels[ordering.order[w]]) for w in dag.out(v4)}


# -- fixtures -----------------------------------------------------------------------

def fixture_text(name: str) -> bytes:
    return resources.files("kclique").joinpath("fixtures", f"{name}.txt").read_bytes()


def running(graph: Graph | None = None) -> ReconstructedFixture:
    """Twelve-vertex running example; the exact edge set is reconstructed from
    the worked examples (only counts and a few degrees are stated outright)."""
    g = graph if graph is not None else load_edge_list(fixture_text("running"))
    return ReconstructedFixture(
        "running", g,
        constraints=[
            ("twelve vertices", lambda g: g.n == 12),
            ("d(v8) <= 2", lambda g: _degree_of(g, 8) <= 2),
            ("removing v8 drops d(v7) from 3 to 2", _v7_after_v8),
            ("pre_core at k=4 removes exactly {v7, v8}", lambda g: _precore_removed(g, 4) == {7, 8}),
            ("pre_list at k=4 removes exactly the K4 {v9..v12}",
             lambda g: _prelist_removed(g, 4) == {9, 10, 11, 12}),
            ("the 4-cliques are {1,2,3,4}, {1,2,4,6}, {9,10,11,12}",
             lambda g: sorted(tuple(sorted(c)) for c in brute_force(g, 4, emit=True)[1])
             == [(1, 2, 3, 4), (1, 2, 4, 6), (9, 10, 11, 12)]),
            ("degree DAG: only v2, v5 have d+ >= 3; N+(v3) ∩ N+(v2) = {v1, v4}", _running_degree_dag),
        ],
        expected={4: (3, "stated"), 3: (13, "derived"), 5: (0, "derived")},
    )


def coloring(graph: Graph | None = None) -> ReconstructedFixture:
    """Six-vertex coloring example (the dense block of the running example)."""
    g = graph if graph is not None else load_edge_list(fixture_text("coloring"))
    return ReconstructedFixture(
        "coloring", g,
        constraints=[
            ("inverse degree visit order is v1, v2, v3, v4, v6, v5",
             lambda g: _coloring_visit(g) == [1, 2, 3, 4, 6, 5]),
            ("greedy colors v1=1 v2=2 v3=3 v4=4 v6=3 v5=2",
             lambda g: _coloring_colors(g) == {1: 1, 2: 2, 3: 3, 4: 4, 5: 2, 6: 3}),
            ("color DAG: N+(v4) = {v1, v2, v3, v6}", lambda g: _coloring_v4_out(g) == {1, 2, 3, 6}),
        ],
        expected={4: (2, "derived")},
    )


FIXTURES = {"running": running, "coloring": coloring}


def load_fixture(name: str) -> ReconstructedFixture:
    f = FIXTURES[name]()
    report = verify_fixture(f)
    if not report.ok:
        raise AssertionError(f"fixture {name} violates: {'; '.join(report.failures)}")
    return f


def drop_edge(g: Graph, u_label: int, v_label: int) -> Graph:
    """Copy of ``g`` (same labels) without the edge between two labels."""
    where = {int(x): i for i, x in enumerate(g.labels)}
    a, b = sorted((where[u_label], where[v_label]))
    e = g.edges()
    e = e[~((e[:, 0] == a) & (e[:, 1] == b))]
    return from_edges(g.n, e, labels=g.labels)


# -- random suites --------------------------------------------------------------------

SUITE_PS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return from_edges(n, np.argwhere(upper))


def random_suite(count: int, seed: int = 0, n_max: int = 25, ps=SUITE_PS, n_min: int = 1) -> list[tuple[str, Graph]]:
    """``count`` seeded G(n, p) graphs, n uniform in [n_min, n_max], p cycling through ``ps``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        p = ps[i % len(ps)]
        out.append((f"gnp-{i}-n{n}-p{p}", random_graph(n, p, rng)))
    return out


# -- reference oracles ------------------------------------------------------------------

def naive_degeneracy(g: Graph) -> int:
    """Max over the peel of the minimum remaining degree; quadratic on purpose."""
    alive = set(range(g.n))
    adj = [set(g.adj(v).tolist()) for v in range(g.n)]
    best = 0
    while alive:
        v = min(alive, key=lambda x: (len(adj[x] & alive), x))
        best = max(best, len(adj[v] & alive))
        alive.remove(v)
    return best


def naive_core_survivors(g: Graph, min_degree: int) -> set[int]:
    """Fixed point of 'drop every vertex of degree < min_degree', one sweep at a time."""
    alive = set(range(g.n))
    adj = [set(g.adj(v).tolist()) for v in range(g.n)]
    while True:
        drop = {v for v in alive if len(adj[v] & alive) < min_degree}
        if not drop:
            return _labels(g, alive)
        alive -= drop


def is_clique(g: Graph, labels) -> bool:
    where = {int(x): i for i, x in enumerate(g.labels)}
    ids = [where[x] for x in labels]
    return all(g.has_edge(a, b) for i, a in enumerate(ids) for b in ids[i + 1:])
