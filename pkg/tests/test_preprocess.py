from itertools import combinations
from math import comb

import numpy as np
from hypothesis import given, strategies as st

from conftest import cycle, graphs
from kclique.graph import complete_graph, from_edges
from kclique.listing import brute_force
from kclique.preprocess import ReductionReport, components, pre_core, pre_list
from kclique.sink import U64_MAX, CliqueSink
from kclique.testkit import load_fixture, naive_core_survivors, random_graph


def disjoint(*gs):
    edges, off = [], 0
    for g in gs:
        edges.extend((g.edges() + off).tolist())
        off += g.n
    return from_edges(off, edges)


def test_running_pre_core():
    g = load_fixture("running").graph
    reduced, report = pre_core(g, 4)
    assert reduced.n == 10 and report.removed_vertices == 2
    assert set(g.labels.tolist()) - set(reduced.labels.tolist()) == {7, 8}


def test_k5_untouched():
    g = complete_graph(5)
    reduced, report = pre_core(g, 4)
    assert reduced is g and report.removed_vertices == 0


def test_pre_core_matches_fixed_point(rng):
    g = random_graph(40, 0.2, rng)
    reduced, _ = pre_core(g, 5)
    assert set(reduced.labels.tolist()) == naive_core_survivors(g, 4)


def test_running_pre_list():
    g = load_fixture("running").graph
    sink = CliqueSink()
    reduced, report = pre_list(pre_core(g, 4)[0], 4, sink)
    assert sorted(reduced.labels.tolist()) == [1, 2, 3, 4, 5, 6]
    assert report.removed_components == 1 and report.precounted_cliques == 1 and sink.count == 1


def test_k6_plus_c5():
    g = disjoint(complete_graph(6), cycle(5))
    g, _ = pre_core(g, 3)
    reduced, report = pre_list(g, 3, CliqueSink())
    assert report.precounted_cliques == 20
    assert reduced.n == 5 and reduced.m == 5


def test_planted_disjoint_k7(rng):
    base = random_graph(40, 0.1, rng)
    g = disjoint(base, complete_graph(7))
    sink = CliqueSink()
    reduced, report = pre_list(pre_core(g, 4)[0], 4, sink)
    assert report.precounted_cliques >= 35
    assert not set(range(40, 47)) & set(reduced.labels.tolist())
    assert report.precounted_cliques + brute_force(reduced, 4)[0] == brute_force(g, 4)[0]


def test_emit_mode_lists_combinations():
    sink = CliqueSink(emit=True)
    pre_list(complete_graph(5), 3, sink)
    assert sink.sorted_cliques() == list(combinations(range(5), 3))


def test_small_complete_component_kept():
    # K3 cannot hold a 4-clique, so it is not reported even though it is complete
    reduced, report = pre_list(complete_graph(3), 4)
    assert reduced.n == 3 and report.removed_components == 0


def test_saturation_flag():
    r = ReductionReport()
    r.add_clique_count(U64_MAX)
    r.add_clique_count(comb(100, 50))
    assert r.saturated and r.precounted_cliques == U64_MAX
    sink = CliqueSink()
    sink.add(U64_MAX)
    sink.add(1)
    assert sink.saturated and sink.count == U64_MAX


@given(graphs(), st.integers(2, 6))
def test_count_conservation(g, k):
    sink = CliqueSink()
    g1, r1 = pre_core(g, k)
    g2, r2 = pre_list(g1, k, sink)
    assert r2.precounted_cliques + brute_force(g2, k)[0] == brute_force(g, k)[0]


@given(graphs(), st.integers(2, 6))
def test_pre_core_properties(g, k):
    reduced, _ = pre_core(g, k)
    assert reduced.n == 0 or reduced.degrees.min() >= k - 1
    assert pre_core(reduced, k)[0] == reduced
    kept = set(reduced.labels.tolist())
    for c in brute_force(g, k, emit=True)[1]:
        assert set(c) <= kept
    # maximality: each removed vertex has < k-1 neighbors among survivors plus itself
    idx = {int(x): i for i, x in enumerate(g.labels)}
    for lab in set(g.labels.tolist()) - kept:
        nbrs = {int(g.labels[w]) for w in g.adj(idx[lab])}
        assert len(nbrs & kept) < k - 1


@given(graphs(), st.integers(2, 6))
def test_pre_list_idempotent(g, k):
    once, _ = pre_list(pre_core(g, k)[0], k)
    twice, r = pre_list(once, k)
    assert twice == once and r.removed_components == 0


@given(graphs())
def test_components_partition(g):
    comps = components(g)
    allv = np.concatenate(comps) if comps else np.zeros(0, dtype=int)
    assert sorted(allv.tolist()) == list(range(g.n))
