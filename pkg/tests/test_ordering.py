import numpy as np
from hypothesis import given

from conftest import cycle, graphs, path
from kclique.graph import complete_graph, from_edges, orient
from kclique.ordering import (by_name, color_ordering, degeneracy_ordering, degree_ordering, greedy_coloring,
                              inverse_degree_ordering)
from kclique.testkit import load_fixture, naive_degeneracy, random_graph

import pytest


def test_degree_path():
    r = degree_ordering(path(3)).rank  # a-b-c
    assert r[0] < r[2] < r[1]


def test_degree_k4_identity():
    assert degree_ordering(complete_graph(4)).order.tolist() == [0, 1, 2, 3]


def test_degree_dag_bounded_by_h_index(rng):
    from kclique.graph import stats

    g = random_graph(30, 0.3, rng)
    assert orient(g, degree_ordering(g)).max_out_degree <= stats(g).h_index


def test_degeneracy_k4_pendant():
    g = from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    ordering, beta = degeneracy_ordering(g)
    assert ordering.order[0] == 4 and beta == 3


def test_degeneracy_matches_naive(rng):
    g = random_graph(50, 0.15, rng)
    assert degeneracy_ordering(g)[1] == naive_degeneracy(g)


def test_coloring_k4():
    c = greedy_coloring(complete_graph(4))
    assert sorted(c.color.tolist()) == [1, 2, 3, 4] and c.num_colors == 4


def test_coloring_even_cycle():
    assert greedy_coloring(cycle(6)).num_colors == 2


def test_coloring_colors_and_out_neighbors():
    g = load_fixture("coloring").graph
    c = greedy_coloring(g).color
    lab = {int(x): i for i, x in enumerate(g.labels)}
    assert [c[lab[v]] for v in (1, 2, 3, 4)] == [1, 2, 3, 4]
    assert g.labels[inverse_degree_ordering(g).order].tolist() == [1, 2, 3, 4, 6, 5]
    ordering, _ = color_ordering(g)
    dag = orient(g, ordering)
    out4 = {int(g.labels[ordering.order[w]]) for w in dag.out(int(ordering.rank[lab[4]]))}
    assert out4 == {1, 2, 3, 6}


def test_color_ordering_k3():
    ordering, c = color_ordering(complete_graph(3))
    assert sorted(c.color.tolist()) == [1, 2, 3]
    assert c.color[ordering.order].tolist() == [3, 2, 1]
    assert orient(complete_graph(3), ordering).max_out_degree == 2


def test_color_arcs_descend(rng):
    g = random_graph(30, 0.3, rng)
    ordering, c = color_ordering(g)
    dag = orient(g, ordering)
    col = c.color[ordering.order]
    for u, v in dag.arcs().tolist():
        assert col[u] > col[v]


@given(graphs())
def test_coloring_proper_and_dense(g):
    c = greedy_coloring(g)
    assert c.is_proper(g)
    if g.n:
        assert set(c.color.tolist()) == set(range(1, c.num_colors + 1))
        assert c.num_colors <= g.degrees.max() + 1


@given(graphs(max_n=10))
def test_colors_bound_clique_size(g):
    from kclique.listing import brute_force

    c = greedy_coloring(g)
    omega = max((k for k in range(1, g.n + 1) if brute_force(g, k)[0]), default=0)
    assert c.num_colors >= omega


@given(graphs())
def test_orderings_are_bijections(g):
    for kind in ("degree", "degeneracy", "color"):
        assert by_name(g, kind).is_bijection()
    assert inverse_degree_ordering(g).is_bijection()


def test_unknown_ordering():
    with pytest.raises(ValueError, match="degree, degeneracy or color"):
        by_name(complete_graph(3), "random")


def test_visit_order_must_cover():
    with pytest.raises(ValueError):
        greedy_coloring(complete_graph(4), degree_ordering(complete_graph(3)))
