import pytest

from kclique.generators import GenSpec, generate, gnp
from kclique.graph import complete_graph, from_edges
from kclique.listing import brute_force
from kclique.ordering import greedy_coloring
from kclique.testkit import (FIXTURES, drop_edge, running, coloring, is_clique, load_fixture, naive_core_survivors,
                             naive_degeneracy, random_suite, verify_fixture)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_self_verify(name):
    assert verify_fixture(FIXTURES[name]()).ok


def test_running_oracle_count():
    assert brute_force(load_fixture("running").graph, 4)[0] == 3


def test_coloring_v4_color():
    f = load_fixture("coloring")
    (v4,) = f.label_ids(4)
    assert greedy_coloring(f.graph).color[v4] == 4


@pytest.mark.parametrize("edge", [(1, 3), (2, 4), (9, 10), (7, 8)])
def test_mutated_running_fails(edge):
    report = verify_fixture(running(drop_edge(running().graph, *edge)))
    assert not report.ok and report.failures


def test_mutated_coloring_fails():
    assert not verify_fixture(coloring(drop_edge(coloring().graph, 3, 4))).ok


def test_load_fixture_raises_on_damage(monkeypatch):
    import kclique.testkit as tk

    monkeypatch.setitem(tk.FIXTURES, "running", lambda: running(drop_edge(running().graph, 1, 2)))
    with pytest.raises(AssertionError, match="running violates"):
        load_fixture("running")


def test_expected_count_tags():
    assert running().expected[4] == (3, "stated")
    assert all(tag in ("stated", "derived") for f in FIXTURES.values() for _, tag in f().expected.values())


def test_random_suite_is_seeded():
    a = random_suite(10, seed=4)
    b = random_suite(10, seed=4)
    assert [n for n, _ in a] == [n for n, _ in b]
    assert all(x == y for (_, x), (_, y) in zip(a, b))
    assert all(g.n <= 25 for _, g in random_suite(50))


def test_naive_oracles_on_small_cases():
    assert naive_degeneracy(complete_graph(5)) == 4
    star = from_edges(6, [(0, i) for i in range(1, 6)])
    assert naive_degeneracy(star) == 1
    assert naive_core_survivors(star, 2) == set()
    assert naive_core_survivors(complete_graph(4), 3) == {0, 1, 2, 3}


def test_is_clique():
    g = running().graph
    assert is_clique(g, (1, 2, 3, 4)) and not is_clique(g, (1, 2, 3, 5))


def test_generators_seeded():
    assert gnp(50, 0.2, seed=1) == gnp(50, 0.2, seed=1)
    out = generate(GenSpec("planted-clique", 40, p=0.1, clique=6, seed=5))
    assert len(out.planted) == 6 and is_clique(out.graph, out.planted)
    assert "# planted:" in out.to_text()
    assert generate(GenSpec("complete", 7)).graph.m == 21
