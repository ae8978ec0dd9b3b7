import random

import pytest

from lrank.colorers.ttree import BandLedger, initial_a, rank_simple_ttree, top_level_k
from lrank.decomposition import RootedTreeDecomposition, make_edge_maximal, random_simple_ttree
from lrank.errors import InvalidDecomposition
from lrank.graph import Graph, complete_graph, path_graph
from lrank.verify import is_ranking, verify_ranking_oracle


def path_decomp(n):
    return RootedTreeDecomposition(tuple(range(-1, n - 2)), tuple(frozenset({i, i + 1}) for i in range(n - 1)))


def test_t1_path_three_colours():
    r = rank_simple_ttree(path_graph(100), path_decomp(100), 2, t=1)
    assert r.max_color == 3 and is_ranking(path_graph(100), r)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_single_bag_clique(t):
    g = complete_graph(t + 1)
    d = RootedTreeDecomposition((-1,), (frozenset(range(t + 1)),))
    r = rank_simple_ttree(g, d, 2, t=t)
    assert sorted(r.colors) == list(range(1, t + 2))


def test_small_instances_against_oracle():
    rng = random.Random(8)
    for seed in range(150):
        t = rng.randint(1, 4)
        ell = rng.randint(1, 4)
        h, d = random_simple_ttree(rng.randint(t + 1, 10), t, seed)
        r = rank_simple_ttree(h, d, ell, verify=False)
        assert verify_ranking_oracle(h, r, ell) is None


def test_medium_instances_verify():
    rng = random.Random(9)
    for seed in range(60):
        t = rng.randint(1, 4)
        ell = rng.randint(1, 5)
        h, d = random_simple_ttree(rng.randint(t + 1, 300), t, seed)
        r = rank_simple_ttree(h, d, ell)
        assert is_ranking(h, r)
        assert sorted(set(r.colors)) == list(range(1, r.max_color + 1))


def test_subgraph_of_simple_ttree():
    rng = random.Random(10)
    for seed in range(20):
        h, d = random_simple_ttree(80, 3, seed)
        keep = tuple(e for e in h.edges if rng.random() < 0.6)
        g = Graph(h.n, keep)
        r = rank_simple_ttree(g, d, 2)
        assert is_ranking(g, r)


def test_t3_n10000():
    h, d = random_simple_ttree(10 ** 4, 3, 0)
    r = rank_simple_ttree(h, d, 2, t=3)
    assert is_ranking(h, r)
    assert r.max_color <= r.meta["a"] * r.meta["solve_k"]


def test_meta_and_ledger():
    h, d = random_simple_ttree(500, 2, 3)
    r = rank_simple_ttree(h, d, 2)
    m = r.meta
    assert m["algorithm"] == "simple-ttree" and m["t"] == 2 and m["n"] == 500
    assert m["a"] >= initial_a(2, 2) and m["restarts"] >= 0
    assert m["k"] == pytest.approx(top_level_k(2, 500))
    led = m["ledger"]
    assert isinstance(led, BandLedger)
    assert led.technical_calls >= 1
    assert 0 <= led.interleavings() <= len(led.blocks)


def test_disconnected_input():
    h1, d1 = random_simple_ttree(30, 2, 1)
    n = h1.n
    edges = h1.edges + tuple((u + n, v + n) for u, v in h1.edges)
    bags = d1.bags + tuple(frozenset(v + n for v in b) for b in d1.bags)
    parent = d1.parent + tuple(p + len(d1.bags) if p >= 0 else 0 for p in d1.parent)
    d = RootedTreeDecomposition(parent, bags, 0)
    g = Graph(2 * n, edges)
    assert is_ranking(g, rank_simple_ttree(g, d, 2))


def test_isolated_vertex_in_bag():
    g = Graph(3, ((0, 1),))
    d = RootedTreeDecomposition((-1, 0), (frozenset({0, 1}), frozenset({1, 2})))
    r = rank_simple_ttree(g, d, 2)
    assert is_ranking(g, r)


def test_invalid_decomposition_rejected():
    with pytest.raises(InvalidDecomposition):
        rank_simple_ttree(path_graph(3), path_decomp(2), 2)
