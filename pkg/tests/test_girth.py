import math

import networkx as nx
import numpy as np
import pytest

from oracles import girth_bruteforce, graph_corpus
from berge_ramsey.girth import (
    GirthError,
    deg_pipeline,
    girth,
    incidence_gq,
    incidence_pp,
    max_cut_bipartite,
    peel_min_degree,
    random_girth_bipartite,
    two_coloring,
)
from berge_ramsey.hyperstructs import Graph

CORPUS = graph_corpus(60, seed=7)


def _nx(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    return g


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_girth_matches_bruteforce(idx):
    G = CORPUS[idx]
    rep = girth(G)
    assert rep.girth == girth_bruteforce(G)
    if rep.shortest_cycle:
        cyc = rep.shortest_cycle
        assert len(cyc) == rep.girth
        assert all(G.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


@pytest.mark.parametrize("seed", range(10))
def test_girth_matches_networkx_on_larger_graphs(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(15, 40))
    G = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 3 / n])
    assert girth(G).girth == nx.girth(_nx(G))


@pytest.mark.parametrize(
    "q,gen,n,m,g",
    [
        (2, incidence_pp, 14, 21, 6),
        (3, incidence_pp, 26, 52, 6),
        (5, incidence_pp, 62, 186, 6),
        (2, incidence_gq, 30, 45, 8),
        (3, incidence_gq, 80, 160, 8),
    ],
)
def test_generators(q, gen, n, m, g):
    G = gen(q)
    assert (G.n, G.m) == (n, m)
    assert set(G.degrees()) == {q + 1}
    assert girth(G).girth == g
    assert two_coloring(G) is not None


def test_generators_need_a_prime():
    with pytest.raises(ValueError):
        incidence_pp(4)
    with pytest.raises(ValueError):
        incidence_gq(6)


def test_forest_has_infinite_girth():
    G = Graph.from_edges(5, [(0, 1), (0, 2), (2, 3)])
    assert girth(G).girth == math.inf


@pytest.mark.parametrize("seed", range(5))
def test_max_cut_is_bipartite_and_at_least_half(seed):
    rng = np.random.default_rng(seed)
    n = 20
    G = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
    bip, cut = max_cut_bipartite(G, seed)
    bip.check(cut)
    assert 2 * cut.m >= G.m
    assert set(cut.edges) <= set(G.edges)


def test_max_cut_keeps_bipartite_graph_whole():
    G = incidence_gq(2)
    _, cut = max_cut_bipartite(G, 0)
    assert cut.m == G.m


def test_peel_min_degree():
    # triangle with a pendant path: the 2-core is the triangle
    G = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    core = peel_min_degree(G, 1)  # keeps degree > 1
    assert sorted(core.labels) == [0, 1, 2]
    assert min(core.degrees()) >= 2


@pytest.mark.parametrize("q,k", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_deg_pipeline(q, k):
    G = incidence_pp(q) if k == 2 else incidence_gq(q)
    sub, bip, rep = deg_pipeline(G, k, seed=1)
    bip.check(sub)
    assert len(bip.right) >= len(bip.left)
    assert rep.min_degree >= rep.threshold
    assert rep.checks["cut_half"]
    assert rep.c == pytest.approx(G.m / (2 * G.n ** (1 + 1 / k)))
    assert (k < 3) == bool([w for w in rep.warnings if "k >= 3" in w])


def test_deg_pipeline_rejects_low_girth():
    with pytest.raises(GirthError):
        deg_pipeline(incidence_pp(2), 3)


@pytest.mark.parametrize("min_girth", [6, 10, 14])
def test_random_girth_bipartite(min_girth):
    G, bip = random_girth_bipartite(15, 15, min_girth, seed=3)
    bip.check(G)
    g = girth(G).girth
    assert g >= min_girth
    assert g == nx.girth(_nx(G))
