import math

import pytest

from oracles import star_indep_prob_exact
from berge_ramsey.berge import ForbiddenFamily, Mode, is_free
from berge_ramsey.construct import (
    StarSystemSpec,
    build_theorem2,
    build_theorem3,
    default_m,
    indep_prob_bound_jn,
    indep_prob_bound_star,
    jn_density,
    jn_supplier,
    replay,
    star_system,
)
from berge_ramsey.girth import GirthError, deg_pipeline, incidence_gq, incidence_pp, random_girth_bipartite
from berge_ramsey.hyperstructs import Bipartition, Graph
from berge_ramsey.indep import exact_indep_prob


def test_star_system_examples():
    H = star_system(StarSystemSpec(3, 6, 2))
    assert H.edges == ((0, 1, 2), (3, 4, 5))
    H = star_system(StarSystemSpec(3, 4, 1))
    assert H.edges == ((0, 1, 2), (0, 1, 3), (0, 2, 3))
    spec = StarSystemSpec(3, 3, 2)
    assert spec.degenerate and len(star_system(spec)) == 0


@pytest.mark.parametrize("d,m,r", [(12, 2, 3), (12, 3, 3), (20, 4, 3), (10, 3, 4), (7, 7, 3)])
def test_star_classes(d, m, r):
    spec = StarSystemSpec(r, d, m)
    sizes = [len(c) for c in spec.classes()]
    assert sum(sizes) == d and set(sizes) <= {d // m, -(-d // m)}
    H = star_system(spec)
    expected = sum(math.comb(c - 1, r - 1) for c in sizes if c >= r)
    assert len(H) == expected


def test_star_spec_validation():
    with pytest.raises(ValueError):
        StarSystemSpec(3, 2, 3)


def test_prob_bound_examples():
    assert indep_prob_bound_star(12, 3, 3, 9) == 1.0
    assert indep_prob_bound_star(12, 2, 3, 8) == pytest.approx(math.exp(-1 / 6))
    assert indep_prob_bound_star(12, 2, 3, 3) == 1.0
    assert indep_prob_bound_jn(10**4, 6) == 1.0
    assert indep_prob_bound_jn(100, 5) == 639 / 640
    assert indep_prob_bound_jn(10**4, 40) == pytest.approx(math.exp(-63784 / (80 * 10**6)))


@pytest.mark.parametrize("d,m,r", [(8, 2, 3), (10, 3, 3), (9, 1, 4)])
def test_star_dp_oracle_matches_enumeration(d, m, r):
    spec = StarSystemSpec(r, d, m)
    H = star_system(spec)
    for s in range(d + 1):
        assert star_indep_prob_exact(spec.classes(), d, r, s) == pytest.approx(exact_indep_prob(H, s))


@pytest.mark.parametrize("d,m,r", [(12, 2, 3), (12, 3, 3), (20, 4, 3), (16, 2, 4)])
def test_prob_bound_holds_exactly(d, m, r):
    spec = StarSystemSpec(r, d, m)
    for s in range(d + 1):
        assert star_indep_prob_exact(spec.classes(), d, r, s) <= indep_prob_bound_star(d, m, r, s) + 1e-12


def test_theorem2_on_tutte_coxeter_is_free():
    G = incidence_gq(2)
    sub, bip, rep = deg_pipeline(G, 3, 0)
    tr = build_theorem2(sub, bip, 3, 3, 1, seed=0, c=rep.c, n_host=G.n)
    H = tr.hypergraph
    assert H.n == 15
    assert is_free(H, ForbiddenFamily(3, (3,), Mode.NONTRIVIAL))[0]
    for x, placed in tr.placements.items():
        assert sorted(placed) == sorted(sub.adj[x])


def test_every_edge_inside_a_neighbourhood():
    G = incidence_pp(3)
    sub, bip, rep = deg_pipeline(G, 2, 0)
    tr = build_theorem2(sub, bip, 2, 3, 2, seed=5)
    Y = sorted(bip.right)
    nbhd = [{Y.index(y) for y in sub.adj[x]} for x in sorted(bip.left)]
    for e in tr.hypergraph.edges:
        assert any(set(e) <= N for N in nbhd)


def test_single_star_host():
    G = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    tr = build_theorem2(G, Bipartition([0], range(1, 6)), 5, 3, 1, seed=2)
    H = tr.hypergraph
    assert H.n == 5 and len(H) == math.comb(4, 2)
    centre = [v for v in range(5) if H.degree(v) == len(H)]
    assert len(centre) == 1


def test_theorem2_deterministic_and_replayable():
    G = incidence_gq(2)
    sub, bip, rep = deg_pipeline(G, 3, 0)
    a = build_theorem2(sub, bip, 3, 3, 2, seed=11)
    b = build_theorem2(sub, bip, 3, 3, 2, seed=11)
    assert a.hypergraph.edges == b.hypergraph.edges
    assert replay(a).edges == a.hypergraph.edges
    assert a.to_dict()["hypergraph"]["edges"] == [list(e) for e in a.hypergraph.edges]


def test_theorem2_clamps_m():
    G = incidence_gq(2)
    sub, bip, _ = deg_pipeline(G, 3, 0)
    tr = build_theorem2(sub, bip, 3, 3, 10, seed=0)
    assert tr.flags and "clamped" in tr.flags[0]


def test_theorem2_default_m():
    G = incidence_gq(2)
    sub, bip, rep = deg_pipeline(G, 3, 0)
    tr = build_theorem2(sub, bip, 3, c=rep.c, n_host=G.n)
    assert tr.params["m"] == default_m(G.n, rep.c, 3)
    assert tr.params["m_default"]


def test_theorem2_girth_guard():
    G = incidence_pp(2)
    with pytest.raises(GirthError):
        build_theorem2(G, Bipartition(range(7), range(7, 14)), 3)


@pytest.mark.parametrize("n", [7, 12, 20, 30])
def test_jn_supplier_properties(n):
    H = jn_supplier(n, seed=n)
    assert H.max_degree() <= math.ceil(math.sqrt(n))
    assert all(c <= 1 for c in H._pair_codegrees.values())
    assert is_free(H, ForbiddenFamily(3, (2, 3, 4), Mode.TRIVIAL_ALLOWED))[0]
    d = jn_density(H)
    assert d["edges"] == len(H) and d["target"] == pytest.approx(n**1.5 / 10)


def test_jn_supplier_deterministic():
    assert jn_supplier(15, 3).edges == jn_supplier(15, 3).edges


def test_theorem3_is_b4_free():
    G, bip = random_girth_bipartite(8, 16, 10, seed=1, max_degree=6)
    tr = build_theorem3(G, bip, seed=4)
    H = tr.hypergraph
    assert len(H) > 0
    assert is_free(H, ForbiddenFamily(3, (2, 3, 4), Mode.TRIVIAL_ALLOWED))[0]
    assert replay(tr).edges == H.edges


def test_theorem3_on_forest_is_disjoint_union():
    G = Graph.from_edges(14, [(0, i) for i in range(2, 8)] + [(1, i) for i in range(8, 14)])
    tr = build_theorem3(G, Bipartition([0, 1], range(2, 14)), seed=0)
    H = tr.hypergraph
    for e in H.edges:
        assert max(e) < 6 or min(e) >= 6


def test_theorem3_girth_guard():
    with pytest.raises(GirthError):
        build_theorem3(incidence_gq(2), Bipartition(range(15), range(15, 30)))
