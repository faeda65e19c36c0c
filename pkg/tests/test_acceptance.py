"""Acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line (collected in ``RESULTS`` and
printed in the terminal summary) before asserting.
"""

import itertools
import math
import time

import numpy as np
import pytest

from oracles import count_cycles_bruteforce, girth_bruteforce, graph_corpus, has_berge_cycle, star_indep_prob_exact
from berge_ramsey.berge import ForbiddenFamily, Mode, find_berge_cycle, is_free, tight_path_to_witness, verify_witness
from berge_ramsey.census import bigcpn_check, census, count_cycles
from berge_ramsey.certificate import certify, verify
from berge_ramsey.construct import (
    StarSystemSpec,
    build_theorem2,
    indep_prob_bound_star,
    jn_density,
    jn_supplier,
    star_system,
)
from berge_ramsey.girth import deg_pipeline, girth, incidence_gq, incidence_pp, random_girth_bipartite
from berge_ramsey.hyperstructs import Graph, Hypergraph, affine_plane_3
from berge_ramsey.indep import alpha_bruteforce, alpha_exact, indep_prob_mc
from berge_ramsey.peel import (
    bounded_ratio_subgraph,
    heavy_subgraph,
    light_pair_peel,
    min_order,
    random_indep_set,
    theorem1_pipeline,
)

RESULTS: dict = {}


def record(num: int, ok: bool, detail: str):
    line = f"{num} {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[str(num)] = line
    print(line)
    assert ok, line


def random_3graphs(count, seed, max_n=7, max_m=6):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(3, max_n + 1))
        allt = list(itertools.combinations(range(n), 3))
        m = int(rng.integers(0, min(max_m, len(allt)) + 1))
        idx = rng.choice(len(allt), size=m, replace=False)
        out.append(Hypergraph.from_edges(3, n, [allt[int(i)] for i in idx]))
    return out


def theorem2_from(G, k, seed, m=1):
    sub, bip, rep = deg_pipeline(G, k, seed)
    return build_theorem2(sub, bip, k, 3, m, seed, rep.c, G.n).hypergraph


@pytest.fixture(scope="module")
def small_builds():
    """Criterion-6 builds: pp(2), pp(3) at k=2 and gq(2), gq(3) at k=3, 5 seeds each."""
    out = []
    for gen, k in ((incidence_pp, 2), (incidence_gq, 3)):
        for q in (2, 3):
            G = gen(q)
            for seed in range(5):
                out.append((f"{gen.__name__}({q}) k={k} seed={seed}", k, theorem2_from(G, k, seed)))
    return out


@pytest.fixture(scope="module")
def girth_builds():
    """Criterion-5 builds: 10 B4-free (girth >= 10 hosts) and 10 B6-free (girth >= 14 hosts)."""
    out = []
    for k, g, side in ((4, 10, 40), (6, 14, 60)):
        for seed in range(10):
            G, _ = random_girth_bipartite(side, side, g, seed)
            out.append((f"girth>={g} k={k} seed={seed}", k, theorem2_from(G, k, seed)))
    return out


CORPUS_3 = random_3graphs(200, seed=1)
GRAPHS = graph_corpus(100)


def test_1_detector_oracle_equivalence():
    t0 = time.perf_counter()
    checked = mismatches = 0
    for H in CORPUS_3:
        for k in (2, 3, 4):
            for mode in Mode:
                w = find_berge_cycle(H, k, mode)
                ok = (w is not None) == has_berge_cycle(H, k, mode is Mode.NONTRIVIAL)
                if w is not None:
                    ok = ok and verify_witness(H, w, mode)
                mismatches += not ok
                checked += 1
    dt = time.perf_counter() - t0
    record(1, mismatches == 0 and dt < 60, f"detector vs oracle: {checked - mismatches}/{checked} agree in {dt:.1f}s")


def test_2_star_probability_bound():
    violations = 0
    worst = -math.inf
    cases = 0
    for d, m, r in ((12, 2, 3), (12, 3, 3), (20, 4, 3)):
        spec = StarSystemSpec(r, d, m)
        H = star_system(spec)
        for s in range(d + 1):
            bound = indep_prob_bound_star(d, m, r, s)
            exact = star_indep_prob_exact(spec.classes(), d, r, s)
            est = indep_prob_mc(H, s, 10**5, seed=1000 * d + 10 * m + s)
            violations += exact > bound + 1e-12
            violations += est.estimate > bound + 3 * est.std_error
            worst = max(worst, exact - bound, est.estimate - bound - 3 * est.std_error)
            cases += 1
    record(2, violations == 0, f"{cases} (d,m,r,s) cases, exact and 1e5-trial MC, {violations} violations, max excess {worst:.4f}")


def test_3_alphabound_floor():
    A = affine_plane_3()
    sizes = np.array([len(random_indep_set(A, s)) for s in range(10**4)])
    mean = sizes.mean()
    sem = sizes.std(ddof=1) / math.sqrt(len(sizes))
    a_bb = alpha_exact(A).value
    a_bf = alpha_bruteforce(A)
    ok = mean >= 3 - 3 * sem and a_bb == a_bf == 4
    record(3, ok, f"AG(2,3) mean |I| = {mean:.4f} (floor 3, SEM {sem:.4f}); alpha B&B={a_bb} brute={a_bf}")


def test_4_bounded_ratio_contract():
    rng = np.random.default_rng(4)
    violations = 0
    runs = 0
    for _ in range(100):
        n = int(rng.integers(6, 40))
        allt = list(itertools.combinations(range(n), 3))
        m = int(rng.integers(0, min(4 * n, len(allt)) + 1))
        # skewed degrees: half the edges go through a few hubs
        hubs = rng.choice(n, size=max(1, n // 8), replace=False)
        edges = {allt[int(i)] for i in rng.choice(len(allt), size=m // 2, replace=False)}
        for _ in range(m - m // 2):
            h = int(rng.choice(hubs))
            rest = rng.choice([v for v in range(n) if v != h], size=2, replace=False)
            edges.add(tuple(sorted((h, int(rest[0]), int(rest[1])))))
        H = Hypergraph.from_edges(3, n, edges)
        for eps in (1 / 4, 1 / 8, 1 / 16):
            H0, _ = bounded_ratio_subgraph(H, eps)
            ok = H0.max_degree() <= H0.average_degree() / eps + 1e-9 and H0.n >= min_order(n, eps) - 1e-9
            violations += not ok
            runs += 1
    record(4, violations == 0, f"{runs} runs (100 graphs x 3 eps), {violations} violations")


def _tight_fixtures():
    """Dense tight blocks, alone and hidden among random linear noise, k = 4..8."""
    out = []
    rng = np.random.default_rng(55)
    for k in range(4, 9):
        out.append((k, Hypergraph.from_edges(3, k + 3, itertools.combinations(range(k + 3), 3))))
        n = k + 3 + 12
        perm = rng.permutation(n)
        block = [tuple(int(perm[v]) for v in e) for e in itertools.combinations(range(k + 3), 3)]
        noise = [tuple(int(perm[v]) for v in (k + 3 + 3 * i, k + 4 + 3 * i, k + 5 + 3 * i)) for i in range(4)]
        out.append((k, Hypergraph.from_edges(3, n, block + noise)))
    return out


def test_5_heavy_contract(girth_builds):
    bad = []
    for name, k, H in girth_builds:
        free = is_free(H, ForbiddenFamily(3, (k,), Mode.NONTRIVIAL))[0]
        res = heavy_subgraph(H, k)
        Hs = res.hypergraph
        ok = (
            free
            and len(H) > 0
            and len(Hs) * 3 * k * k > len(H)
            and res.conflict_max_degree <= 3 * k - 6
            and all(p is not None and Hs.codegree(*p) == 1 and set(p) <= set(e) for e, p in zip(Hs.edges, res.pairs))
        )
        if not ok:
            bad.append(name)
    fixtures = _tight_fixtures()
    paths_ok = 0
    for k, H in fixtures:
        tr = light_pair_peel(H, k)
        if tr.path is not None and verify_witness(H, tight_path_to_witness(tr.path, H, k), Mode.NONTRIVIAL):
            paths_ok += 1
    ok = not bad and paths_ok == len(fixtures) == 10
    record(5, ok, f"{len(girth_builds) - len(bad)}/{len(girth_builds)} builds meet the heavy contract; {paths_ok}/{len(fixtures)} tight-path fixtures give verified witnesses")


def test_6_theorem2_freeness(small_builds):
    t0 = time.perf_counter()
    free = 0
    trivial_free = 0
    for name, k, H in small_builds:
        free += is_free(H, ForbiddenFamily(3, (k,), Mode.NONTRIVIAL))[0]
        trivial_free += is_free(H, ForbiddenFamily(3, (k,), Mode.TRIVIAL_ALLOWED))[0]
    dt = time.perf_counter() - t0
    ok = free == len(small_builds) and dt < 600
    record(
        6,
        ok,
        f"{free}/{len(small_builds)} builds non-trivially free in {dt:.1f}s "
        f"(informational: {trivial_free} also free of trivial cycles)",
    )


def test_7_generators():
    small = [G for G in GRAPHS if G.n <= 10]
    agree = sum(girth(G).girth == girth_bruteforce(G) for G in small)
    pp, gq = incidence_pp(2), incidence_gq(2)
    got = ((pp.n, pp.m, girth(pp).girth), (gq.n, gq.m, girth(gq).girth))
    ok = agree == len(small) and got == ((14, 21, 6), (30, 45, 8))
    record(7, ok, f"pp(2)={got[0]}, gq(2)={got[1]}; girth matches brute force on {agree}/{len(small)} graphs")


def test_8_cycle_census():
    mismatches = 0
    identity = 0
    for G in GRAPHS:
        for L in range(3, G.n + 1):
            mismatches += count_cycles(G, L) != count_cycles_bruteforce(G, L)
            cen = census(G, L)
            identity += sum(cen.per_edge.values()) != L * cen.total
    k4 = count_cycles(Graph.from_edges(4, itertools.combinations(range(4), 2)), 4)
    heawood = count_cycles(incidence_pp(2), 6)
    ok = mismatches == 0 and identity == 0 and k4 == 3 and heawood == 28
    record(8, ok, f"{mismatches} count mismatches, {identity} per-edge identity failures; K4 C4={k4}; Heawood C6={heawood}")


def test_9_bigcpn():
    violations = checks = 0
    for G in GRAPHS:
        for e in G.edges:
            for k in (2, 3):
                violations += not bigcpn_check(G, e, k).holds
                checks += 1
    record(9, violations == 0, f"{checks} (graph, edge, k) checks, {violations} violations")


def test_10_pipeline_soundness(small_builds, girth_builds):
    not_indep = 0
    below_floor = 0
    case2 = 0
    inputs = [("random", None, H) for H in CORPUS_3] + list(small_builds) + list(girth_builds)
    for i, (name, k, H) in enumerate(inputs):
        I, rep = theorem1_pipeline(H, 3, seed=i)
        not_indep += not H.is_independent(I)
        if name != "random" and rep.case == 2:
            case2 += 1
            below_floor += len(I) < rep.alpha_floor
    ok = not_indep == 0 and below_floor == 0
    record(10, ok, f"{len(inputs)} inputs, {not_indep} non-independent outputs; {below_floor}/{case2} Case-2 builds below 2n0/(3 sqrt d0)")


def test_11_certificate_round_trip(small_builds, girth_builds):
    certs = []
    for H in CORPUS_3:
        certs.append(certify(H, ForbiddenFamily(3, (3,), Mode.NONTRIVIAL)))
    for name, k, H in list(small_builds) + list(girth_builds):
        certs.append(certify(H, ForbiddenFamily(3, (k,), Mode.NONTRIVIAL)))
    round_trip = sum(verify(c).ok for c in certs)
    claims = [c for c in certs if c["status"] == "claim" and c["hypergraph"]["edges"]]
    caught = {"edge delete": 0, "alpha inflate": 0, "digest tamper": 0}
    for c in claims:
        a = {**c, "hypergraph": {**c["hypergraph"], "edges": c["hypergraph"]["edges"][:-1]}}
        caught["edge delete"] += not verify(a).ok
        b = {**c, "alpha": {**c["alpha"], "value": c["alpha"]["value"] + 1}, "claim": {**c["claim"], "t": c["claim"]["t"] + 1}}
        caught["alpha inflate"] += not verify(b).ok
        d = {**c, "hypergraph": {**c["hypergraph"], "digest": format(int(c["hypergraph"]["digest"], 16) ^ 1, "016x")}}
        caught["digest tamper"] += not verify(d).ok
    ok = round_trip == len(certs) and all(v == len(claims) for v in caught.values()) and claims
    summary = ", ".join(f"{k} {v}/{len(claims)}" for k, v in caught.items())
    record(11, bool(ok), f"round trip {round_trip}/{len(certs)}; mutations flagged: {summary}")


def test_12_jn_supplier():
    bad = []
    notes = []
    for n in (20, 40):
        for seed in range(3):
            H = jn_supplier(n, seed)
            linear = all(H.codegree(u, v) <= 1 for u, v in itertools.combinations(range(n), 2))
            free = is_free(H, ForbiddenFamily(3, (2, 3, 4), Mode.TRIVIAL_ALLOWED))[0]
            capped = H.max_degree() <= math.ceil(math.sqrt(n))
            if not (linear and free and capped):
                bad.append((n, seed))
            if seed == 0:
                d = jn_density(H)
                notes.append(f"n={n}: {d['edges']} triples vs n^1.5/10={d['target']:.1f}")
    record(12, not bad, f"6 outputs linear, B2/B3/B4-free, degree-capped; density {'; '.join(notes)}")
