"""Upper-bound machinery for non-trivial Berge 2k-cycles in 3-graphs.

The composed pipeline (``theorem1_pipeline``) runs, on a 3-graph H:

1. ``bounded_ratio_subgraph``: induced H0 with max degree <= avg degree / eps;
2. ``heavy_subgraph`` on H0 with cycle length 2k: H1 whose edges each own a
   pair of codegree 1;
3. ``color_split``: a 3-coloring keeping the rainbow edges whose
   (color 1, color 2) pair has codegree 1, giving a bipartite graph G;
4. with b = |G| / n0^(1+1/k): if b >= 1/eps, inspect the 2k-cycles of G
   through the busiest edge (each either lifts to a non-trivial Berge 2k-cycle
   of H or shares one apex vertex); otherwise sample an independent set of H0.

An independent set of H is returned in every case.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from .berge import BergeWitness, Mode, tight_path_to_witness, verify_witness
from .census import DEFAULT_BUDGET, census, cycles_through_edge, iter_cycles_through_edge
from .hyperstructs import Graph, Hypergraph

log = logging.getLogger(__name__)


def _require_3(H: Hypergraph):
    if H.r != 3:
        raise ValueError("this operation is defined for 3-graphs")


def random_indep_set(H: Hypergraph, seed=0) -> tuple[int, ...]:
    """Keep each vertex with probability d^(-1/2), then drop one vertex per surviving edge.

    d is the average degree, floored at 1 (any d >= avg degree is valid).
    """
    _require_3(H)
    rng = np.random.default_rng(seed)
    d = max(H.average_degree(), 1.0)
    keep = rng.random(H.n) < d**-0.5
    for e in H.edges:
        if all(keep[v] for v in e):
            keep[max(e)] = False
    out = tuple(int(v) for v in np.flatnonzero(keep))
    assert H.is_independent(out)
    return out


def extend_to_maximal(H: Hypergraph, indep) -> tuple[int, ...]:
    """Greedily add vertices (in id order) while the set stays independent."""
    chosen = set(indep)
    for v in range(H.n):
        if v in chosen:
            continue
        chosen.add(v)
        if any(all(u in chosen for u in H.edges[i]) for i in H.incidence[v]):
            chosen.discard(v)
    return tuple(sorted(chosen))


@dataclass
class RatioReport:
    eps: float
    n: int
    vertices: int
    avg_degree: float
    max_degree: int
    stages: int
    kept: list = field(repr=False, default_factory=list)
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kept"] = list(self.kept)
        return d


def min_order(n: int, eps: float) -> float:
    """n^(1 - 2 / log2(1/eps))."""
    return n ** (1 - 2 / math.log2(1 / eps)) if n else 0.0


def bounded_ratio_subgraph(H: Hypergraph, eps: float) -> tuple[Hypergraph, RatioReport]:
    """Induced subgraph with max degree at most (average degree) / eps.

    While the ratio fails, fix the current average degree d and delete, one
    at a time, vertices whose current degree is at least d (highest first),
    then re-test on the induced remainder.
    """
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    kept = list(range(H.n))
    cur = H
    stages = 0
    while True:
        d = cur.average_degree()
        if cur.max_degree() <= d / eps:
            break
        stages += 1
        deg = cur.degrees()
        alive_edge = [True] * len(cur.edges)
        removed = set()
        for v in sorted(range(cur.n), key=lambda v: (-deg[v], v)):
            if deg[v] < d:
                continue
            removed.add(v)
            for i in cur.incidence[v]:
                if alive_edge[i]:
                    alive_edge[i] = False
                    for u in cur.edges[i]:
                        deg[u] -= 1
        survivors = [v for v in range(cur.n) if v not in removed]
        kept = [kept[v] for v in survivors]
        cur = cur.induced(survivors)
    rep = RatioReport(eps, H.n, cur.n, cur.average_degree(), cur.max_degree(), stages, kept)
    rep.checks = {
        "max_degree": cur.max_degree() <= cur.average_degree() / eps,
        "order": cur.n >= min_order(H.n, eps),
    }
    return cur, rep


@dataclass
class LightPairTrace:
    k: int
    layers: list  # list of lists of edge ids of H
    light_pairs: dict  # edge id -> the pair that was light when the edge was peeled
    residual_codegrees: dict  # edge id -> codegree of that pair in its residual graph
    path: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "layers": self.layers,
            "light_pairs": {str(e): list(p) for e, p in sorted(self.light_pairs.items())},
            "path": list(self.path) if self.path else None,
        }


def _pair_counts(H: Hypergraph, edge_ids) -> Counter:
    c = Counter()
    for i in edge_ids:
        for p in itertools.combinations(H.edges[i], 2):
            c[p] += 1
    return c


def light_pair_peel(H: Hypergraph, k: int) -> LightPairTrace:
    """Peel layers of edges with a light pair (codegree < k in the residual graph).

    If k - 1 layers do not exhaust H, a tight path on k + 2 vertices is read
    off the leftover edges and returned instead (``trace.path``).
    """
    _require_3(H)
    if k < 2:
        raise ValueError("k must be at least 2")
    residual = set(range(len(H.edges)))
    residuals = [None, frozenset(residual)]  # residuals[i] = edge ids of G_i
    layers = []
    light = {}
    light_cod = {}
    for _ in range(1, k):
        if not residual:
            break
        cod = _pair_counts(H, residual)
        layer = []
        for i in sorted(residual):
            for p in itertools.combinations(H.edges[i], 2):
                if cod[p] < k:
                    layer.append(i)
                    light[i] = p
                    light_cod[i] = cod[p]
                    break
        layers.append(layer)
        residual -= set(layer)
        residuals.append(frozenset(residual))
    trace = LightPairTrace(k, layers, light, light_cod)
    if residual:
        while len(residuals) <= k:
            residuals.append(frozenset(residual))
        trace.path = _extract_tight_path(H, k, residuals)
    return trace


def _extract_tight_path(H: Hypergraph, k: int, residuals) -> tuple[int, ...]:
    first = min(residuals[k])
    path = list(H.edges[first])
    for i in range(1, k):
        layer = residuals[k - i]
        a, b = path[i], path[i + 1]
        options = []
        for j in set(H.incidence[a]) & set(H.incidence[b]):
            if j not in layer:
                continue
            (w,) = set(H.edges[j]) - {a, b}
            if w not in path:
                options.append(w)
        if not options:
            raise AssertionError(f"tight path extension failed at step {i}")
        path.append(min(options))
    return tuple(path)


class TightPathFound(Exception):
    """Light-pair peeling left edges behind: H contains a tight path."""

    def __init__(self, path, witness: BergeWitness):
        super().__init__(f"tight path {path}")
        self.path = path
        self.witness = witness


@dataclass
class HeavyResult:
    hypergraph: Hypergraph  # H*, on the vertex set of H
    source_edges: list  # edge ids of H kept in H*
    pairs: list  # per edge of H*, a pair of codegree 1 in H*
    layer: int
    layer_edges: int
    conflict_max_degree: int
    checks: dict = field(default_factory=dict)


def heavy_subgraph(H: Hypergraph, k: int) -> HeavyResult:
    """Subgraph H* with more than |H|/(3k^2) edges, each owning a codegree-1 pair.

    Raises :class:`TightPathFound` when H contains a tight path of length k
    (for k >= 4 this carries a non-trivial Berge k-cycle witness).
    """
    trace = light_pair_peel(H, k)
    if trace.path is not None:
        raise TightPathFound(trace.path, tight_path_to_witness(trace.path, H, k))
    if not trace.layers:
        return HeavyResult(H.edge_subhypergraph([]), [], [], 0, 0, 0, {"size": True, "codegree_one": True})
    li = max(range(len(trace.layers)), key=lambda i: (len(trace.layers[i]), -i))
    layer = trace.layers[li]
    cod = _pair_counts(H, layer)
    by_pair: dict = {}
    for i in layer:
        for p in itertools.combinations(H.edges[i], 2):
            if cod[p] < k:
                by_pair.setdefault(p, []).append(i)
    conflicts = {i: set() for i in layer}
    for members in by_pair.values():
        for a, b in itertools.combinations(members, 2):
            conflicts[a].add(b)
            conflicts[b].add(a)
    max_deg = max((len(s) for s in conflicts.values()), default=0)
    if max_deg > 3 * k - 6:
        raise AssertionError(
            f"conflict graph degree {max_deg} exceeds 3k-6={3 * k - 6} on layer {li + 1} ({len(layer)} edges)"
        )
    chosen = []
    blocked = set()
    for i in layer:
        if i not in blocked:
            chosen.append(i)
            blocked |= conflicts[i]
    Hs = H.edge_subhypergraph(chosen)
    pairs = []
    for e in Hs.edges:
        p = next((p for p in itertools.combinations(e, 2) if Hs.codegree(*p) == 1), None)
        pairs.append(p)
    checks = {
        "size": len(Hs) * 3 * k * k > len(H) if len(H) else True,
        "codegree_one": all(p is not None for p in pairs),
        "greedy": len(chosen) * (3 * k - 5) >= len(layer),
    }
    if not (checks["size"] and checks["codegree_one"]):
        raise AssertionError(f"heavy subgraph contract failed: {checks}")
    source = [H.edge_index[e] for e in Hs.edges]
    return HeavyResult(Hs, source, pairs, li + 1, len(layer), max_deg, checks)


@dataclass
class ColorSplit:
    graph: Graph  # on the vertex set of H1
    h2_edges: list  # edge ids of H1
    apex: dict  # graph edge -> color-3 vertex of its triple
    coloring: tuple
    tries: int
    ratio: float
    meets_1_27: bool


def color_split(H1: Hypergraph, seed=0, tries: int = 64) -> ColorSplit:
    """Best of ``tries`` random 3-colorings for the rainbow codegree-1 split.

    An edge survives when it is rainbow and its (1, 2)-colored pair has
    codegree 1 in H1; that pair becomes an edge of the bipartite graph G.
    """
    _require_3(H1)
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(tries):
        col = tuple(int(c) + 1 for c in rng.integers(0, 3, size=H1.n))
        kept = []
        for i, e in enumerate(H1.edges):
            cs = sorted(e, key=lambda v: col[v])
            if [col[v] for v in cs] != [1, 2, 3]:
                continue
            if H1.codegree(cs[0], cs[1]) == 1:
                kept.append(i)
        if best is None or len(kept) > len(best[1]):
            best = (col, kept)
    col, kept = best if best is not None else ((1,) * H1.n, [])
    apex = {}
    for i in kept:
        cs = sorted(H1.edges[i], key=lambda v: col[v])
        apex[tuple(sorted(cs[:2]))] = cs[2]
    G = Graph.from_edges(H1.n, sorted(apex), H1.labels)
    assert G.m == len(kept)
    ratio = len(kept) / len(H1) if len(H1) else 1.0
    return ColorSplit(G, kept, apex, col, tries, ratio, 27 * len(kept) >= len(H1))


@dataclass
class PeelReport:
    k: int
    eps: float
    n: int
    n0: int = 0
    d0: float = 0.0
    D0: int = 0
    h0_edges: int = 0
    h1_edges: int = 0
    h2_edges: int = 0
    b: float = 0.0
    b_threshold: float = 0.0
    case: int | None = None
    outcome: dict = field(default_factory=dict)
    indep_size: int = 0
    alpha_floor: float = 0.0
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def default_eps(n: int) -> float:
    """exp(-sqrt(log2 n)), kept inside (0, 1/2)."""
    if n < 2:
        return 0.25
    return min(math.exp(-math.sqrt(math.log2(n))), 0.45)


def theorem1_pipeline(
    H: Hypergraph,
    k: int,
    seed: int = 0,
    eps: float | None = None,
    b_threshold: float | None = None,
    tries: int = 64,
    indep_seeds: int = 32,
    budget: int = DEFAULT_BUDGET,
) -> tuple[tuple[int, ...], PeelReport]:
    """Run the non-trivial Berge 2k-cycle pipeline on H.

    Returns an independent set of H (ids of H) and the stage report. The
    case split defaults to b >= 1/eps; ``b_threshold`` overrides it for
    experiments at sizes where that threshold is out of reach.
    """
    _require_3(H)
    if k < 2:
        raise ValueError("k must be at least 2")
    if k < 3:
        notes = ["pipeline is stated for k >= 3"]
    else:
        notes = []
    n = H.n
    eps = default_eps(n) if eps is None else eps
    thr = 1 / eps if b_threshold is None else b_threshold
    rep = PeelReport(k, eps, n, b_threshold=thr, notes=notes)
    ss = np.random.SeedSequence(seed)
    color_seed, indep_root = ss.spawn(2)

    H0, ratio = bounded_ratio_subgraph(H, eps)
    kept = ratio.kept
    rep.n0, rep.d0, rep.D0, rep.h0_edges = H0.n, H0.average_degree(), H0.max_degree(), len(H0)
    rep.checks["ratio"] = ratio.checks

    best = ()
    for child in indep_root.spawn(indep_seeds):
        cand = random_indep_set(H0, child)
        if len(cand) > len(best):
            best = cand
    indep_h0 = extend_to_maximal(H0, best)
    indep = tuple(sorted(kept[v] for v in indep_h0))
    if not H.is_independent(indep):
        raise AssertionError("pipeline produced a non-independent set")
    rep.indep_size = len(indep)
    rep.alpha_floor = 2 * H0.n / (3 * math.sqrt(max(rep.d0, 1.0))) if H0.n else 0.0

    try:
        heavy = heavy_subgraph(H0, 2 * k)
    except TightPathFound as exc:
        w = BergeWitness.from_json(H, exc.witness.to_json(_relabel_to(H0, H, kept)))
        rep.outcome = {"kind": "tight_path", "witness": w.to_json(H, Mode.NONTRIVIAL), "verified": verify_witness(H, w)}
        rep.case = None
        return indep, rep
    H1 = heavy.hypergraph
    rep.h1_edges = len(H1)
    if len(H0):
        rep.checks["h1_over_h0_12k2"] = len(H1) * 12 * k * k > len(H0)
        rep.checks["h1_over_h0_4k2"] = len(H1) * 4 * k * k >= len(H0)

    split = color_split(H1, color_seed, tries)
    G = split.graph
    rep.h2_edges = len(split.h2_edges)
    rep.checks["G_equals_H2"] = G.m == rep.h2_edges
    rep.checks["h2_over_h1_27"] = split.meets_1_27
    rep.b = G.m / rep.n0 ** (1 + 1 / k) if rep.n0 else 0.0

    if rep.b >= thr:
        rep.case = 1
        rep.outcome = _case_one(H, H0, H1, kept, G, split, k, rep, budget)
    else:
        rep.case = 2
        rep.outcome = {"kind": "independent_set", "size": rep.indep_size, "floor": rep.alpha_floor}
    return indep, rep


def _relabel_to(H0: Hypergraph, H: Hypergraph, kept) -> Hypergraph:
    """H0 with labels expressed in H's own labels (for witness transport)."""
    return Hypergraph.from_edges(H0.r, H0.n, H0.edges, [H.labels[v] for v in kept])


def _case_one(H, H0, H1, kept, G, split, k, rep, budget) -> dict:
    cen = census(G, 2 * k, budget=budget)
    if cen.total == 0:
        return {"kind": "no_cycle"}
    e = max(G.edges, key=lambda f: (cen.per_edge[f], [-x for x in f]))
    m, union = cycles_through_edge(G, e, 2 * k, budget)
    tri_index = {}
    for i in split.h2_edges:
        cs = sorted(H1.edges[i], key=lambda v: split.coloring[v])
        tri_index[tuple(sorted(cs[:2]))] = H1.edges[i]
    apexes = set()
    for cyc in iter_cycles_through_edge(G, e, 2 * k, budget):
        L = len(cyc)
        pairs = [tuple(sorted((cyc[j], cyc[(j + 1) % L]))) for j in range(L)]
        zs = [split.apex[p] for p in pairs]
        apexes.update(zs)
        if len(set(zs)) > 1:
            ids = tuple(H0.edge_index[tri_index[p]] for p in pairs)
            reps = tuple(cyc[(j + 1) % L] for j in range(L))
            w0 = BergeWitness(ids, reps, True)
            if not verify_witness(H0, w0):
                raise AssertionError("lifted cycle failed verification")
            w = BergeWitness.from_json(H, w0.to_json(_relabel_to(H0, H, kept)))
            return {
                "kind": "witness",
                "edge": [H.labels[kept[v]] for v in e],
                "cycles_through_edge": m,
                "witness": w.to_json(H, Mode.NONTRIVIAL),
                "verified": verify_witness(H, w),
            }
    (z,) = apexes
    deg_z = sum(1 for i in split.h2_edges if z in H1.edges[i])
    return {
        "kind": "apex",
        "edge": [H.labels[kept[v]] for v in e],
        "cycles_through_edge": m,
        "z": H.labels[kept[z]],
        "deg_z_h2": deg_z,
        "union_edges": union.m,
        "D0": rep.D0,
        "union_exceeds_D0": union.m > rep.D0,
    }
