"""Randomized lower-bound constructions.

Both constructions take a bipartite host G' with classes X, Y and place a
small gadget hypergraph on each neighbourhood N(x), x in X, through an
independent uniformly random bijection. The union, on vertex set Y, inherits
freeness from the girth of G'.

* ``build_theorem2``: gadget is the star system S_{d(x), m}.
* ``build_theorem3``: gadget is a linear {B2, B3, B4}-free 3-graph J_{d(x)},
  here supplied by a greedy search (``jn_supplier``).
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .girth import GirthError, _bounded_distance, girth
from .hyperstructs import Bipartition, Graph, Hypergraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StarSystemSpec:
    r: int
    d: int
    m: int

    def __post_init__(self):
        if self.m < 1 or self.d < self.m:
            raise ValueError(f"need d >= m >= 1, got d={self.d}, m={self.m}")
        if self.r < 2:
            raise ValueError("r must be at least 2")

    def classes(self) -> list[range]:
        base, extra = divmod(self.d, self.m)
        out, start = [], 0
        for i in range(self.m):
            size = base + (1 if i < extra else 0)
            out.append(range(start, start + size))
            start += size
        return out

    @property
    def degenerate(self) -> bool:
        """Some class is too small to carry a star edge."""
        return any(len(c) < self.r for c in self.classes())


def star_system(spec: StarSystemSpec) -> Hypergraph:
    """S_{d,m}: on each contiguous class, all r-sets containing its least vertex."""
    edges = []
    for cls in spec.classes():
        if len(cls) < spec.r:
            continue
        center = cls[0]
        for rest in itertools.combinations(cls[1:], spec.r - 1):
            edges.append((center,) + rest)
    if spec.degenerate:
        log.debug("star system %s has classes smaller than r", spec)
    return Hypergraph.from_edges(spec.r, spec.d, edges)


def indep_prob_bound_star(d: int, m: int, r: int, s: int) -> float:
    """Upper bound exp(-m(s - rm) / 2d) on P(uniform s-set independent in S_{d,m})."""
    if m < 1 or d < m:
        raise ValueError("need d >= m >= 1")
    if s <= r * m:
        return 1.0
    return math.exp(-m * (s - r * m) / (2 * d))


def indep_prob_bound_jn(n: int, s: int) -> float:
    """Upper bound on P(uniform s-set independent in J_n), valid for large n."""
    if s >= math.sqrt(n) / 2:
        return 639 / 640
    return min(1.0, math.exp(-(s**3 - 216) / (80 * n**1.5)))


@dataclass
class ConstructionTrace:
    kind: str  # "t2" or "t3"
    graph: Graph
    bipartition: Bipartition
    hypergraph: Hypergraph
    seed: int
    params: dict = field(default_factory=dict)
    placements: dict = field(default_factory=dict)  # x -> tuple of Y-vertices (gadget vertex i -> N(x)[i])
    flags: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "params": self.params,
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]},
            "left": sorted(self.bipartition.left),
            "right": sorted(self.bipartition.right),
            "placements": {str(x): list(p) for x, p in sorted(self.placements.items())},
            "hypergraph": {
                "r": self.hypergraph.r,
                "n": self.hypergraph.n,
                "edges": [list(e) for e in self.hypergraph.edges],
            },
            "flags": self.flags,
        }


def _per_x_rngs(seed: int, count: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _place(G, bip, gadget_for, seed, r):
    """Lay gadget_for(d, rng) on each N(x) through a random bijection."""
    X = sorted(bip.left)
    Y = sorted(bip.right)
    ypos = {y: i for i, y in enumerate(Y)}
    rngs = _per_x_rngs(seed, len(X))
    edges = set()
    placements = {}
    for x, rng in zip(X, rngs):
        nbrs = sorted(G.adj[x])
        gadget = gadget_for(len(nbrs), rng)
        perm = rng.permutation(len(nbrs))
        image = tuple(nbrs[int(i)] for i in perm)
        placements[x] = image
        for e in gadget.edges:
            t = tuple(sorted(ypos[image[v]] for v in e))
            if t in edges:
                raise AssertionError(f"two neighbourhoods produced the same edge {t}")
            edges.add(t)
    H = Hypergraph.from_edges(r, len(Y), sorted(edges), [G.labels[y] for y in Y])
    return H, placements


def default_m(n: int, c: float, k: int) -> int:
    """The m = 8 log n / c^k choice, rounded up and at least 1."""
    if c <= 0 or n < 2:
        return 1
    return max(1, math.ceil(8 * math.log(n) / c**k))


def build_theorem2(
    G: Graph,
    bip: Bipartition,
    k: int,
    r: int = 3,
    m: int | None = None,
    seed: int = 0,
    c: float | None = None,
    n_host: int | None = None,
) -> ConstructionTrace:
    """Union over x in X of a random copy of S_{d(x), m} on N(x).

    ``c`` and ``n_host`` describe the host the bipartite graph came from and
    only feed the default m; they default to values measured on G itself.
    When d(x) < m the star count is clamped to d(x) and the trace says so.
    """
    bip.check(G)
    g = girth(G).girth
    if not g > 2 * k:
        raise GirthError(f"girth {g} is not more than 2k = {2 * k}")
    if n_host is None:
        n_host = G.n
    if c is None:
        c = G.m / (2 * n_host ** (1 + 1 / k)) if n_host else 0.0
    m_used = default_m(n_host, c, k) if m is None else int(m)
    if m_used < 1:
        raise ValueError("m must be at least 1")
    flags = []
    clamped = []

    def gadget(d, rng):
        if d == 0:
            return Hypergraph.from_edges(r, 0, [])
        mx = min(m_used, d)
        if mx < m_used:
            clamped.append(d)
        spec = StarSystemSpec(r, d, mx)
        return star_system(spec)

    H, placements = _place(G, bip, gadget, seed, r)
    if clamped:
        flags.append(f"m clamped to d(x) for {len(clamped)} vertices of X")
    params = {"k": k, "r": r, "m": m_used, "m_default": m is None, "c": c, "n_host": n_host}
    return ConstructionTrace("t2", G, bip, H, seed, params, placements, flags)


def jn_supplier(n: int, seed: int = 0, max_attempts: int | None = None) -> Hypergraph:
    """Greedy linear 3-graph on n vertices with no Berge 2-, 3- or 4-cycle.

    For a linear 3-graph a Berge cycle of length <= 4 through a new triple
    T exists exactly when two vertices of T are within distance 3 in the
    2-shadow, so triples are admitted when all three pairwise shadow
    distances are at least 4 and no degree would exceed ceil(sqrt(n)).
    Candidates are all triples in seeded random order when there are at most
    200k of them, otherwise ``max_attempts`` random triples.
    """
    if n < 3:
        return Hypergraph.from_edges(3, max(n, 0), [])
    rng = np.random.default_rng(seed)
    cap = math.ceil(math.sqrt(n))
    total = math.comb(n, 3)
    if total <= 200_000:
        allt = list(itertools.combinations(range(n), 3))
        candidates = (allt[int(i)] for i in rng.permutation(total))
    else:
        attempts = max_attempts or int(20 * n**1.5)
        candidates = (tuple(sorted(int(v) for v in rng.choice(n, 3, replace=False))) for _ in range(attempts))
    shadow = [set() for _ in range(n)]
    deg = [0] * n
    edges = []
    for t in candidates:
        if any(deg[v] >= cap for v in t):
            continue
        a, b, c = t
        if (
            _bounded_distance(shadow, a, b, 3) is not None
            or _bounded_distance(shadow, a, c, 3) is not None
            or _bounded_distance(shadow, b, c, 3) is not None
        ):
            continue
        edges.append(t)
        for u, v in ((a, b), (a, c), (b, c)):
            shadow[u].add(v)
            shadow[v].add(u)
        for v in t:
            deg[v] += 1
    return Hypergraph.from_edges(3, n, edges)


def jn_density(H: Hypergraph) -> dict:
    target = H.n**1.5 / 10
    return {"n": H.n, "edges": len(H), "target": target, "ratio": len(H) / target if target else None}


def build_theorem3(
    G: Graph,
    bip: Bipartition,
    seed: int = 0,
    supplier: Callable[[int, int], Hypergraph] = jn_supplier,
) -> ConstructionTrace:
    """Union over x in X of a random copy of J_{d(x)} on N(x); needs girth > 8."""
    bip.check(G)
    g = girth(G).girth
    if not g > 8:
        raise GirthError(f"girth {g} is not more than 8")

    def gadget(d, rng):
        return supplier(d, int(rng.integers(2**63)))

    H, placements = _place(G, bip, gadget, seed, 3)
    return ConstructionTrace("t3", G, bip, H, seed, {"supplier": supplier.__name__}, placements)


def replay(trace: ConstructionTrace) -> Hypergraph:
    """Rebuild the hypergraph from the trace's inputs and seed."""
    if trace.kind == "t2":
        p = trace.params
        m = None if p.get("m_default") else p["m"]
        return build_theorem2(
            trace.graph, trace.bipartition, p["k"], p["r"], m, trace.seed, p["c"], p["n_host"]
        ).hypergraph
    if trace.kind == "t3":
        return build_theorem3(trace.graph, trace.bipartition, trace.seed).hypergraph
    raise ValueError(f"unknown trace kind {trace.kind!r}")
