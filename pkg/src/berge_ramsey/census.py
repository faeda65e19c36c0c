"""Exact counting of graph cycles of a fixed length.

A cycle is identified with its edge set, so each one is counted once: it is
enumerated from its least vertex and in the direction whose second vertex is
smaller than its last.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterator

from .hyperstructs import BudgetExceeded, Graph

DEFAULT_BUDGET = 10**8


class _Counter:
    def __init__(self, budget):
        self.nodes = 0
        self.budget = budget

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("cycle enumeration", self.budget)


def enumerate_cycles(G: Graph, length: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """Yield each ``length``-cycle once, as its canonical vertex sequence."""
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    adj = [sorted(a) for a in G.adj]
    ctr = _Counter(budget)
    for s in range(G.n):
        path = [s]
        on_path = {s}

        def dfs(u):
            ctr.tick()
            if len(path) == length:
                if s in G.adj[u] and path[1] < path[-1]:
                    yield tuple(path)
                return
            for w in adj[u]:
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from dfs(w)
                    path.pop()
                    on_path.discard(w)

        yield from dfs(s)


def cycle_edges(cycle) -> list[tuple[int, int]]:
    L = len(cycle)
    return [tuple(sorted((cycle[i], cycle[(i + 1) % L]))) for i in range(L)]


def count_cycles(G: Graph, length: int, budget: int = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in enumerate_cycles(G, length, budget))


@dataclass
class CycleCensus:
    length: int
    total: int
    per_edge: dict = field(default_factory=dict)  # edge -> count
    edge: tuple | None = None
    through_edge: int | None = None
    union: Graph | None = None

    def to_dict(self) -> dict:
        d = {
            "length": self.length,
            "total": self.total,
            "per_edge": {f"{u},{v}": c for (u, v), c in sorted(self.per_edge.items())},
        }
        if self.edge is not None:
            d["edge"] = list(self.edge)
            d["through_edge"] = self.through_edge
            d["union_edges"] = [list(e) for e in self.union.edges]
        return d


def census(G: Graph, length: int, edge=None, budget: int = DEFAULT_BUDGET) -> CycleCensus:
    per_edge = {e: 0 for e in G.edges}
    total = 0
    for cyc in enumerate_cycles(G, length, budget):
        total += 1
        for e in cycle_edges(cyc):
            per_edge[e] += 1
    out = CycleCensus(length, total, per_edge)
    if edge is not None:
        m, union = cycles_through_edge(G, edge, length, budget)
        out.edge = tuple(sorted(edge))
        out.through_edge = m
        out.union = union
    return out


def iter_cycles_through_edge(G: Graph, e, length: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """Yield each ``length``-cycle containing edge e = (u, v) as u, ..., v.

    Each such cycle is e plus a simple u-v path on ``length`` vertices, so
    the paths are enumerated directly.
    """
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    u, v = e
    if not G.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    adj = [sorted(a) for a in G.adj]
    ctr = _Counter(budget)
    path = [u]
    on_path = {u}

    def dfs(x):
        ctr.tick()
        if len(path) == length:
            if x == v:
                yield tuple(path)
            return
        if x == v:
            return
        for w in adj[x]:
            if w in on_path or (x == u and w == v):
                continue
            path.append(w)
            on_path.add(w)
            yield from dfs(w)
            path.pop()
            on_path.discard(w)

    yield from dfs(u)


def cycles_through_edge(G: Graph, e, length: int, budget: int = DEFAULT_BUDGET) -> tuple[int, Graph]:
    """Number of ``length``-cycles containing e, and the union of their edges (on G's vertex set)."""
    count = 0
    union = set()
    for cyc in iter_cycles_through_edge(G, e, length, budget):
        count += 1
        union.update(cycle_edges(cyc))
    return count, Graph.from_edges(G.n, sorted(union), G.labels)


@dataclass
class BigcpnReport:
    edge: tuple
    k: int
    m: int
    union_edges: int
    bound: float
    holds: bool

    def to_dict(self) -> dict:
        return asdict(self)


def bigcpn_check(G: Graph, e, k: int, budget: int = DEFAULT_BUDGET) -> BigcpnReport:
    """Check |E(G')| >= m^(1/(k-1)) / 2 for the union G' of the m 2k-cycles through e."""
    if k < 2:
        raise ValueError("k must be at least 2")
    m, union = cycles_through_edge(G, e, 2 * k, budget)
    bound = m ** (1 / (k - 1)) / 2 if m else 0.0
    return BigcpnReport(tuple(sorted(e)), k, m, union.m, bound, union.m >= bound)


@dataclass
class SupersatReport:
    k: int
    n: int
    edges: int
    b: float
    count: int
    gamma_hat: float | None
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def supersat_report(G: Graph, k: int, budget: int = DEFAULT_BUDGET) -> SupersatReport:
    """Observed 2k-cycle count against the b^(2k) n^2 supersaturation scale.

    Purely observational: the lemma's constants are not known, so the report
    only exposes the implied ratio count / (b^(2k) n^2).
    """
    n = G.n
    b = G.m / n ** (1 + 1 / k) if n else 0.0
    count = count_cycles(G, 2 * k, budget) if n else 0
    gamma = count / (b ** (2 * k) * n**2) if b > 0 else None
    note = ""
    if count == 0 and G.m:
        note = "no 2k-cycles: b is below any supersaturation threshold for this graph"
    return SupersatReport(k, n, G.m, b, count, gamma, note)
