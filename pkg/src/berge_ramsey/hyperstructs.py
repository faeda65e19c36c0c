"""Graph and uniform hypergraph containers plus the edge-list text format.

Both containers are immutable. Vertices are dense ids ``0..n-1``; every
structure also carries ``labels``, mapping its ids back to the ids of the
structure it was cut from, so that subgraphs can always be reported in terms
of the original input.

Text format::

    # optional comment lines
    r n m
    v1 v2 ... vr      (m lines)

``r = 2`` denotes a simple graph.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class FormatError(ValueError):
    """Raised for malformed edge-list text."""


class BudgetExceeded(RuntimeError):
    """A search hit its node cap before reaching a verdict.

    Distinct from a negative answer: callers must treat it as "unknown".
    """

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: node budget {budget} exhausted")
        self.budget = budget


def _check_labels(labels, n):
    if labels is None:
        return tuple(range(n))
    labels = tuple(int(x) for x in labels)
    if len(labels) != n:
        raise ValueError(f"labels has length {len(labels)}, expected {n}")
    return labels


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has a vertex outside [0, {self.n})")
            pair = (u, v) if u < v else (v, u)
            if pair in canon:
                raise ValueError(f"duplicate edge {pair}")
            canon.add(pair)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "labels", _check_labels(self.labels, self.n))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        return cls(n, tuple(tuple(e) for e in edges), labels)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range")
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def m(self) -> int:
        return len(self.edges)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph.from_edges(len(keep), edges, [self.labels[v] for v in keep])

    def edge_subgraph(self, edges: Iterable[Sequence[int]]) -> "Graph":
        """Same vertex set, subset of the edges."""
        edges = [tuple(e) for e in edges]
        for u, v in edges:
            if not self.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")
        return Graph.from_edges(self.n, edges, self.labels)


@dataclass(frozen=True)
class Hypergraph:
    """r-uniform hypergraph; edges are sorted r-tuples in lexicographic order."""

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("uniformity must be at least 2")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(int(x) for x in e))
            if len(t) != self.r or len(set(t)) != self.r:
                raise ValueError(f"edge {e} does not have {self.r} distinct vertices")
            if t[0] < 0 or t[-1] >= self.n:
                raise ValueError(f"edge {e} has a vertex outside [0, {self.n})")
            if t in canon:
                raise ValueError(f"duplicate edge {t}")
            canon.add(t)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "labels", _check_labels(self.labels, self.n))

    @classmethod
    def from_edges(cls, r: int, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Hypergraph":
        return cls(r, n, tuple(tuple(e) for e in edges), labels)

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(e) for e in self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices containing each vertex."""
        inc = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def _pair_codegrees(self) -> Counter:
        c = Counter()
        for e in self.edges:
            for p in itertools.combinations(e, 2):
                c[p] += 1
        return c

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range")
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    def average_degree(self) -> float:
        return self.r * len(self.edges) / self.n if self.n else 0.0

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def codegree(self, u: int, v: int) -> int:
        if self.r != 3:
            raise ValueError("codegree is defined here for 3-graphs only")
        if u == v:
            raise ValueError("codegree needs two distinct vertices")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"pair ({u}, {v}) out of range")
        return self._pair_codegrees.get((min(u, v), max(u, v)), 0)

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise IndexError(f"vertex {v} out of range")
        pos = {v: i for i, v in enumerate(keep)}
        edges = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return Hypergraph.from_edges(self.r, len(keep), edges, [self.labels[v] for v in keep])

    def edge_subhypergraph(self, edge_ids: Iterable[int]) -> "Hypergraph":
        """Same vertex set, only the listed edges."""
        return Hypergraph.from_edges(self.r, self.n, [self.edges[i] for i in edge_ids], self.labels)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        s = set(vertices)
        return not any(all(v in s for v in e) for e in self.edges)

    def original(self, v: int) -> int:
        return self.labels[v]


def parse(text: str) -> Graph | Hypergraph:
    """Parse edge-list text; ``r = 2`` yields a :class:`Graph`."""
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    if not lines:
        raise FormatError("missing header line 'r n m'")
    try:
        r, n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError(f"malformed header {lines[0]!r}") from None
    if r < 2 or n < 0 or m < 0:
        raise FormatError(f"invalid header values r={r} n={n} m={m}")
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges, found {len(body)}")
    edges = []
    seen = set()
    for line in body:
        try:
            e = tuple(int(x) for x in line.split())
        except ValueError:
            raise FormatError(f"non-integer vertex in {line!r}") from None
        if len(e) != r:
            raise FormatError(f"edge {line!r} has arity {len(e)}, expected {r}")
        if any(v < 0 or v >= n for v in e):
            raise FormatError(f"edge {line!r} has a vertex id outside [0, {n})")
        if len(set(e)) != r:
            raise FormatError(f"edge {line!r} repeats a vertex")
        key = tuple(sorted(e))
        if key in seen:
            raise FormatError(f"duplicate edge {line!r}")
        seen.add(key)
        edges.append(e)
    if r == 2:
        return Graph.from_edges(n, edges)
    return Hypergraph.from_edges(r, n, edges)


def serialize(obj: Graph | Hypergraph) -> str:
    r = 2 if isinstance(obj, Graph) else obj.r
    out = [f"{r} {obj.n} {len(obj.edges)}"]
    out.extend(" ".join(map(str, e)) for e in obj.edges)
    return "\n".join(out) + "\n"


def read_file(path) -> Graph | Hypergraph:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def write_file(obj: Graph | Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize(obj))


def fano_plane() -> Hypergraph:
    """The 7 lines of PG(2,2) as a 3-graph."""
    lines = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    return Hypergraph.from_edges(3, 7, lines)


def affine_plane_3() -> Hypergraph:
    """AG(2,3): 9 points of Z_3^2 and its 12 lines."""
    pt = lambda x, y: 3 * x + y
    lines = set()
    for x0, y0 in itertools.product(range(3), repeat=2):
        for dx, dy in [(0, 1), (1, 0), (1, 1), (1, 2)]:
            line = tuple(sorted(pt((x0 + t * dx) % 3, (y0 + t * dy) % 3) for t in range(3)))
            lines.add(line)
    return Hypergraph.from_edges(3, 9, sorted(lines))


@dataclass(frozen=True)
class Bipartition:
    """Vertex classes X (left) and Y (right) of a bipartite graph."""

    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))
        if self.left & self.right:
            raise ValueError("bipartition classes overlap")

    def check(self, G: Graph) -> None:
        if self.left | self.right != frozenset(range(G.n)):
            raise ValueError("bipartition does not cover the vertex set")
        for u, v in G.edges:
            if (u in self.left) == (v in self.left):
                raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")

    def swapped(self) -> "Bipartition":
        return Bipartition(self.right, self.left)
