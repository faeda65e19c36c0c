"""Exact detection of Berge cycles.

A Berge k-cycle is a sequence of k distinct edges e_1..e_k whose cyclic
intersections e_1∩e_2, ..., e_k∩e_1 admit a system of distinct
representatives (SDR). It is non-trivial when e_1∩...∩e_k is empty.

Under this literal definition a non-trivial Berge 2-cycle cannot exist: the
SDR needs e_1∩e_2 nonempty while non-triviality needs it empty. So the
non-trivial family of length 2 is empty for every r, whereas the
trivial-allowed length-2 family is "two edges sharing at least two vertices".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .hyperstructs import BudgetExceeded, Hypergraph

DEFAULT_BUDGET = 10**8


class Mode(str, enum.Enum):
    TRIVIAL_ALLOWED = "trivial"
    NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class ForbiddenFamily:
    r: int
    lengths: tuple[int, ...]
    mode: Mode = Mode.NONTRIVIAL

    def __post_init__(self):
        lengths = tuple(sorted(set(int(k) for k in self.lengths)))
        if not lengths or lengths[0] < 2:
            raise ValueError("cycle lengths must all be at least 2")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "mode", Mode(self.mode))

    def describe(self) -> str:
        sym = "BB" if self.mode is Mode.NONTRIVIAL else "B"
        return "{" + ", ".join(f"{sym}_{k}^{self.r}" for k in self.lengths) + "}"

    def to_dict(self) -> dict:
        return {"r": self.r, "lengths": list(self.lengths), "mode": self.mode.value}

    @classmethod
    def from_dict(cls, d: dict) -> "ForbiddenFamily":
        return cls(int(d["r"]), tuple(d["lengths"]), Mode(d["mode"]))


@dataclass(frozen=True)
class BergeWitness:
    """Edge indices e_1..e_k with representatives sdr[i] ∈ e_i ∩ e_{i+1}.

    ``exclusions`` maps each vertex of e_1 to a cycle edge avoiding it; it is
    only filled in when the cycle is non-trivial.
    """

    edge_ids: tuple[int, ...]
    sdr: tuple[int, ...]
    nontrivial: bool
    exclusions: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.edge_ids)

    def to_json(self, H: Hypergraph, mode: Mode | str | None = None) -> dict:
        if mode is None:
            mode = Mode.NONTRIVIAL if self.nontrivial else Mode.TRIVIAL_ALLOWED
        return {
            "k": self.k,
            "mode": Mode(mode).value,
            "edges": [[H.labels[v] for v in H.edges[i]] for i in self.edge_ids],
            "sdr": [H.labels[v] for v in self.sdr],
        }

    @classmethod
    def from_json(cls, H: Hypergraph, data: dict) -> "BergeWitness":
        """Inverse of :meth:`to_json`; raises ``ValueError`` on unknown edges."""
        inv = {lab: i for i, lab in enumerate(H.labels)}
        try:
            edge_ids = tuple(H.edge_index[tuple(sorted(inv[v] for v in e))] for e in data["edges"])
            sdr = tuple(inv[v] for v in data["sdr"])
        except KeyError as exc:
            raise ValueError(f"witness references something not in H: {exc}") from None
        inter = _common_intersection(H, edge_ids)
        return cls(edge_ids, sdr, not inter, _exclusions(H, edge_ids) if not inter else {})


def _common_intersection(H: Hypergraph, edge_ids: Sequence[int]) -> set:
    common = set(H.edges[edge_ids[0]])
    for i in edge_ids[1:]:
        common &= H.edge_sets[i]
    return common


def _exclusions(H: Hypergraph, edge_ids: Sequence[int]) -> dict:
    ev = {}
    for w in H.edges[edge_ids[0]]:
        for i in edge_ids:
            if w not in H.edge_sets[i]:
                ev[w] = i
                break
    return ev


def verify_witness(H: Hypergraph, w: BergeWitness, mode: Mode | str = Mode.NONTRIVIAL) -> bool:
    mode = Mode(mode)
    k = len(w.edge_ids)
    for i in w.edge_ids:
        if not 0 <= i < len(H.edges):
            raise IndexError(f"edge index {i} out of range")
    if k < 2 or len(w.sdr) != k:
        return False
    if len(set(w.edge_ids)) != k or len(set(w.sdr)) != k:
        return False
    E = H.edge_sets
    for j in range(k):
        a, b = E[w.edge_ids[j]], E[w.edge_ids[(j + 1) % k]]
        if w.sdr[j] not in a or w.sdr[j] not in b:
            return False
    if w.nontrivial:
        # the evidence must hold up, but the verdict below does not rely on it
        for v, i in w.exclusions.items():
            if i not in w.edge_ids or v in E[i]:
                return False
    if mode is Mode.NONTRIVIAL and _common_intersection(H, w.edge_ids):
        return False
    return True


def sdr(sets: Sequence[Iterable[int]]) -> tuple[int, ...] | None:
    """Distinct representatives by augmenting paths, preferring low vertex ids."""
    sets = [sorted(set(s)) for s in sets]
    owner: dict[int, int] = {}

    def augment(i, seen):
        for v in sets[i]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = i
                return True
        return False

    for i in range(len(sets)):
        if not augment(i, set()):
            return None
    rep = [None] * len(sets)
    for v, i in owner.items():
        rep[i] = v
    return tuple(rep)


class _Matcher:
    """Incremental SDR over a growing list of sets, with cheap snapshots."""

    __slots__ = ("sets", "owner")

    def __init__(self):
        self.sets: list[tuple[int, ...]] = []
        self.owner: dict[int, int] = {}

    def push(self, s: tuple[int, ...]) -> bool:
        self.sets.append(s)
        i = len(self.sets) - 1
        if self._augment(i, set()):
            return True
        self.sets.pop()
        return False

    def _augment(self, i, seen):
        for v in self.sets[i]:
            if v in seen:
                continue
            seen.add(v)
            if v not in self.owner or self._augment(self.owner[v], seen):
                self.owner[v] = i
                return True
        return False

    def snapshot(self):
        return len(self.sets), dict(self.owner)

    def restore(self, snap):
        n, owner = snap
        del self.sets[n:]
        self.owner = owner

    def assignment(self) -> tuple[int, ...]:
        rep = [None] * len(self.sets)
        for v, i in self.owner.items():
            rep[i] = v
        return tuple(rep)


def _meeting(H: Hypergraph, min_common: int) -> list[list[int]]:
    """For each edge, the sorted indices of other edges sharing >= min_common vertices."""
    E = H.edge_sets
    out = []
    for i in range(len(E)):
        cand = set()
        for v in H.edges[i]:
            cand.update(H.incidence[v])
        cand.discard(i)
        out.append(sorted(j for j in cand if len(E[i] & E[j]) >= min_common))
    return out


def find_berge_cycle(
    H: Hypergraph,
    k: int,
    mode: Mode | str = Mode.NONTRIVIAL,
    budget: int = DEFAULT_BUDGET,
) -> BergeWitness | None:
    """Return a Berge k-cycle of H, or None if there is none.

    Exhaustive backtracking. The first edge is the minimum-index edge of the
    cycle and, for k >= 3, e_2 < e_k, so each cycle is visited once up to
    rotation and reflection. Partial SDR feasibility prunes every extension.
    Raises :class:`BudgetExceeded` after ``budget`` search nodes.
    """
    mode = Mode(mode)
    if k < 2:
        raise ValueError("k must be at least 2")
    if k == 2 and mode is Mode.NONTRIVIAL:
        return None
    E = H.edge_sets
    meet = _meeting(H, 2 if k == 2 else 1)
    nodes = 0
    matcher = _Matcher()
    seq: list[int] = []
    in_seq: set[int] = set()

    def close():
        first, last = seq[0], seq[-1]
        if k >= 3 and seq[1] > last:
            return None
        snap = matcher.snapshot()
        if matcher.push(tuple(sorted(E[last] & E[first]))):
            reps = matcher.assignment()
            matcher.restore(snap)
            ids = tuple(seq)
            inter = _common_intersection(H, ids)
            if mode is Mode.NONTRIVIAL and inter:
                return None
            return BergeWitness(ids, reps, not inter, _exclusions(H, ids) if not inter else {})
        matcher.restore(snap)
        return None

    def extend():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("berge cycle search", budget)
        if len(seq) == k:
            return close()
        first, prev = seq[0], seq[-1]
        closing = len(seq) == k - 1
        for j in meet[prev]:
            if j <= first or j in in_seq:
                continue
            if closing and not (E[j] & E[first]):
                continue
            snap = matcher.snapshot()
            if not matcher.push(tuple(sorted(E[prev] & E[j]))):
                continue
            seq.append(j)
            in_seq.add(j)
            found = extend()
            seq.pop()
            in_seq.discard(j)
            matcher.restore(snap)
            if found is not None:
                return found
        return None

    for i in range(len(E)):
        seq.append(i)
        in_seq.add(i)
        found = extend()
        seq.pop()
        in_seq.discard(i)
        if found is not None:
            assert verify_witness(H, found, mode), "detector produced an invalid witness"
            return found
    return None


def is_free(
    H: Hypergraph, fam: ForbiddenFamily, budget: int = DEFAULT_BUDGET
) -> tuple[bool, BergeWitness | None]:
    if fam.r != H.r:
        raise ValueError(f"family is {fam.r}-uniform but H is {H.r}-uniform")
    for k in fam.lengths:
        w = find_berge_cycle(H, k, fam.mode, budget)
        if w is not None:
            return False, w
    return True, None


def tight_path_order(k: int) -> tuple[list[int], list[int]]:
    """1-based edge order and representative order for a tight path of length k.

    Edges are e_i = {v_i, v_{i+1}, v_{i+2}}. Returns (edge indices, vertex
    indices) such that vertex[j] lies in edge[j] ∩ edge[j+1] cyclically.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if k % 2 == 0:
        edges = [1] + list(range(2, k + 1, 2)) + list(range(k - 1, 2, -2))
        verts = list(range(2, k + 1, 2)) + list(range(k + 1, 2, -2))
    else:
        edges = [1] + list(range(2, k, 2)) + list(range(k, 2, -2))
        verts = list(range(2, k + 2, 2)) + list(range(k, 2, -2))
    return edges, verts


def tight_path_to_witness(path: Sequence[int], H: Hypergraph, k: int) -> BergeWitness:
    """Turn a tight path v_1..v_{k+2} of H into a Berge k-cycle witness.

    The result is non-trivial for k >= 4. For k = 2, 3 every edge of the
    path contains v_3, so the cycle is necessarily trivial and the witness
    says so.
    """
    path = [int(v) for v in path]
    if len(path) != k + 2:
        raise ValueError(f"a tight path of length {k} has {k + 2} vertices, got {len(path)}")
    if len(set(path)) != len(path):
        raise ValueError("tight path repeats a vertex")
    if H.r != 3:
        raise ValueError("tight paths are defined for 3-graphs")
    ids = {}
    for i in range(1, k + 1):
        e = tuple(sorted(path[i - 1 : i + 2]))
        if e not in H.edge_index:
            raise ValueError(f"edge {e} of the tight path is missing from H")
        ids[i] = H.edge_index[e]
    edge_order, vert_order = tight_path_order(k)
    edge_ids = tuple(ids[i] for i in edge_order)
    reps = tuple(path[v - 1] for v in vert_order)
    inter = _common_intersection(H, edge_ids)
    w = BergeWitness(edge_ids, reps, not inter, _exclusions(H, edge_ids) if not inter else {})
    check_mode = Mode.NONTRIVIAL if w.nontrivial else Mode.TRIVIAL_ALLOWED
    assert verify_witness(H, w, check_mode), "tight path conversion failed verification"
    return w
