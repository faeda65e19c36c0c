"""Independence number and independence probabilities of hypergraphs."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from .construct import ConstructionTrace, indep_prob_bound_jn
from .hyperstructs import BudgetExceeded, Hypergraph

DEFAULT_BUDGET = 10**7


@dataclass
class AlphaResult:
    lower: int
    upper: int
    witness: tuple[int, ...]
    nodes: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | tuple[int, int]:
        return self.lower if self.exact else (self.lower, self.upper)

    def to_dict(self) -> dict:
        return {
            "exact": self.exact,
            "value": self.lower if self.exact else None,
            "lower": self.lower,
            "upper": self.upper,
            "witness": list(self.witness),
            "nodes": self.nodes,
        }


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def alpha_exact(H: Hypergraph, node_budget: int = DEFAULT_BUDGET) -> AlphaResult:
    """Maximum independent set by branch and bound.

    Branches in/out on a vertex of the live edge with the fewest undecided
    vertices. The bound subtracts, from the number of available vertices, a
    greedy packing of pairwise disjoint undecided parts of live edges (each
    needs a distinct excluded vertex). On budget exhaustion returns a
    bracket whose upper end is the root bound.
    """
    masks = [sum(1 << v for v in e) for e in H.edges]
    full = (1 << H.n) - 1
    best = _greedy_independent(H, masks)
    nodes = 0

    def propagate(inset, und):
        while True:
            changed = False
            for m in masks:
                if m & ~(inset | und):
                    continue
                rest = m & und
                if rest == 0:
                    return None
                if rest & (rest - 1) == 0:
                    und &= ~rest
                    changed = True
            if not changed:
                return und

    def bound(inset, und):
        parts = []
        for m in masks:
            if m & ~(inset | und) == 0:
                parts.append(m & und)
        parts.sort(key=lambda p: p.bit_count())
        used = 0
        pack = 0
        for p in parts:
            if p & used == 0:
                used |= p
                pack += 1
        return inset.bit_count() + und.bit_count() - pack, parts

    root_und = propagate(0, full)
    root_ub = bound(0, root_und)[0] if root_und is not None else 0

    def rec(inset, und):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded("alpha search", node_budget)
        und = propagate(inset, und)
        if und is None:
            return
        ub, parts = bound(inset, und)
        if ub <= best.bit_count():
            return
        if not parts:
            best = inset | und
            return
        pivot = min(parts, key=lambda p: p.bit_count())
        v = pivot & -pivot
        rec(inset | v, und & ~v)
        rec(inset, und & ~v)

    exact = True
    try:
        if root_und is not None:
            rec(0, full)
    except BudgetExceeded:
        exact = False
    witness = tuple(_bits(best))
    assert H.is_independent(witness), "alpha witness is not independent"
    lower = best.bit_count()
    upper = lower if exact else max(lower, root_ub)
    return AlphaResult(lower, upper, witness, nodes)


def _greedy_independent(H: Hypergraph, masks: list[int]) -> int:
    order = sorted(range(H.n), key=lambda v: (H.degree(v), v))
    inc = H.incidence
    chosen = 0
    for v in order:
        trial = chosen | (1 << v)
        if all(masks[i] & trial != masks[i] for i in inc[v]):
            chosen = trial
    return chosen


def alpha_bruteforce(H: Hypergraph) -> int:
    """Reference value by scanning subsets from the largest size down."""
    for size in range(H.n, -1, -1):
        for S in itertools.combinations(range(H.n), size):
            if H.is_independent(S):
                return size
    return 0


@dataclass
class IndepProbEstimate:
    s: int
    trials: int
    hits: int

    @property
    def estimate(self) -> float:
        return self.hits / self.trials if self.trials else float("nan")

    @property
    def half_width(self) -> float:
        p = self.estimate
        return 2.576 * math.sqrt(p * (1 - p) / self.trials)

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "trials": self.trials,
            "hits": self.hits,
            "estimate": self.estimate,
            "half_width_99": self.half_width,
        }


def indep_prob_mc(H: Hypergraph, s: int, trials: int, seed: int = 0) -> IndepProbEstimate:
    """Estimate P(a uniform s-subset of V(H) is independent).

    Subsets are the s smallest of n i.i.d. uniform keys, drawn in batches
    from one seeded generator.
    """
    n = H.n
    if s > n or s < 0:
        raise ValueError(f"s={s} must lie in [0, {n}]")
    if trials <= 0:
        raise ValueError("trials must be positive")
    if s < H.r or not H.edges:
        return IndepProbEstimate(s, trials, trials)
    E = np.array(H.edges, dtype=np.intp)
    rng = np.random.default_rng(seed)
    batch = max(1, 4_000_000 // max(len(E) * H.r, n))
    hits = 0
    done = 0
    while done < trials:
        b = min(batch, trials - done)
        keys = rng.random((b, n))
        chosen = np.argpartition(keys, s - 1, axis=1)[:, :s]
        member = np.zeros((b, n), dtype=bool)
        np.put_along_axis(member, chosen, True, axis=1)
        inside = member[:, E].all(axis=2).any(axis=1)
        hits += int(b - inside.sum())
        done += b
    return IndepProbEstimate(s, trials, hits)


def exact_indep_prob(H: Hypergraph, s: int) -> float:
    """P(uniform s-subset independent) by full enumeration; small n only."""
    n = H.n
    if n > 24:
        raise ValueError("exact enumeration is limited to n <= 24")
    masks = [sum(1 << v for v in e) for e in H.edges]
    good = 0
    total = 0
    for S in itertools.combinations(range(n), s):
        m = 0
        for v in S:
            m |= 1 << v
        total += 1
        if all(e & m != e for e in masks):
            good += 1
    return good / total


@dataclass
class UnionBoundReport:
    kind: str
    t: int
    n: int
    log_binom: float
    log_prob_closed_form: float | None
    log_prob_instance: float
    log_bound_closed_form: float | None
    log_bound_instance: float
    conclusive: bool
    params: dict

    @property
    def bound(self) -> float:
        x = self.log_bound_instance
        return math.exp(x) if x < 700 else math.inf

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bound"] = self.bound
        return d


def union_bound_report(trace: ConstructionTrace, t: int, case_split: float | None = None) -> UnionBoundReport:
    """First-moment bound on the expected number of independent t-sets.

    Uses the construction's own degrees: the edges between X and an
    independent t-set I number at least t * (min degree over Y). For star
    builds the per-x factors are combined exactly as in the star lemma; for
    J_n builds the t * delta incidences are spread evenly over X, which is
    a heuristic rather than a worst case, and the report says so.
    """
    H = trace.hypergraph
    G = trace.graph
    X = sorted(trace.bipartition.left)
    Y = sorted(trace.bipartition.right)
    n = H.n
    if not 0 <= t <= n:
        raise ValueError(f"t={t} must lie in [0, {n}]")
    log_binom = math.lgamma(n + 1) - math.lgamma(t + 1) - math.lgamma(n - t + 1)
    deg_y = [G.degree(y) for y in Y if G.degree(y) > 0]
    delta_y = min(deg_y, default=0)
    incid = t * delta_y
    dx = [G.degree(x) for x in X if G.degree(x) > 0]
    params: dict = {"delta_Y": delta_y, "X": len(X)}
    if trace.kind == "t2":
        k, r, m = trace.params["k"], trace.params["r"], trace.params["m"]
        c, n_host = trace.params["c"], trace.params["n_host"]
        mx = [min(m, d) for d in dx]
        rate = min((a / (2 * d) for a, d in zip(mx, dx)), default=0.0)
        log_prob = -rate * incid + sum(r * a * a / (2 * d) for a, d in zip(mx, dx))
        log_prob_closed_form = -(c**k) * m * t / 4
        log_bound_closed_form = log_binom + log_prob_closed_form
        ln = math.log(n_host) if n_host > 1 else float("nan")
        params.update(
            {
                "k": k,
                "r": r,
                "m": m,
                "c": c,
                # exponent of the closed-form bound in units of t log n; -1 at m = 8 log n / c^k
                "exponent_over_t_log_n": 1 - c**k * m / (4 * ln) if n_host > 1 else None,
            }
        )
    elif trace.kind == "t3":
        spread = incid / len(dx) if dx else 0.0
        log_prob = sum(math.log(indep_prob_bound_jn(d, min(d, round(spread)))) for d in dx)
        log_prob_closed_form = None
        log_bound_closed_form = None
        params.update(
            {
                "spread_per_x": spread,
                "heuristic": "even spread of incidences over X",
                "x_a_threshold": math.sqrt(t) / 2,
                "case_split": case_split if case_split is not None else G.n ** (5 / 6),
            }
        )
    else:
        raise ValueError(f"unknown trace kind {trace.kind!r}")
    log_bound = log_binom + log_prob
    return UnionBoundReport(
        trace.kind, t, n, log_binom, log_prob_closed_form, log_prob, log_bound_closed_form, log_bound, log_bound < 0, params
    )
