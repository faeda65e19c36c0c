"""Seeded sweeps over lower-bound builds and the peeling pipeline, written as CSV.

Rows are computed in a process pool when ``workers > 1`` and always emitted
in input order. The ``wall_time`` column is left empty unless timing is
requested, so that fixed seeds give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from .berge import DEFAULT_BUDGET, ForbiddenFamily, Mode, is_free
from .construct import build_theorem2
from .girth import deg_pipeline, incidence_gq, incidence_pp
from .hyperstructs import BudgetExceeded, Hypergraph, read_file
from .indep import alpha_exact
from .peel import theorem1_pipeline


@dataclass
class SweepRow:
    generator: str
    q: str
    k: int
    r: int
    m: int | str
    seed: int
    v_H: int | str = ""
    edges_H: int | str = ""
    alpha: str = ""
    freeness: str = ""
    wall_time: str = ""
    error: str = ""


@dataclass
class PipelineRow:
    input: str
    n: int
    edges: int
    k: int
    seed: int
    eps: float | str = ""
    n0: int | str = ""
    d0: float | str = ""
    D0: int | str = ""
    case: str = ""
    outcome: str = ""
    indep_size: int | str = ""
    alpha_floor: float | str = ""
    meets_floor: str = ""
    shape: float | str = ""
    wall_time: str = ""
    error: str = ""


def host_graph(gen: str, q: int | str):
    if gen == "pp":
        return incidence_pp(int(q))
    if gen == "gq":
        return incidence_gq(int(q))
    if gen == "file":
        return read_file(q)
    raise ValueError(f"unknown generator {gen!r}")


def _default_generator(k: int) -> str:
    return {2: "pp", 3: "gq"}.get(k, "file")


def theorem2_build(gen: str, q, k: int, r: int, m: int | None, seed: int) -> Hypergraph:
    G = host_graph(gen, q)
    sub, bip, rep = deg_pipeline(G, k, seed)
    return build_theorem2(sub, bip, k, r, m, seed, rep.c, G.n).hypergraph


def _t2_row(task) -> SweepRow:
    gen, q, k, r, m, seed, budget, alpha_budget, timing = task
    row = SweepRow(gen, str(q), k, r, "" if m is None else m, seed)
    t0 = time.perf_counter()
    try:
        G = host_graph(gen, q)
        sub, bip, rep = deg_pipeline(G, k, seed)
        tr = build_theorem2(sub, bip, k, r, m, seed, rep.c, G.n)
        H = tr.hypergraph
        row.m = tr.params["m"]
        row.v_H, row.edges_H = H.n, len(H)
        a = alpha_exact(H, alpha_budget)
        row.alpha = str(a.lower) if a.exact else f"[{a.lower},{a.upper}]"
        try:
            free, _ = is_free(H, ForbiddenFamily(r, (k,), Mode.NONTRIVIAL), budget)
            row.freeness = "free" if free else "not_free"
        except BudgetExceeded:
            row.freeness = "budget_exhausted"
    except Exception as exc:  # per-row failures are recorded, the sweep goes on
        row.error = f"{type(exc).__name__}: {exc}"
    if timing:
        row.wall_time = f"{time.perf_counter() - t0:.3f}"
    return row


def _pipe_row(task) -> PipelineRow:
    name, H, k, seed, eps, b_threshold, budget, timing = task
    row = PipelineRow(name, H.n, len(H), k, seed)
    t0 = time.perf_counter()
    try:
        indep, rep = theorem1_pipeline(H, k, seed, eps=eps, b_threshold=b_threshold, budget=budget)
        row.eps = round(rep.eps, 6)
        row.n0, row.d0, row.D0 = rep.n0, round(rep.d0, 6), rep.D0
        row.case = "" if rep.case is None else str(rep.case)
        row.outcome = rep.outcome.get("kind", "")
        row.indep_size = len(indep)
        row.alpha_floor = round(rep.alpha_floor, 6)
        row.meets_floor = str(len(indep) >= rep.alpha_floor)
        row.shape = round(H.n ** ((2 * k - 1) / (2 * k)), 6) if H.n else 0.0
    except Exception as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    if timing:
        row.wall_time = f"{time.perf_counter() - t0:.3f}"
    return row


def _run(func, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks))


def sweep_theorem2(
    qs,
    k: int,
    r: int = 3,
    seeds=(0,),
    m: int | None = 1,
    generator: str | None = None,
    budget: int = DEFAULT_BUDGET,
    alpha_budget: int = 10**7,
    workers: int = 1,
    timing: bool = False,
) -> list[SweepRow]:
    """One row per (q, seed). ``m=None`` selects the default 8 log n / c^k."""
    gen = generator or _default_generator(k)
    tasks = [(gen, q, k, r, m, s, budget, alpha_budget, timing) for q in qs for s in seeds]
    return _run(_t2_row, tasks, workers)


def sweep_pipeline(
    inputs,
    k: int,
    seeds=(0,),
    eps: float | None = None,
    b_threshold: float | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    timing: bool = False,
) -> list[PipelineRow]:
    """``inputs`` is a sequence of (name, Hypergraph); one row per (input, seed)."""
    tasks = [(name, H, k, s, eps, b_threshold, budget, timing) for name, H in inputs for s in seeds]
    return _run(_pipe_row, tasks, workers)


def theorem2_inputs(qs, build_k: int, r: int = 3, m: int | None = 1, seed: int = 0, generator: str | None = None):
    gen = generator or _default_generator(build_k)
    return [(f"{gen}{q}-k{build_k}-s{seed}", theorem2_build(gen, q, build_k, r, m, seed)) for q in qs]


def to_csv(rows, row_type=None) -> str:
    row_type = row_type or (type(rows[0]) if rows else SweepRow)
    names = [f.name for f in fields(row_type)]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(asdict(row))
    return buf.getvalue()

