"""``berge-ramsey`` command-line tool.

Exit codes: 0 success or claim, 1 forbidden cycle found (or certificate
rejected), 2 inconclusive (budget exhausted), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .berge import DEFAULT_BUDGET, ForbiddenFamily, Mode, is_free
from .census import bigcpn_check, census, supersat_report
from .certificate import certify, dumps, verify
from .construct import build_theorem2, build_theorem3, jn_density, jn_supplier
from .experiments import sweep_pipeline, sweep_theorem2, theorem2_inputs, to_csv
from .girth import GirthError, deg_pipeline, girth, incidence_gq, incidence_pp, random_girth_bipartite
from .hyperstructs import BudgetExceeded, FormatError, Graph, Hypergraph, read_file, serialize
from .indep import alpha_exact, indep_prob_mc
from .peel import TightPathFound, bounded_ratio_subgraph, heavy_subgraph, theorem1_pipeline

OK, WITNESS, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not "inconclusive"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(args, payload, text: str | None = None):
    fmt = args.format
    if fmt == "text" and text is not None:
        out = text if text.endswith("\n") else text + "\n"
    elif isinstance(payload, str):
        out = payload
    else:
        out = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _load(path, want=None):
    obj = read_file(path)
    if want is Graph and not isinstance(obj, Graph):
        raise InputError(f"{path}: expected a graph (r=2)")
    if want is Hypergraph and not isinstance(obj, Hypergraph):
        raise InputError(f"{path}: expected a hypergraph (r>=3)")
    return obj


def cmd_gen(args):
    if args.kind == "pp":
        G = incidence_pp(args.q)
    elif args.kind == "gq":
        G = incidence_gq(args.q)
    elif args.kind == "bip":
        G, _ = random_girth_bipartite(args.left, args.right, args.girth, args.seed, args.max_degree)
    else:
        H = jn_supplier(args.n, args.seed)
        _emit(args, serialize(H))
        return OK
    _emit(args, serialize(G))
    return OK


def cmd_girth(args):
    rep = girth(_load(args.file, Graph))
    _emit(args, rep.to_dict(), f"girth {rep.girth}")
    return OK


def cmd_degpipe(args):
    G = _load(args.file, Graph)
    sub, bip, rep = deg_pipeline(G, args.k, args.seed)
    if args.graph_out:
        Path(args.graph_out).write_text(serialize(sub))
    d = rep.to_dict()
    d["left"] = sorted(bip.left)
    d["right"] = sorted(bip.right)
    d["labels"] = list(sub.labels)
    _emit(args, d, f"c={rep.c:.4f} vertices={rep.vertices} edges={rep.edges} checks={rep.checks}")
    return OK


def cmd_build(args):
    if args.kind == "jn":
        H = jn_supplier(args.n, args.seed)
        trace = {"kind": "jn", "seed": args.seed, "density": jn_density(H)}
    else:
        if not args.graph:
            raise InputError("--graph is required for t2 and t3 builds")
        G = _load(args.graph, Graph)
        if args.kind == "t2":
            sub, bip, rep = deg_pipeline(G, args.k, args.seed)
            tr = build_theorem2(sub, bip, args.k, args.r, args.m, args.seed, rep.c, G.n)
        else:
            sub, bip, _ = deg_pipeline(G, 4, args.seed)
            tr = build_theorem3(sub, bip, args.seed)
        H = tr.hypergraph
        trace = tr.to_dict()
    trace_path = args.trace or (args.out + ".trace.json" if args.out else None)
    if trace_path:
        Path(trace_path).write_text(json.dumps(trace, indent=2, sort_keys=True) + "\n")
    _emit(args, serialize(H))
    return OK


def _family(args, r):
    return ForbiddenFamily(r, tuple(args.k), Mode(args.mode))


def cmd_detect(args):
    H = _load(args.file, Hypergraph)
    fam = _family(args, H.r)
    try:
        free, w = is_free(H, fam, args.budget)
    except BudgetExceeded as exc:
        _emit(args, {"status": "inconclusive", "reason": str(exc)}, "inconclusive")
        return INCONCLUSIVE
    if free:
        _emit(args, {"status": "free", "family": fam.to_dict()}, f"free of {fam.describe()}")
        return OK
    data = w.to_json(H, fam.mode)
    _emit(args, {"status": "witness", "witness": data}, f"witness edges={data['edges']} sdr={data['sdr']}")
    return WITNESS


def cmd_alpha(args):
    H = _load(args.file, Hypergraph)
    a = alpha_exact(H, args.budget)
    _emit(args, a.to_dict(), f"alpha {a.value}")
    return OK if a.exact else INCONCLUSIVE


def cmd_indep_prob(args):
    H = _load(args.file, Hypergraph)
    est = indep_prob_mc(H, args.s, args.trials, args.seed)
    _emit(args, est.to_dict(), f"p={est.estimate:.6f} +/- {est.half_width:.6f}")
    return OK


def cmd_census(args):
    G = _load(args.file, Graph)
    edge = tuple(int(x) for x in args.edge.split(",")) if args.edge else None
    cen = census(G, args.len, edge, args.budget)
    d = cen.to_dict()
    if args.len % 2 == 0 and args.len >= 4:
        k = args.len // 2
        d["supersaturation"] = supersat_report(G, k, args.budget).to_dict()
        if edge is not None:
            d["bigcpn"] = bigcpn_check(G, edge, k, args.budget).to_dict()
    _emit(args, d, f"{cen.total} cycles of length {args.len}")
    return OK


def cmd_peel(args):
    H = _load(args.file, Hypergraph)
    if args.kind == "ratio":
        H0, rep = bounded_ratio_subgraph(H, args.eps)
        d = rep.to_dict()
        d["kept"] = [H.labels[v] for v in rep.kept]
        _emit(args, d, f"vertices={rep.vertices} max_degree={rep.max_degree} checks={rep.checks}")
        return OK
    try:
        res = heavy_subgraph(H, args.k)
    except TightPathFound as exc:
        data = exc.witness.to_json(H, Mode.NONTRIVIAL)
        _emit(args, {"status": "tight_path", "path": [H.labels[v] for v in exc.path], "witness": data})
        return WITNESS
    d = {
        "status": "ok",
        "edges": [[H.labels[v] for v in e] for e in res.hypergraph.edges],
        "pairs": [[H.labels[v] for v in p] for p in res.pairs],
        "layer": res.layer,
        "layer_edges": res.layer_edges,
        "conflict_max_degree": res.conflict_max_degree,
        "checks": res.checks,
    }
    _emit(args, d, f"|H*|={len(res.hypergraph)} of {len(H)}")
    return OK


def cmd_pipeline(args):
    H = _load(args.file, Hypergraph)
    indep, rep = theorem1_pipeline(H, args.k, args.seed, args.eps, args.b_threshold, budget=args.budget)
    d = rep.to_dict()
    d["independent_set"] = [H.labels[v] for v in indep]
    _emit(args, d, f"case={rep.case} outcome={rep.outcome.get('kind')} |I|={len(indep)}")
    return WITNESS if rep.outcome.get("kind") in ("witness", "tight_path") else OK


def cmd_certify(args):
    H = _load(args.file, Hypergraph)
    cert = certify(H, _family(args, H.r), args.budget, args.alpha_budget, {"seed": args.seed})
    _emit(args, dumps(cert))
    return {"claim": OK, "witness": WITNESS}.get(cert["status"], INCONCLUSIVE)


def cmd_verify(args):
    try:
        cert = json.loads(Path(args.cert).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.cert}: {exc}") from exc
    v = verify(cert)
    _emit(args, {"valid": v.ok, "failures": v.failures}, "valid" if v.ok else "invalid: " + "; ".join(v.failures))
    return OK if v.ok else WITNESS


def cmd_sweep(args):
    if args.kind == "t2":
        rows = sweep_theorem2(
            args.q, args.k, args.r, args.seeds, args.m, args.generator, args.budget, workers=args.workers, timing=args.timing
        )
    else:
        if args.files:
            inputs = [(f, _load(f, Hypergraph)) for f in args.files]
        else:
            inputs = theorem2_inputs(args.q, args.build_k, args.r, args.m, args.build_seed)
        rows = sweep_pipeline(
            inputs, args.k, args.seeds, args.eps, args.b_threshold, args.budget, args.workers, args.timing
        )
    if args.format == "json":
        from dataclasses import asdict

        _emit(args, [asdict(r) for r in rows])
    else:
        _emit(args, to_csv(rows) if rows else to_csv([], _row_type(args.kind)))
    return OK


def _row_type(kind):
    from .experiments import PipelineRow, SweepRow

    return SweepRow if kind == "t2" else PipelineRow


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    p = _Parser(prog="berge-ramsey", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("gen", cmd_gen, help="generate a host graph or J_n supplier output")
    sp.add_argument("kind", choices=("pp", "gq", "bip", "jn"))
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--left", type=int, default=20)
    sp.add_argument("--right", type=int, default=20)
    sp.add_argument("--girth", type=int, default=10, help="minimum girth for 'bip'")
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--n", type=int, default=20)

    sp = add("girth", cmd_girth, help="girth with a shortest cycle")
    sp.add_argument("file")

    sp = add("degpipe", cmd_degpipe, help="max cut and min-degree peel of a high-girth graph")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--graph-out", help="write the peeled bipartite graph here")

    sp = add("build", cmd_build, help="random lower-bound constructions")
    sp.add_argument("kind", choices=("t2", "t3", "jn"))
    sp.add_argument("--graph", help="host graph file (t2, t3)")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--m", type=int, help="stars per neighbourhood (default 8 log n / c^k)")
    sp.add_argument("--n", type=int, default=20, help="order for 'jn'")
    sp.add_argument("--trace", help="trace JSON path (default OUT.trace.json)")

    for name, func, h in (
        ("detect", cmd_detect, "search for a (non-trivial) Berge cycle"),
        ("certify", cmd_certify, "emit a Ramsey lower-bound certificate"),
    ):
        sp = add(name, func, help=h)
        sp.add_argument("file")
        sp.add_argument("--k", type=int, action="append", required=True, help="cycle length (repeatable)")
        sp.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.NONTRIVIAL.value)
        if name == "certify":
            sp.add_argument("--alpha-budget", type=int, default=10**7)

    sp = add("alpha", cmd_alpha, help="exact independence number")
    sp.add_argument("file")
    sp.set_defaults(budget=10**7)

    sp = add("indep-prob", cmd_indep_prob, help="Monte Carlo independence probability")
    sp.add_argument("file")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--trials", type=int, default=10**5)

    sp = add("census", cmd_census, help="count cycles of a fixed length")
    sp.add_argument("file")
    sp.add_argument("--len", type=int, required=True)
    sp.add_argument("--edge", help="u,v: also count cycles through this edge")

    sp = add("peel", cmd_peel, help="bounded-ratio or heavy-subgraph peeling")
    sp.add_argument("kind", choices=("ratio", "heavy"))
    sp.add_argument("file")
    sp.add_argument("--eps", type=float, default=0.25)
    sp.add_argument("--k", type=int, default=4)

    sp = add("pipeline", cmd_pipeline, help="full peeling pipeline for Berge 2k-cycles")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eps", type=float)
    sp.add_argument("--b-threshold", type=float)

    sp = add("verify", cmd_verify, help="re-check a certificate")
    sp.add_argument("cert")

    sp = add("sweep", cmd_sweep, help="seeded experiment sweeps (CSV)")
    sp.add_argument("kind", choices=("t2", "pipeline"))
    sp.add_argument("--q", type=int, nargs="*", default=[2, 3])
    sp.add_argument("--files", nargs="*", help="pipeline inputs instead of builds")
    sp.add_argument("--generator", choices=("pp", "gq"))
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--build-k", type=int, default=3)
    sp.add_argument("--build-seed", type=int, default=0)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--seeds", type=int, nargs="*", default=[0, 1, 2, 3, 4])
    sp.add_argument("--eps", type=float)
    sp.add_argument("--b-threshold", type=float)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="fill the wall_time column")
    sp.set_defaults(format="csv")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, InputError, GirthError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
