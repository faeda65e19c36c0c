"""Finite Ramsey lower-bound certificates.

A certificate for a hypergraph H and forbidden family F either claims
``R(alpha(H) + 1, F) > v(H)`` (H is F-free and alpha is exact), carries a
member of F found in H, or is marked inconclusive when a search budget ran
out. The edge list is stored inline; the digest only detects tampering.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__
from .berge import DEFAULT_BUDGET, BergeWitness, ForbiddenFamily, is_free, verify_witness
from .hyperstructs import BudgetExceeded, Hypergraph, serialize
from .indep import DEFAULT_BUDGET as ALPHA_BUDGET
from .indep import alpha_exact

FORMAT = "berge-ramsey-certificate/1"


def digest(H: Hypergraph) -> str:
    """First 64 bits of SHA-256 over the canonical edge-list text, in hex."""
    return hashlib.sha256(serialize(H).encode("utf-8")).hexdigest()[:16]


def certify(
    H: Hypergraph,
    fam: ForbiddenFamily,
    budget: int = DEFAULT_BUDGET,
    alpha_budget: int = ALPHA_BUDGET,
    seeds: dict | None = None,
) -> dict:
    cert = {
        "format": FORMAT,
        "toolchain": f"berge_ramsey {__version__}",
        "hypergraph": {"r": H.r, "n": H.n, "edges": [list(e) for e in H.edges], "digest": digest(H)},
        "family": fam.to_dict(),
        "freeness": None,
        "witness": None,
        "alpha": None,
        "claim": None,
        "seeds": seeds or {},
    }
    try:
        free, w = is_free(H, fam, budget)
    except BudgetExceeded:
        cert["freeness"] = {"status": "budget_exhausted", "budget": budget}
        cert["status"] = "inconclusive"
        return cert
    if not free:
        cert["freeness"] = {"status": "not_free", "budget": budget}
        cert["witness"] = w.to_json(H, fam.mode)
        cert["status"] = "witness"
        return cert
    cert["freeness"] = {"status": "free", "budget": budget, "method": "exhaustive backtracking"}
    a = alpha_exact(H, alpha_budget)
    cert["alpha"] = {**a.to_dict(), "budget": alpha_budget}
    if not a.exact:
        cert["status"] = "inconclusive"
        return cert
    cert["claim"] = {
        "t": a.lower + 1,
        "n": H.n,
        "statement": f"R({a.lower + 1}, {fam.describe()}) > {H.n}",
    }
    cert["status"] = "claim"
    return cert


@dataclass
class Verdict:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _hypergraph_of(cert: dict) -> Hypergraph:
    h = cert["hypergraph"]
    return Hypergraph.from_edges(int(h["r"]), int(h["n"]), h["edges"])


def verify(cert: dict) -> Verdict:
    """Re-run every piece of evidence from the inline edge list."""
    fails = []
    try:
        H = _hypergraph_of(cert)
        fam = ForbiddenFamily.from_dict(cert["family"])
    except (KeyError, TypeError, ValueError) as exc:
        return Verdict(False, [f"malformed certificate: {exc}"])
    if digest(H) != cert["hypergraph"].get("digest"):
        fails.append("digest mismatch")
    status = cert.get("status")
    if status == "witness":
        try:
            w = BergeWitness.from_json(H, cert["witness"])
            if w.k not in fam.lengths or not verify_witness(H, w, fam.mode):
                fails.append("witness does not verify")
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            fails.append(f"witness unreadable: {exc}")
    elif status == "claim":
        budget = cert["freeness"].get("budget", DEFAULT_BUDGET)
        try:
            free, _ = is_free(H, fam, budget)
            if not free:
                fails.append("freeness evidence failed: a forbidden cycle exists")
        except BudgetExceeded:
            fails.append("freeness re-check exhausted its budget")
        al = cert["alpha"]
        a = alpha_exact(H, al.get("budget", ALPHA_BUDGET))
        wit = tuple(al.get("witness", ()))
        if not H.is_independent(wit):
            fails.append("alpha witness is not independent")
        if len(wit) != al.get("value"):
            fails.append("alpha witness size mismatch")
        if not a.exact or a.lower != al.get("value"):
            fails.append(f"alpha mismatch: recomputed {a.value}, certified {al.get('value')}")
        claim = cert["claim"]
        if claim.get("t") != al.get("value", -2) + 1 or claim.get("n") != H.n:
            fails.append("claim fields inconsistent with evidence")
    elif status == "inconclusive":
        if cert.get("claim") is not None:
            fails.append("inconclusive certificate carries a claim")
    else:
        fails.append(f"unknown status {status!r}")
    return Verdict(not fails, fails)


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2, sort_keys=True) + "\n"
