"""Constructions and checkers for Ramsey problems on Berge cycles in uniform hypergraphs."""

__version__ = "0.1.0"

from .berge import (
    BergeWitness,
    ForbiddenFamily,
    Mode,
    find_berge_cycle,
    is_free,
    sdr,
    tight_path_to_witness,
    verify_witness,
)
from .hyperstructs import Bipartition, BudgetExceeded, FormatError, Graph, Hypergraph, parse, serialize

__all__ = [
    "BergeWitness",
    "Bipartition",
    "BudgetExceeded",
    "ForbiddenFamily",
    "FormatError",
    "Graph",
    "Hypergraph",
    "Mode",
    "find_berge_cycle",
    "is_free",
    "parse",
    "sdr",
    "serialize",
    "tight_path_to_witness",
    "verify_witness",
]
