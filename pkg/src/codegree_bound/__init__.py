"""Extremal 3-graphs with bounded codegree and matching number, the partial
triple systems behind them, and exact verifiers."""

from .bounds import compute_f, compute_g, existence
from .core import Certificate, Hypergraph3, Multigraph, TripleSystem, matching_number, max_codegree
from .designs import complete_to_leave, construct_pbd35, construct_sts, construct_ts
from .errors import CodegreeBoundError, ConstructionError, ParameterError, ResourceError
from .extremal import construct_extremal, verify_extremal
from .mpts import construct_mpts, verify_mpts
from .oracle import enumerate_matchings, oracle_extremal, oracle_mpts

__all__ = [
    "Certificate",
    "CodegreeBoundError",
    "ConstructionError",
    "Hypergraph3",
    "Multigraph",
    "ParameterError",
    "ResourceError",
    "TripleSystem",
    "complete_to_leave",
    "compute_f",
    "compute_g",
    "construct_extremal",
    "construct_mpts",
    "construct_pbd35",
    "construct_sts",
    "construct_ts",
    "enumerate_matchings",
    "existence",
    "matching_number",
    "max_codegree",
    "oracle_extremal",
    "oracle_mpts",
    "verify_extremal",
    "verify_mpts",
]
