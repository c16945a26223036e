"""Nowhere-zero 6-flows on 2-edge-connected multigraphs."""

from ._core import (
    DefectError,
    Error,
    Graph,
    GuardError,
    InputError,
    Solution,
    StructuralError,
    count_nz_flows,
    pair_to_z6,
    random_2ec_multigraph,
    solve,
    to_integer_flow,
    verify_k_flow,
    verify_nowhere_zero,
    verify_theorem2,
)

__all__ = [
    "DefectError",
    "Error",
    "Graph",
    "GuardError",
    "InputError",
    "Solution",
    "StructuralError",
    "count_nz_flows",
    "pair_to_z6",
    "random_2ec_multigraph",
    "solve",
    "to_integer_flow",
    "verify_k_flow",
    "verify_nowhere_zero",
    "verify_theorem2",
]
