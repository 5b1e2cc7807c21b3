"""Exact solvers for the harmless set problem on graphs."""

from .cliquewidth import (
    CExpression,
    Eta,
    Leaf,
    RedundantExpressionError,
    Rho,
    Union,
    check_irredundant,
    eval_cexpr,
    parse_cexpr,
    serialize_cexpr,
    solve_cliquewidth,
)
from .core import (
    FormatError,
    Graph,
    Instance,
    ReconstructionError,
    SolveResult,
    as_vertex_set,
    clamp_thresholds,
    is_harmless,
    majority_thresholds,
    parse_instance,
    serialize_instance,
    slack,
    validate,
)
from .ilp import IlpConstraint, IlpModel, IlpVariable, maximize
from .nd import nd_partition, solve_nd
from .oracle import (
    MrssInstance,
    OracleLimitError,
    WeightedGraph,
    max_harmless_bruteforce,
    mmo_feasible_bruteforce,
    mrss_feasible_bruteforce,
    parse_mmo,
    parse_mrss,
    serialize_mmo,
    serialize_mrss,
)
from .planar import (
    KernelTooLargeError,
    PlanarDecision,
    apply_reduction1,
    color_vertices,
    diameter_witness,
    solve_planar,
)
from .reductions import (
    MmoReductionOutput,
    MrssReductionOutput,
    mmo_proof_witness,
    mrss_proof_witness,
    reduce_mmo,
    reduce_mrss,
    render_mmo,
    render_mrss,
)
from .twincover import find_twin_cover, is_twin_cover, solve_twincover

__all__ = [
    "CExpression",
    "Eta",
    "FormatError",
    "Graph",
    "IlpConstraint",
    "IlpModel",
    "IlpVariable",
    "Instance",
    "KernelTooLargeError",
    "Leaf",
    "MmoReductionOutput",
    "MrssInstance",
    "MrssReductionOutput",
    "OracleLimitError",
    "PlanarDecision",
    "ReconstructionError",
    "RedundantExpressionError",
    "Rho",
    "SolveResult",
    "Union",
    "WeightedGraph",
    "apply_reduction1",
    "as_vertex_set",
    "check_irredundant",
    "clamp_thresholds",
    "color_vertices",
    "diameter_witness",
    "eval_cexpr",
    "find_twin_cover",
    "is_harmless",
    "is_twin_cover",
    "majority_thresholds",
    "max_harmless_bruteforce",
    "maximize",
    "mmo_feasible_bruteforce",
    "mmo_proof_witness",
    "mrss_feasible_bruteforce",
    "mrss_proof_witness",
    "nd_partition",
    "parse_cexpr",
    "parse_instance",
    "parse_mmo",
    "parse_mrss",
    "reduce_mmo",
    "reduce_mrss",
    "render_mmo",
    "render_mrss",
    "serialize_cexpr",
    "serialize_instance",
    "serialize_mmo",
    "serialize_mrss",
    "slack",
    "solve_cliquewidth",
    "solve_nd",
    "solve_planar",
    "solve_twincover",
    "validate",
]
