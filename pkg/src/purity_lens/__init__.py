"""Purity and dimension tests for conditionals P(Y|X) with discrete X."""

__version__ = "0.1.0"

from .dimension import GramMatrix, RankEstimate, estimate_dimension, estimate_rank, gram_matrix, jacobi_eigh
from .discrete import (
    DiscreteConditional,
    antichain_bruteforce_m,
    discrete_kwise_pure_bruteforce,
    discrete_pairwise_pure,
    sperner_m,
)
from .exceptions import (
    BudgetExceededError,
    DegenerateAnchorError,
    NoBoundaryError,
    PurityLensError,
    ZeroSpreadError,
)
from .kde import DensityGrid, estimate_densities
from .purity import PurityReport, purity_from_densities, purity_ratio
from .reconstruct import ReconstructionResult, canonicalize, reconstruct_binary_cause
from .samples import GroupedSamples

__all__ = [
    "BudgetExceededError",
    "DegenerateAnchorError",
    "DensityGrid",
    "DiscreteConditional",
    "GramMatrix",
    "GroupedSamples",
    "NoBoundaryError",
    "PurityLensError",
    "PurityReport",
    "RankEstimate",
    "ReconstructionResult",
    "ZeroSpreadError",
    "antichain_bruteforce_m",
    "canonicalize",
    "discrete_kwise_pure_bruteforce",
    "discrete_pairwise_pure",
    "estimate_densities",
    "estimate_dimension",
    "estimate_rank",
    "gram_matrix",
    "jacobi_eigh",
    "purity_from_densities",
    "purity_ratio",
    "reconstruct_binary_cause",
    "sperner_m",
]
