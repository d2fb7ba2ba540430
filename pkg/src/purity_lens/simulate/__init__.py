"""Seeded generators and experiment drivers."""

from .anm import (
    AnmConfig,
    HiddenTruth,
    MarginalizationResult,
    NoiseSpec,
    gen_confounded,
    gen_direct,
    marginalization_config,
    run_marginalization,
)
from .experiments import (
    DEFAULT_LEVELS,
    Fig3Result,
    GeneticsConfig,
    SweepResult,
    run_fig3,
    run_fig4,
    run_fig5,
)
from .genetics import (
    GenotypeMatrix,
    correlation_r2,
    corrupt,
    gen_genotypes,
    gen_two_locus_phenotype,
    roc_auc,
)
from .seeding import derive_seed, parallel_map

__all__ = [
    "AnmConfig",
    "DEFAULT_LEVELS",
    "Fig3Result",
    "GeneticsConfig",
    "GenotypeMatrix",
    "HiddenTruth",
    "MarginalizationResult",
    "NoiseSpec",
    "SweepResult",
    "correlation_r2",
    "corrupt",
    "derive_seed",
    "gen_confounded",
    "gen_direct",
    "gen_genotypes",
    "gen_two_locus_phenotype",
    "marginalization_config",
    "parallel_map",
    "roc_auc",
    "run_fig3",
    "run_fig4",
    "run_fig5",
    "run_marginalization",
]
