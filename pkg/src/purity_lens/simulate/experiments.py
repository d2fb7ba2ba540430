"""Seeded drivers for the synthetic and genetics experiments."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..exceptions import PurityLensError
from ..purity import DEFAULT_PURITY_THRESHOLD, purity_ratio
from ..samples import GroupedSamples
from .anm import AnmConfig, gen_confounded, gen_direct
from .genetics import (
    correlation_r2,
    corrupt,
    gen_genotypes,
    gen_two_locus_phenotype,
    roc_auc,
)
from .seeding import derive_seed, parallel_map

DEFAULT_LEVELS = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)

# stream tags keep the seed trees of different experiments apart
_FIG3, _FIG4, _FIG5, _GENOTYPES = 3, 4, 5, 99


def histogram(values, bins: int = 20, value_range=(0.0, 1.0)) -> dict:
    """Fixed-range histogram; values outside the range land in the end bins."""
    v = np.clip(np.asarray(values, dtype=float), *value_range)
    counts, edges = np.histogram(v, bins=bins, range=value_range)
    return {"edges": edges.tolist(), "counts": counts.tolist()}


# ---------------------------------------------------------------- synthetic


@dataclass(frozen=True)
class Fig3Result:
    direct: list
    confounded: list
    threshold: float
    master_seed: int
    bins: int = 20

    def summary(self) -> dict:
        d = np.asarray(self.direct)
        c = np.asarray(self.confounded)
        return {
            "runs": len(d),
            "direct_fraction_below_threshold": float(np.mean(d < self.threshold)),
            "confounded_fraction_below_threshold": float(np.mean(c < self.threshold)),
            "direct_median": float(np.median(d)),
            "confounded_median": float(np.median(c)),
        }

    def to_dict(self) -> dict:
        return {
            "scenario": "fig3",
            "master_seed": self.master_seed,
            "threshold": self.threshold,
            "summary": self.summary(),
            "histogram_direct": histogram(self.direct, self.bins),
            "histogram_confounded": histogram(self.confounded, self.bins),
            "direct": list(self.direct),
            "confounded": list(self.confounded),
        }


def _fig3_run(task) -> tuple[float, float]:
    config, seed, grid_size = task
    cfg = config.with_seed(seed)
    direct = purity_ratio(gen_direct(cfg), grid_size=grid_size).purity_ratio
    data, _ = gen_confounded(cfg)
    confounded = purity_ratio(data, grid_size=grid_size).purity_ratio
    return direct, confounded


def run_fig3(
    runs: int = 200,
    config: AnmConfig | None = None,
    master_seed: int = 0,
    jobs: int = 1,
    grid_size: int = 201,
    threshold: float = DEFAULT_PURITY_THRESHOLD,
    bins: int = 20,
) -> Fig3Result:
    """Purity ratios for ``runs`` draws of X -> Y and of X <- Z -> Y.

    Run i of both settings shares the seed derived from ``(master_seed, i)``.
    """
    config = config or AnmConfig()
    tasks = [(config, derive_seed(master_seed, _FIG3, i), grid_size) for i in range(runs)]
    out = parallel_map(_fig3_run, tasks, jobs)
    return Fig3Result(
        direct=[d for d, _ in out],
        confounded=[c for _, c in out],
        threshold=threshold,
        master_seed=master_seed,
        bins=bins,
    )


# ---------------------------------------------------------------- genetics


@dataclass(frozen=True)
class GeneticsConfig:
    """Settings shared by the SNP/phenotype experiments.

    ``weight_std`` scales the effect of the SNP under test; the second locus
    gets twice (causal pairs) or half (non-causal pairs) of that effect.
    """

    n_samples: int = 1200
    n_snps: int = 2000
    linkage_flip_prob: float = 0.05
    maf_range: tuple = (0.05, 0.5)
    weight_std: float = 1.0
    noise_sigma: float = 0.25
    far_distance: int = 1000
    far_corruption: float = 0.1
    grid_size: int = 201

    def __post_init__(self):
        if self.far_distance >= self.n_snps:
            raise PurityLensError("far_distance must be smaller than n_snps")


@lru_cache(maxsize=4)
def _genotypes(config: GeneticsConfig, master_seed: int):
    return gen_genotypes(
        n_samples=config.n_samples,
        n_snps=config.n_snps,
        linkage_flip_prob=config.linkage_flip_prob,
        maf_range=config.maf_range,
        seed=derive_seed(master_seed, _GENOTYPES),
    )


def _polymorphic_column(geno, rng, candidates=None) -> int:
    for _ in range(1000):
        j = int(rng.integers(geno.n_snps)) if candidates is None else int(rng.choice(candidates))
        col = geno.column(j)
        if 0 < col.sum() < col.size:
            return j
    raise PurityLensError("no polymorphic SNP found")


def _far_column(geno, rng, j: int, distance: int) -> int:
    # every SNP at least `distance` away is eligible
    left = np.arange(0, max(0, j - distance + 1))
    right = np.arange(min(geno.n_snps, j + distance), geno.n_snps)
    candidates = np.concatenate([left, right])
    if candidates.size == 0:
        raise PurityLensError("no SNP at the requested distance")
    return _polymorphic_column(geno, rng, candidates)


def _score(x, y, grid_size: int) -> tuple[float, float, float]:
    x = np.asarray(x)
    data = GroupedSamples({0: y[x == 0], 1: y[x == 1]})
    report = purity_ratio(data, grid_size=grid_size)
    return correlation_r2(x, y), report.neg_log_ratio, report.purity_ratio


def _usable(x) -> bool:
    # the KDE needs at least 2 individuals in each genotype group
    ones = int(np.count_nonzero(x))
    return ones >= 2 and x.size - ones >= 2


def _fig4_pair(task) -> dict:
    config, master_seed, causal, i = task
    geno = _genotypes(config, master_seed)
    rng = np.random.default_rng(derive_seed(master_seed, _FIG4, int(causal), i))
    w = float(rng.normal(0.0, config.weight_std))
    for _ in range(100):
        if causal:
            j = _polymorphic_column(geno, rng)
            x = geno.column(j)
            cause = j
        else:
            cause = _polymorphic_column(geno, rng)
            j = cause + (1 if cause + 1 < geno.n_snps else -1)
            x = geno.column(j)
        if _usable(x):
            break
    else:
        raise PurityLensError("could not find a usable SNP pair")
    y = w * geno.column(cause) + rng.normal(0.0, config.noise_sigma, geno.n_samples)
    r2, score, ratio = _score(x, y, config.grid_size)
    return {
        "causal": bool(causal),
        "snp": j,
        "cause_snp": cause,
        "weight": w,
        "r2": r2,
        "neg_log_purity": score,
        "purity_ratio": ratio,
    }


def run_fig4(
    pairs: int = 200,
    config: GeneticsConfig | None = None,
    master_seed: int = 0,
    jobs: int = 1,
) -> list[dict]:
    """Correlation and purity for causal SNPs and their adjacent non-causal
    neighbours; ``pairs`` records per class, causal first.
    """
    config = config or GeneticsConfig()
    tasks = [(config, master_seed, causal, i) for causal in (True, False) for i in range(pairs)]
    return parallel_map(_fig4_pair, tasks, jobs)


@dataclass(frozen=True)
class SweepResult:
    corruption_levels: list
    auc_purity: list
    auc_correlation: list
    runs_per_level: int
    seed: int
    records: list = field(default_factory=list, compare=False)

    def to_dict(self, include_records: bool = False) -> dict:
        out = {
            "scenario": "fig5",
            "seed": self.seed,
            "runs_per_level": self.runs_per_level,
            "corruption_levels": list(self.corruption_levels),
            "auc_purity": list(self.auc_purity),
            "auc_correlation": list(self.auc_correlation),
        }
        if include_records:
            out["records"] = list(self.records)
        return out


def _fig5_pair(task) -> dict:
    config, master_seed, level_index, level, causal, i = task
    geno = _genotypes(config, master_seed)
    # the same pair index reuses its SNPs, weights and noise at every level
    rng = np.random.default_rng(derive_seed(master_seed, _FIG5, int(causal), i))
    crng = np.random.default_rng(derive_seed(master_seed, _FIG5, int(causal), i, level_index + 1))
    w = float(rng.normal(0.0, config.weight_std))
    for _ in range(100):
        j = _polymorphic_column(geno, rng)
        x = geno.column(j)
        v_src = geno.column(_far_column(geno, rng, j, config.far_distance))
        if _usable(x):
            break
    else:
        raise PurityLensError("could not find a usable SNP")
    noise_seed = int(rng.integers(2**63))
    if causal:
        # level-independent, so causal pairs are identical at every level
        v = corrupt(v_src, config.far_corruption, rng)
        y = gen_two_locus_phenotype(x, v, w, 2.0 * w, config.noise_sigma, noise_seed)
    else:
        z = corrupt(x, level, crng)
        y = gen_two_locus_phenotype(z, v_src, w, 0.5 * w, config.noise_sigma, noise_seed)
    r2, score, ratio = _score(x, y, config.grid_size)
    return {
        "level": level,
        "causal": bool(causal),
        "r2": r2,
        "neg_log_purity": score,
        "purity_ratio": ratio,
    }


def run_fig5(
    corruption_levels=DEFAULT_LEVELS,
    runs_per_level: int = 200,
    config: GeneticsConfig | None = None,
    master_seed: int = 0,
    jobs: int = 1,
) -> SweepResult:
    """AUC of purity and of r^2 for telling causal from non-causal SNPs,
    at each corruption level of the non-causal SNP's hidden cause.
    """
    config = config or GeneticsConfig()
    levels = [float(v) for v in corruption_levels]
    tasks = [
        (config, master_seed, li, level, causal, i)
        for li, level in enumerate(levels)
        for causal in (True, False)
        for i in range(runs_per_level)
    ]
    records = parallel_map(_fig5_pair, tasks, jobs)
    auc_p, auc_c = [], []
    for level in levels:
        at = [r for r in records if r["level"] == level]
        pos = [r for r in at if r["causal"]]
        neg = [r for r in at if not r["causal"]]
        auc_p.append(roc_auc([r["neg_log_purity"] for r in pos], [r["neg_log_purity"] for r in neg]))
        auc_c.append(roc_auc([r["r2"] for r in pos], [r["r2"] for r in neg]))
    return SweepResult(
        corruption_levels=levels,
        auc_purity=auc_p,
        auc_correlation=auc_c,
        runs_per_level=runs_per_level,
        seed=master_seed,
        records=records,
    )
