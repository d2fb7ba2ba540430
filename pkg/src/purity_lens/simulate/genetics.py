"""Synthetic SNP genotypes, corruption, two-locus phenotypes and scoring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import PurityLensError


@dataclass(frozen=True)
class GenotypeMatrix:
    """Binary SNP calls, one row per individual and one column per SNP.

    0 encodes the common configuration and 1 the rarer variant.
    """

    values: np.ndarray
    linkage_flip_prob: float

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_snps(self) -> int:
        return self.values.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.values[:, j]


def gen_genotypes(
    n_samples: int = 1200,
    n_snps: int = 2000,
    linkage_flip_prob: float = 0.05,
    maf_range: tuple = (0.05, 0.5),
    seed=0,
) -> GenotypeMatrix:
    """Markov chain along the genome: each SNP copies its left neighbour and
    flips every call independently with ``linkage_flip_prob``.
    """
    if n_snps < 2:
        raise PurityLensError("n_snps must be at least 2")
    if not 0 < linkage_flip_prob <= 0.5:
        raise PurityLensError("linkage_flip_prob must lie in (0, 0.5]")
    lo, hi = maf_range
    if not 0 < lo <= hi <= 0.5:
        raise PurityLensError("maf_range must satisfy 0 < low <= high <= 0.5")
    rng = np.random.default_rng(seed)
    maf = rng.uniform(lo, hi)
    first = rng.random(n_samples) < maf
    flips = rng.random((n_samples, n_snps - 1)) < linkage_flip_prob
    # XOR-accumulating the flips along the row reproduces the copy-and-flip chain
    chain = np.logical_xor.accumulate(np.column_stack([first, flips]), axis=1)
    return GenotypeMatrix(values=chain.astype(np.uint8), linkage_flip_prob=linkage_flip_prob)


def corrupt(snp_column, level: float, seed=0) -> np.ndarray:
    """Flip each call independently with probability ``level``: X xor C."""
    if not 0 <= level <= 0.5:
        raise PurityLensError("corruption level must lie in [0, 0.5]")
    x = np.asarray(snp_column).astype(np.uint8)
    rng = np.random.default_rng(seed)
    flips = rng.random(x.size) < level
    return x ^ flips.astype(np.uint8)


def gen_two_locus_phenotype(x_col, v_col, w1: float, w2: float, noise_sigma: float, seed=0):
    """``Y = w1 * X + w2 * V + E`` with Gaussian E."""
    x = np.asarray(x_col, dtype=float)
    v = np.asarray(v_col, dtype=float)
    if x.shape != v.shape:
        raise PurityLensError(f"length mismatch: {x.size} != {v.size}")
    if not noise_sigma > 0:
        raise PurityLensError("noise_sigma must be positive")
    rng = np.random.default_rng(seed)
    return w1 * x + w2 * v + rng.normal(0.0, noise_sigma, x.size)


def correlation_r2(x, y) -> float:
    """Squared Pearson correlation."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise PurityLensError(f"length mismatch: {x.size} != {y.size}")
    if x.size < 2 or np.all(x == x[0]) or np.all(y == y[0]):
        raise PurityLensError("correlation needs two non-constant inputs")
    xc = x - x.mean()
    yc = y - y.mean()
    r = (xc @ yc) / np.sqrt((xc @ xc) * (yc @ yc))
    return float(min(1.0, r * r))


def roc_auc(scores_causal, scores_noncausal) -> float:
    """Mann-Whitney AUC: P(causal score > non-causal score), ties count 1/2."""
    pos = np.asarray(scores_causal, dtype=float)
    neg = np.sort(np.asarray(scores_noncausal, dtype=float))
    if pos.size == 0 or neg.size == 0:
        raise PurityLensError("roc_auc needs non-empty score lists")
    below = np.searchsorted(neg, pos, side="left")
    at_or_below = np.searchsorted(neg, pos, side="right")
    wins = below.sum() + 0.5 * (at_or_below - below).sum()
    return float(wins / (pos.size * neg.size))
