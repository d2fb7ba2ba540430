"""Finite-sample purity ratio of P(Y|X) from KDE curves.

For two groups x, x' the directional statistic is the minimum over the grid
of p(y|x) / p(y|x'). A conditional looks pairwise pure when, for every pair,
at least one direction drives this minimum towards zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .exceptions import PurityLensError
from .kde import DEFAULT_GRID_SIZE, DensityGrid, estimate_densities
from .samples import GroupedSamples

DEFAULT_PURITY_THRESHOLD = 0.1
# exp stays a positive normal float on this range; the exact value
# remains available as log_purity_ratio
_LOG_RANGE = (-708.0, 700.0)


def _exp(log_value: float) -> float:
    return float(np.exp(np.clip(log_value, *_LOG_RANGE)))


@dataclass(frozen=True)
class PurityReport:
    pair_ratios: dict
    purity_ratio: float
    threshold: float
    is_pure_decision: bool
    log_purity_ratio: float = 0.0
    bandwidths: dict = field(default_factory=dict)
    grid_size: int = 0

    @property
    def neg_log_ratio(self) -> float:
        """``-log(purity_ratio)``, finite even when the ratio underflows."""
        return -self.log_purity_ratio

    def to_dict(self) -> dict:
        return {
            "purity_ratio": self.purity_ratio,
            "threshold": self.threshold,
            "is_pure": self.is_pure_decision,
            "neg_log_purity_ratio": self.neg_log_ratio,
            "pair_ratios": [
                {"x": str(a), "x_prime": str(b), "min_ratio": r}
                for (a, b), r in self.pair_ratios.items()
            ],
            "bandwidths": {str(k): v for k, v in self.bandwidths.items()},
            "grid_size": self.grid_size,
        }


def _log_min_ratio(curves: DensityGrid, x, x_prime) -> float:
    try:
        a = curves.log_curves[x]
        b = curves.log_curves[x_prime]
    except KeyError as exc:
        raise PurityLensError(f"unknown label {exc.args[0]!r}") from None
    return float(np.min(a - b))


def pairwise_min_ratio(curves: DensityGrid, x, x_prime) -> float:
    """min over grid points of p(y|x) / p(y|x')."""
    return _exp(_log_min_ratio(curves, x, x_prime))


def reduce_pair_ratios(pair_ratios: dict) -> float:
    """Max over unordered pairs of the smaller of the two directional ratios."""
    labels = []
    for a, _ in pair_ratios:
        if a not in labels:
            labels.append(a)
    return max(
        min(pair_ratios[(a, b)], pair_ratios[(b, a)]) for a, b in combinations(labels, 2)
    )


def purity_from_densities(
    curves: DensityGrid, threshold: float = DEFAULT_PURITY_THRESHOLD
) -> PurityReport:
    if not threshold > 0:
        raise PurityLensError("purity threshold must be positive")
    log_ratios = {
        (a, b): _log_min_ratio(curves, a, b) for a, b in permutations(curves.labels, 2)
    }
    # exp is monotone, so reducing in log space equals reducing the ratios
    log_ratio = reduce_pair_ratios(log_ratios)
    pair_ratios = {k: _exp(v) for k, v in log_ratios.items()}
    ratio = _exp(log_ratio)
    return PurityReport(
        pair_ratios=pair_ratios,
        purity_ratio=ratio,
        threshold=threshold,
        is_pure_decision=bool(ratio < threshold),
        log_purity_ratio=log_ratio,
        bandwidths=dict(curves.bandwidths),
        grid_size=len(curves.grid),
    )


def purity_ratio(
    data: GroupedSamples,
    grid_size: int = DEFAULT_GRID_SIZE,
    threshold: float = DEFAULT_PURITY_THRESHOLD,
    bandwidth_method: str = "silverman",
    bandwidth_override: float | None = None,
) -> PurityReport:
    """Estimate densities for every group and reduce them to a purity report."""
    curves = estimate_densities(
        data,
        grid_size=grid_size,
        bandwidth_override=bandwidth_override,
        bandwidth_method=bandwidth_method,
    )
    return purity_from_densities(curves, threshold=threshold)
