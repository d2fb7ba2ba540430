"""Recover a latent binary cause Z from the observed conditionals P(Y|x).

Every P(Y|x) lies on the line through two anchor conditionals. Walking along
that line in both directions until a density first touches zero gives the
two boundary points, which are P(Y|z=0) and P(Y|z=1) when P(Y|Z) is pure.
Each P(Z|x) then follows from where P(Y|x) sits between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.integrate import trapezoid

from .exceptions import DegenerateAnchorError, NoBoundaryError, PurityLensError
from .kde import DEFAULT_GRID_SIZE, estimate_densities, silverman_bandwidth
from .samples import GroupedSamples


@dataclass(frozen=True)
class ReconstructionResult:
    grid: np.ndarray
    density_z0: np.ndarray
    density_z1: np.ndarray
    mu0: float
    mu1: float
    mixing: dict
    anchor_pair: tuple
    residuals: dict

    def to_dict(self) -> dict:
        return {
            "anchor_pair": [str(a) for a in self.anchor_pair],
            "mu0": self.mu0,
            "mu1": self.mu1,
            "mixing": {str(k): v for k, v in self.mixing.items()},
            "residuals": {str(k): v for k, v in self.residuals.items()},
            "grid": [float(v) for v in self.grid],
            "density_z0": [float(v) for v in self.density_z0],
            "density_z1": [float(v) for v in self.density_z1],
        }

    def inverted(self) -> "ReconstructionResult":
        """The same reconstruction with the roles of z=0 and z=1 exchanged."""
        a, b = self.anchor_pair
        return ReconstructionResult(
            grid=self.grid,
            density_z0=self.density_z1,
            density_z1=self.density_z0,
            mu0=1.0 - self.mu1,
            mu1=1.0 - self.mu0,
            mixing={k: 1.0 - v for k, v in self.mixing.items()},
            anchor_pair=(b, a),
            residuals=dict(self.residuals),
        )


def find_boundary_mu(curve_a, curve_b, direction: int) -> float:
    """Extreme mu keeping ``mu * A + (1 - mu) * B`` nonnegative on the grid.

    ``direction=+1`` gives the supremum (>= 1), ``direction=-1`` the infimum
    (<= 0). Returns +inf / -inf when the line never leaves the simplex on
    that side.
    """
    a = np.asarray(curve_a, dtype=float)
    b = np.asarray(curve_b, dtype=float)
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    diff = b - a
    if np.max(np.abs(diff)) <= 1e-9 * max(np.max(np.abs(a)), np.max(np.abs(b))):
        raise DegenerateAnchorError("degenerate anchor pair: curves are identical")
    # B + mu (A - B) >= 0  <=>  mu <= B / (B - A) where B > A, mu >= B / (B - A) where A > B
    with np.errstate(divide="ignore", invalid="ignore"):
        bound = b / diff
    if direction == 1:
        side = diff > 0
        return float(np.min(bound[side])) if np.any(side) else np.inf
    side = diff < 0
    return float(np.max(bound[side])) if np.any(side) else -np.inf


def _normalize(curve: np.ndarray, grid: np.ndarray) -> np.ndarray:
    curve = np.clip(curve, 0.0, None)
    mass = trapezoid(curve, grid)
    return curve / mass if mass > 0 else curve


def _project(curve, d0, d1):
    """Best alpha in [0, 1] for curve ~ alpha * d1 + (1 - alpha) * d0."""
    span = d1 - d0
    denom = float(span @ span)
    alpha = float((curve - d0) @ span / denom) if denom > 0 else 0.0
    return min(1.0, max(0.0, alpha))


def reconstruct_binary_cause(
    data: GroupedSamples,
    grid_size: int = DEFAULT_GRID_SIZE,
    bandwidth: float | None = None,
    boundary_smoothing: float = 2.0,
) -> ReconstructionResult:
    """Reconstruct P(Y|z) and P(z=1|x), up to relabelling of Z.

    All groups share one kernel width (Silverman's rule on the pooled sample
    unless ``bandwidth`` is given), so curve differences are not artefacts of
    unequal smoothing. The boundary parameters are read off curves smoothed
    ``boundary_smoothing`` times wider: they hinge on density ratios in the
    sparse tails, where the narrower estimate is too noisy. The anchors are
    the two groups whose curves are farthest apart in L1, and the result is
    canonical: ``density_z0`` has the smaller mean.
    """
    if bandwidth is None:
        bandwidth = silverman_bandwidth(data.pooled())
    if not boundary_smoothing >= 1:
        raise PurityLensError("boundary_smoothing must be at least 1")
    dens = estimate_densities(data, grid_size=grid_size, bandwidth_override=bandwidth)
    wide = estimate_densities(
        data, grid_size=grid_size, bandwidth_override=bandwidth * boundary_smoothing
    )
    grid = dens.grid
    curves = dens.curves
    labels = dens.labels

    anchor, best = None, -1.0
    for x1, x2 in combinations(labels, 2):
        dist = float(trapezoid(np.abs(curves[x1] - curves[x2]), grid))
        if dist > best:
            anchor, best = (x1, x2), dist
    mu0 = find_boundary_mu(wide.curve(anchor[0]), wide.curve(anchor[1]), +1)
    mu1 = find_boundary_mu(wide.curve(anchor[0]), wide.curve(anchor[1]), -1)
    if not (np.isfinite(mu0) and np.isfinite(mu1)):
        raise NoBoundaryError(
            "no simplex boundary reached: anchor curves are ordered pointwise"
        )
    a, b = curves[anchor[0]], curves[anchor[1]]
    d0 = _normalize(mu0 * a + (1 - mu0) * b, grid)
    d1 = _normalize(mu1 * a + (1 - mu1) * b, grid)
    result = _assemble(grid, d0, d1, mu0, mu1, anchor, curves)
    return canonicalize(result)


def _assemble(grid, d0, d1, mu0, mu1, anchor, curves) -> ReconstructionResult:
    mixing, residuals = {}, {}
    for label, curve in curves.items():
        alpha = _project(curve, d0, d1)
        mixing[label] = alpha
        residuals[label] = float(np.linalg.norm(curve - (alpha * d1 + (1 - alpha) * d0)))
    return ReconstructionResult(
        grid=grid,
        density_z0=d0,
        density_z1=d1,
        mu0=float(mu0),
        mu1=float(mu1),
        mixing=mixing,
        anchor_pair=tuple(anchor),
        residuals=residuals,
    )


def canonicalize(result: ReconstructionResult) -> ReconstructionResult:
    """Order the latent states so that z=0 has the smaller mean of Y."""
    mean0 = trapezoid(result.grid * result.density_z0, result.grid)
    mean1 = trapezoid(result.grid * result.density_z1, result.grid)
    return result.inverted() if mean0 > mean1 else result
