"""Dimension of span{P(Y|x)} from the Gram matrix of kernel mean embeddings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import PurityLensError
from .samples import GroupedSamples

DEFAULT_RANK_THRESHOLD = 1e-2
MEDIAN_SUBSAMPLE = 2000
_ROW_BLOCK = 512


@dataclass(frozen=True)
class GramMatrix:
    labels: list
    entries: np.ndarray
    kernel_bandwidth: float


@dataclass(frozen=True)
class RankEstimate:
    eigenvalues: np.ndarray
    rank: int
    relative_threshold: float
    min_raw_eigenvalue: float = 0.0
    kernel_bandwidth: float | None = None

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "relative_threshold": self.relative_threshold,
            "min_raw_eigenvalue": self.min_raw_eigenvalue,
            "kernel_bandwidth": self.kernel_bandwidth,
        }


def median_heuristic_bandwidth(data: GroupedSamples) -> float:
    """Median pairwise distance of the pooled y-values.

    Uses every ``ceil(N / 2000)``-th pooled point so the cost stays bounded.
    If more than half of the distances are ties at zero, the median of the
    positive distances is used.
    """
    pooled = data.pooled() if isinstance(data, GroupedSamples) else np.asarray(data, float)
    stride = max(1, -(-pooled.size // MEDIAN_SUBSAMPLE))
    sub = pooled[::stride]
    if sub.size < 2 or np.all(sub == sub[0]):
        raise PurityLensError("median heuristic needs at least 2 distinct values")
    i, j = np.triu_indices(sub.size, k=1)
    dist = np.abs(sub[i] - sub[j])
    med = float(np.median(dist))
    if med > 0:
        return med
    return float(np.median(dist[dist > 0]))


def _mean_kernel(a: np.ndarray, b: np.ndarray, bandwidth: float) -> float:
    scale = -0.5 / bandwidth**2
    total = 0.0
    # fixed block order keeps the sum bit-stable across runs
    for start in range(0, a.size, _ROW_BLOCK):
        block = a[start : start + _ROW_BLOCK, None] - b[None, :]
        total += float(np.exp(scale * block * block).sum())
    return total / (a.size * b.size)


def gram_matrix(data: GroupedSamples, bandwidth: float) -> GramMatrix:
    """Inner products of empirical mean embeddings under a Gaussian kernel."""
    if not bandwidth > 0:
        raise PurityLensError("kernel bandwidth must be positive")
    labels = data.labels
    m = len(labels)
    entries = np.empty((m, m))
    for i in range(m):
        for j in range(i, m):
            v = _mean_kernel(data[labels[i]], data[labels[j]], bandwidth)
            entries[i, j] = entries[j, i] = v
    return GramMatrix(labels=labels, entries=entries, kernel_bandwidth=float(bandwidth))


def jacobi_eigh(matrix, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as columns, like ``numpy.linalg.eigh``.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 0:
        return np.empty(0), v
    scale = np.abs(a).max()
    if scale == 0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    # theta**2 would overflow; t -> 1 / (2 theta)
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J for the rotation in the (p, q) plane
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise PurityLensError("Jacobi iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def estimate_rank(gram, relative_threshold: float = DEFAULT_RANK_THRESHOLD) -> RankEstimate:
    """Count eigenvalues above ``relative_threshold * largest eigenvalue``."""
    if not relative_threshold > 0:
        raise PurityLensError("relative_threshold must be positive")
    if isinstance(gram, GramMatrix):
        entries, bandwidth = gram.entries, gram.kernel_bandwidth
    else:
        entries, bandwidth = np.asarray(gram, dtype=float), None
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise PurityLensError("Gram matrix must be square")
    tol = 1e-12 * max(1.0, float(np.abs(entries).max(initial=0.0)))
    if np.any(np.abs(entries - entries.T) > tol):
        raise PurityLensError("Gram matrix is not symmetric")
    raw, _ = jacobi_eigh(entries)
    raw = raw[::-1]
    clipped = np.clip(raw, 0.0, None)
    lam_max = float(clipped[0]) if clipped.size else 0.0
    rank = int(np.sum(clipped > relative_threshold * lam_max)) if lam_max > 0 else 0
    return RankEstimate(
        eigenvalues=clipped,
        rank=rank,
        relative_threshold=relative_threshold,
        min_raw_eigenvalue=float(raw[-1]) if raw.size else 0.0,
        kernel_bandwidth=bandwidth,
    )


def estimate_dimension(
    data: GroupedSamples,
    relative_threshold: float = DEFAULT_RANK_THRESHOLD,
    bandwidth: float | None = None,
) -> RankEstimate:
    """Median-heuristic kernel, Gram matrix, then thresholded rank."""
    h = median_heuristic_bandwidth(data) if bandwidth is None else bandwidth
    return estimate_rank(gram_matrix(data, h), relative_threshold)
