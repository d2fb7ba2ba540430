"""Exact purity oracles for conditionals with finite X and finite Y.

``discrete_pairwise_pure`` uses the support criterion; the brute-force
search works directly from the affine-combination definition and serves as
an independent, one-sided check: it can only disprove purity inside its
bounded coefficient box.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .exceptions import BudgetExceededError, PurityLensError

SUPPORT_EPS = 1e-12
LAMBDA_BOX = 5.0
DEFAULT_BUDGET = 10_000_000
_BOX_TOL = 1e-9
_CHUNK = 1 << 16


@dataclass(frozen=True)
class DiscreteConditional:
    """Row-stochastic table p(y|x): one row per x, one column per y."""

    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=float)
        if t.ndim != 2 or t.shape[0] < 2 or t.shape[1] < 2:
            raise PurityLensError("conditional table needs at least 2 rows and 2 columns")
        if not np.all(np.isfinite(t)) or np.any(t < 0):
            raise PurityLensError("conditional table entries must be finite and nonnegative")
        sums = t.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > 1e-12)
        if bad.size:
            raise PurityLensError(f"row {int(bad[0])} sums to {sums[bad[0]]!r}, not 1")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def normalized(cls, weights) -> "DiscreteConditional":
        w = np.asarray(weights, dtype=float)
        return cls(w / w.sum(axis=1, keepdims=True))

    @property
    def n_rows(self) -> int:
        return self.table.shape[0]

    @property
    def n_cols(self) -> int:
        return self.table.shape[1]

    def supports(self) -> np.ndarray:
        return self.table > SUPPORT_EPS


def discrete_pairwise_pure(cond: DiscreteConditional) -> bool:
    """True iff no row's support is contained in another row's support."""
    supp = cond.supports()
    for i in range(cond.n_rows):
        for j in range(cond.n_rows):
            if i != j and not np.any(supp[i] & ~supp[j]):
                return False
    return True


def _lambda_grid(resolution: int) -> np.ndarray:
    return np.linspace(-LAMBDA_BOX, 1.0 + LAMBDA_BOX, resolution)


def kwise_best_margin(
    cond: DiscreteConditional,
    k: int,
    lambda_resolution: int = 1001,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """Largest value of ``min_y sum_j lambda_j p(y|x_j)`` found by grid search.

    The search runs over every k-subset of rows and every grid point of the
    affine coefficients outside the unit box. Only columns in the union of
    the subset's supports are scored, since the rest are zero for any
    coefficients. A margin >= 0 means a valid non-convex mixture was found.
    """
    if not 2 <= k <= cond.n_rows:
        raise PurityLensError(f"k must be between 2 and the number of rows ({cond.n_rows})")
    if lambda_resolution < 10:
        raise PurityLensError("lambda_resolution must be at least 10")
    n_subsets = comb(cond.n_rows, k)
    work = n_subsets * lambda_resolution ** (k - 1)
    if work > budget:
        raise BudgetExceededError(
            f"brute-force search needs {work} evaluations, budget is {budget}"
        )

    axis = _lambda_grid(lambda_resolution)
    best = -np.inf
    for rows in combinations(range(cond.n_rows), k):
        sub = cond.table[list(rows)]
        cols = np.any(sub > SUPPORT_EPS, axis=0)
        sub = sub[:, cols]
        # blocks along the first free coordinate bound memory
        rest = (
            np.stack(np.meshgrid(*([axis] * (k - 2)), indexing="ij"), axis=-1).reshape(-1, k - 2)
            if k > 2
            else np.empty((1, 0))
        )
        step = max(1, _CHUNK // len(rest))
        for start in range(0, axis.size, step):
            first = axis[start : start + step]
            free = np.column_stack([np.repeat(first, len(rest)), np.tile(rest, (first.size, 1))])
            lam = np.column_stack([free, 1.0 - free.sum(axis=1)])
            inside = np.all((lam >= -_BOX_TOL) & (lam <= 1.0 + _BOX_TOL), axis=1)
            lam = lam[~inside]
            if lam.size == 0:
                continue
            values = (lam @ sub).min(axis=1)
            best = max(best, float(values.max()))
    return best


def discrete_kwise_pure_bruteforce(
    cond: DiscreteConditional,
    k: int,
    lambda_resolution: int = 1001,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """k-wise purity by exhaustive coefficient search in the box [-5, 6]^k.

    Returns False as soon as some coefficient vector outside [0, 1]^k keeps
    every probability nonnegative. A True result is only as strong as the
    grid: mixtures with coefficients finer than the grid step are missed.
    """
    return kwise_best_margin(cond, k, lambda_resolution, budget) < -SUPPORT_EPS


def sperner_m(k: int) -> int:
    """Largest antichain of non-empty subsets of a k-set: C(k, floor(k/2))."""
    if not 1 <= k <= 62:
        raise PurityLensError("sperner_m is defined here for 1 <= k <= 62")
    return comb(k, k // 2)


def antichain_bruteforce_m(k: int) -> int:
    """Largest antichain of non-empty subsets of {1..k}, by exhaustive search.

    Branch and bound over subsets encoded as bitmasks; exact but exponential,
    so restricted to k <= 5.
    """
    if not 1 <= k <= 5:
        raise PurityLensError("antichain_bruteforce_m supports 1 <= k <= 5")
    subsets = list(range(1, 1 << k))

    def comparable(a, b):
        return (a & b) == a or (a & b) == b

    best = 0

    def search(chosen: int, candidates: list):
        nonlocal best
        if chosen + len(candidates) <= best:
            return
        if not candidates:
            best = chosen
            return
        head, tail = candidates[0], candidates[1:]
        search(chosen + 1, [c for c in tail if not comparable(head, c)])
        search(chosen, tail)

    search(0, subsets)
    return best
