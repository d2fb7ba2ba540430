"""Additive-noise generators for the direct and confounded binary settings."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats

from ..exceptions import PurityLensError
from ..purity import DEFAULT_PURITY_THRESHOLD, PurityReport, purity_ratio
from ..samples import GroupedSamples

MAX_RETRIES = 10
MIN_GROUP_SIZE = 2


@dataclass(frozen=True)
class NoiseSpec:
    """Distribution of the additive noise E."""

    kind: str
    params: tuple

    @classmethod
    def gaussian(cls, sigma: float = 1.0) -> "NoiseSpec":
        return cls("gaussian", (float(sigma),))

    @classmethod
    def two_gaussian_mixture(
        cls, mu1=-2.0, sigma1=0.5, mu2=2.0, sigma2=0.5, weight=0.5
    ) -> "NoiseSpec":
        return cls("mixture", tuple(map(float, (mu1, sigma1, mu2, sigma2, weight))))

    @classmethod
    def cauchy(cls, scale: float = 1.0) -> "NoiseSpec":
        return cls("cauchy", (float(scale),))

    def __post_init__(self):
        if self.kind == "gaussian":
            ok = len(self.params) == 1 and self.params[0] > 0
        elif self.kind == "mixture":
            ok = (
                len(self.params) == 5
                and self.params[1] > 0
                and self.params[3] > 0
                and 0 < self.params[4] < 1
            )
        elif self.kind == "cauchy":
            ok = len(self.params) == 1 and self.params[0] > 0
        else:
            raise PurityLensError(f"unknown noise kind {self.kind!r}")
        if not ok:
            raise PurityLensError(f"invalid parameters {self.params} for {self.kind} noise")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "gaussian":
            return rng.normal(0.0, self.params[0], n)
        if self.kind == "cauchy":
            return self.params[0] * rng.standard_cauchy(n)
        mu1, s1, mu2, s2, w = self.params
        first = rng.random(n) < w
        return np.where(first, rng.normal(mu1, s1, n), rng.normal(mu2, s2, n))

    def pdf(self, e) -> np.ndarray:
        e = np.asarray(e, dtype=float)
        if self.kind == "gaussian":
            return stats.norm.pdf(e, 0.0, self.params[0])
        if self.kind == "cauchy":
            return stats.cauchy.pdf(e, 0.0, self.params[0])
        mu1, s1, mu2, s2, w = self.params
        return w * stats.norm.pdf(e, mu1, s1) + (1 - w) * stats.norm.pdf(e, mu2, s2)


@dataclass(frozen=True)
class AnmConfig:
    """Parameters of ``Y = w * X + E`` with ``w ~ N(0, weight_std**2)``.

    ``weight`` pins w to a fixed value instead of drawing it.
    """

    weight_std: float = 1.0
    noise: NoiseSpec = field(default_factory=NoiseSpec.two_gaussian_mixture)
    n_samples: int = 1000
    seed: int = 0
    weight: float | None = None

    def __post_init__(self):
        if not self.weight_std > 0:
            raise PurityLensError("weight_std must be positive")
        if self.n_samples < 2 * MIN_GROUP_SIZE:
            raise PurityLensError(f"n_samples must be at least {2 * MIN_GROUP_SIZE}")

    def with_seed(self, seed: int) -> "AnmConfig":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class HiddenTruth:
    """Unobserved parts of a confounded draw."""

    weight: float
    p_z1: float
    p_x0_given_z: tuple
    noise: NoiseSpec
    z_by_group: dict

    def density(self, z: int, points) -> np.ndarray:
        """True density of Y given Z=z."""
        return self.noise.pdf(np.asarray(points, dtype=float) - self.weight * z)

    def mixing(self) -> dict:
        """P(Z=1 | X=x) for x in {0, 1}."""
        a, b = self.p_x0_given_z
        p1 = self.p_z1
        px0 = a * (1 - p1) + b * p1
        return {0: b * p1 / px0, 1: (1 - b) * p1 / (1 - px0)}


def _draw_binary(rng: np.random.Generator, n: int) -> tuple[float, np.ndarray]:
    for _ in range(MAX_RETRIES + 1):
        p = rng.random()
        x = (rng.random(n) < p).astype(np.int64)
        if min(np.count_nonzero(x), n - np.count_nonzero(x)) >= MIN_GROUP_SIZE:
            return p, x
    raise PurityLensError(f"a group stayed empty after {MAX_RETRIES} retries")


def _weight(config: AnmConfig, rng: np.random.Generator) -> float:
    drawn = rng.normal(0.0, config.weight_std)
    return float(drawn if config.weight is None else config.weight)


def _group(x: np.ndarray, y: np.ndarray) -> GroupedSamples:
    return GroupedSamples({0: y[x == 0], 1: y[x == 1]})


def gen_direct(config: AnmConfig) -> GroupedSamples:
    """Sample the setting X -> Y with X ~ Bernoulli(p), p ~ U[0, 1]."""
    rng = np.random.default_rng(config.seed)
    _, x = _draw_binary(rng, config.n_samples)
    w = _weight(config, rng)
    y = w * x + config.noise.sample(rng, config.n_samples)
    return _group(x, y)


def gen_confounded(
    config: AnmConfig,
    transition_seed: int | None = None,
    transition: tuple | None = None,
) -> tuple[GroupedSamples, HiddenTruth]:
    """Sample X <- Z -> Y with a binary latent Z.

    ``transition`` fixes ``(P(X=0|Z=0), P(X=0|Z=1))``; otherwise both are
    drawn uniformly, from ``transition_seed``'s stream if given.
    """
    rng = np.random.default_rng(config.seed)
    trng = rng if transition_seed is None else np.random.default_rng(transition_seed)
    n = config.n_samples
    for _ in range(MAX_RETRIES + 1):
        p_z1, z = _draw_binary(rng, n)
        if transition is None:
            a, b = float(trng.random()), float(trng.random())
        else:
            a, b = map(float, transition)
        p_x0 = np.where(z == 0, a, b)
        x = (rng.random(n) >= p_x0).astype(np.int64)
        if min(np.count_nonzero(x), n - np.count_nonzero(x)) >= MIN_GROUP_SIZE:
            break
    else:
        raise PurityLensError(f"a group stayed empty after {MAX_RETRIES} retries")
    w = _weight(config, rng)
    y = w * z + config.noise.sample(rng, n)
    truth = HiddenTruth(
        weight=w,
        p_z1=float(p_z1),
        p_x0_given_z=(a, b),
        noise=config.noise,
        z_by_group={0: z[x == 0], 1: z[x == 1]},
    )
    return _group(x, y), truth


@dataclass(frozen=True)
class MarginalizationResult:
    report: PurityReport
    weights: tuple


def marginalization_config(seed: int = 0) -> AnmConfig:
    """Default setting for the marginalization control: Gaussian noise, sd 0.5."""
    return AnmConfig(noise=NoiseSpec.gaussian(0.5), seed=seed)


def run_marginalization(
    config: AnmConfig | None = None,
    n_vars: int = 3,
    grid_size: int = 201,
    threshold: float = DEFAULT_PURITY_THRESHOLD,
) -> MarginalizationResult:
    """Purity of P(Y|X1) in ``Y = sum_j w_j X_j + E`` with X2..Xn unobserved.

    X1 is Bernoulli; each hidden X_j given X1 is Bernoulli with a success
    probability in [0.1, 0.9], so P(X2..Xn | X1) is strictly positive.
    """
    if n_vars < 2:
        raise PurityLensError("marginalization needs at least 2 variables")
    if config is None:
        config = marginalization_config()
    rng = np.random.default_rng(config.seed)
    n = config.n_samples
    _, x1 = _draw_binary(rng, n)
    q = rng.uniform(0.1, 0.9, size=(n_vars - 1, 2))
    hidden = (rng.random((n_vars - 1, n)) < q[:, x1]).astype(np.int64)
    w = rng.normal(0.0, config.weight_std, n_vars)
    if config.weight is not None:
        w[0] = config.weight
    y = w[0] * x1 + w[1:] @ hidden + config.noise.sample(rng, n)
    report = purity_ratio(_group(x1, y), grid_size=grid_size, threshold=threshold)
    return MarginalizationResult(report=report, weights=tuple(float(v) for v in w))
