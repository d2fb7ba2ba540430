import numpy as np
import pytest
from scipy import stats
from scipy.integrate import trapezoid

from purity_lens import (
    DegenerateAnchorError,
    GroupedSamples,
    NoBoundaryError,
    canonicalize,
    reconstruct_binary_cause,
)
from purity_lens.reconstruct import find_boundary_mu
from purity_lens.simulate import AnmConfig, NoiseSpec, gen_confounded


def forward(seed, alphas=(0.2, 0.8), n=2000, means=(0.0, 6.0)):
    rng = np.random.default_rng(seed)
    groups = {}
    for i, alpha in enumerate(alphas):
        z = rng.random(n) < alpha
        groups[f"x{i}"] = np.where(z, rng.normal(means[1], 1, n), rng.normal(means[0], 1, n))
    return GroupedSamples(groups)


def l1(res, means=(0.0, 6.0)):
    g = res.grid
    return (
        trapezoid(np.abs(res.density_z0 - stats.norm.pdf(g, means[0], 1)), g),
        trapezoid(np.abs(res.density_z1 - stats.norm.pdf(g, means[1], 1)), g),
    )


def test_two_point_boundary():
    a, b = np.array([0.6, 0.4]), np.array([0.4, 0.6])
    assert find_boundary_mu(a, b, +1) == pytest.approx(3.0)
    assert find_boundary_mu(a, b, -1) == pytest.approx(-2.0)


def test_near_vertex_curves():
    eps = 1e-6
    a, b = np.array([1.0, eps]), np.array([eps, 1.0])
    assert find_boundary_mu(a, b, +1) == pytest.approx(1.0, abs=1e-5)
    assert find_boundary_mu(a, b, -1) == pytest.approx(0.0, abs=1e-5)


def test_boundary_direction_flip():
    rng = np.random.default_rng(0)
    a, b = rng.random(30) + 0.01, rng.random(30) + 0.01
    assert find_boundary_mu(a, b, +1) == pytest.approx(1 - find_boundary_mu(b, a, -1))
    assert find_boundary_mu(a, b, -1) == pytest.approx(1 - find_boundary_mu(b, a, +1))


def test_boundary_keeps_line_nonnegative():
    rng = np.random.default_rng(1)
    a, b = rng.random(50) + 0.01, rng.random(50) + 0.01
    for mu in (find_boundary_mu(a, b, +1), find_boundary_mu(a, b, -1)):
        line = mu * a + (1 - mu) * b
        assert line.min() >= -1e-12 and line.min() <= 1e-12


def test_pointwise_ordered_curves_give_infinite_sentinel():
    a, b = np.array([0.5, 0.5]), np.array([0.6, 0.7])
    assert find_boundary_mu(a, b, -1) == -np.inf
    assert find_boundary_mu(b, a, +1) == np.inf


def test_identical_curves_degenerate():
    with pytest.raises(DegenerateAnchorError, match="degenerate anchor pair"):
        find_boundary_mu(np.ones(5), np.ones(5), +1)
    with pytest.raises(ValueError):
        find_boundary_mu(np.ones(2), np.array([1.0, 2.0]), 0)


def test_identical_groups_degenerate():
    x = np.random.default_rng(2).normal(size=300)
    with pytest.raises(DegenerateAnchorError):
        reconstruct_binary_cause(GroupedSamples({"a": x, "b": x.copy()}))


@pytest.mark.parametrize("seed", range(5))
def test_forward_model_round_trip(seed):
    res = reconstruct_binary_cause(forward(seed))
    assert res.mixing["x0"] == pytest.approx(0.2, abs=0.1)
    assert res.mixing["x1"] == pytest.approx(0.8, abs=0.1)
    assert max(l1(res)) <= 0.3


def test_group_at_boundary_density():
    rng = np.random.default_rng(3)
    data = forward(3, alphas=(0.3, 0.9))
    groups = dict(data.groups)
    groups["pure0"] = rng.normal(0, 1, 2000)
    res = reconstruct_binary_cause(GroupedSamples(groups))
    assert res.mixing["pure0"] == pytest.approx(0.0, abs=0.1)


@pytest.mark.parametrize("seed", range(4))
def test_result_invariants(seed):
    res = reconstruct_binary_cause(forward(seed, alphas=(0.1, 0.5, 0.7), n=800))
    assert res.mu0 >= 1 and res.mu1 <= 0
    for d in (res.density_z0, res.density_z1):
        assert np.all(d >= 0)
        assert trapezoid(d, res.grid) == pytest.approx(1.0, abs=0.15)
    assert all(0 <= a <= 1 for a in res.mixing.values())


@pytest.mark.parametrize("seed", range(4))
def test_self_consistency(seed):
    data = forward(seed, alphas=(0.1, 0.5, 0.7), n=800)
    res = reconstruct_binary_cause(data)
    # compare against curves on the same shared bandwidth the method uses
    from purity_lens.kde import estimate_densities, silverman_bandwidth
    dens = estimate_densities(data, bandwidth_override=silverman_bandwidth(data.pooled()))
    for label in data.labels:
        curve = dens.curve(label)
        r_mix = res.residuals[label]
        assert r_mix <= np.linalg.norm(curve - res.density_z0) + 1e-12
        assert r_mix <= np.linalg.norm(curve - res.density_z1) + 1e-12


def test_canonical_form_and_inversion():
    res = reconstruct_binary_cause(forward(4))
    mean = lambda d: trapezoid(res.grid * d, res.grid)  # noqa: E731
    assert mean(res.density_z0) < mean(res.density_z1)
    assert canonicalize(res) is res
    inv = res.inverted()
    assert inv.mixing == {k: 1 - v for k, v in res.mixing.items()}
    again = canonicalize(inv)
    np.testing.assert_array_equal(again.density_z0, res.density_z0)
    assert again.mixing == pytest.approx(res.mixing)


def test_pointwise_ordered_groups_raise_no_boundary():
    # on a two-point grid the group with mass between the points sits below the other
    data = GroupedSamples({"a": [0.0, 1.0], "b": [0.0, 0.5, 1.0]})
    with pytest.raises(NoBoundaryError, match="no simplex boundary"):
        reconstruct_binary_cause(data, grid_size=2, bandwidth=0.01, boundary_smoothing=1.0)


def test_confounded_generator_round_trip():
    cfg = AnmConfig(noise=NoiseSpec.gaussian(1.0), weight=6.0, n_samples=4000, seed=5)
    data, truth = gen_confounded(cfg, transition=(0.9, 0.2))
    res = reconstruct_binary_cause(data)
    expected = truth.mixing()
    for label in data.labels:
        assert res.mixing[label] == pytest.approx(expected[label], abs=0.1)
    g = res.grid
    assert trapezoid(np.abs(res.density_z1 - truth.density(1, g)), g) < 0.3


@pytest.mark.slow
def test_error_shrinks_with_sample_size():
    medians = []
    for n in (500, 2000, 8000):
        errs = [max(l1(reconstruct_binary_cause(forward(100 + s, n=n)))) for s in range(20)]
        medians.append(np.median(errs))
    assert medians[0] >= medians[1] >= medians[2], medians


def test_dict_output():
    d = reconstruct_binary_cause(forward(6, n=500)).to_dict()
    assert set(d) == {"anchor_pair", "mu0", "mu1", "mixing", "residuals", "grid", "density_z0", "density_z1"}
    assert len(d["grid"]) == len(d["density_z0"]) == 201
