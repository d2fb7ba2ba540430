import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purity_lens import GroupedSamples, PurityLensError, estimate_densities, purity_ratio
from purity_lens.purity import pairwise_min_ratio, purity_from_densities, reduce_pair_ratios
from purity_lens.simulate import AnmConfig, gen_confounded, gen_direct


def brute_purity(dens):
    # direct ratios in linear space; fine for well-overlapping groups
    best = 0.0
    labels = dens.labels
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            ab = np.min(dens.curve(a) / dens.curve(b))
            ba = np.min(dens.curve(b) / dens.curve(a))
            best = max(best, min(ab, ba))
    return best


def test_identical_curves_ratio_one():
    x = np.random.default_rng(0).normal(size=300)
    data = GroupedSamples({"a": x, "b": x.copy()})
    dens = estimate_densities(data)
    assert pairwise_min_ratio(dens, "a", "b") == 1.0
    report = purity_ratio(data)
    assert report.purity_ratio == 1.0 and not report.is_pure_decision


def test_separated_gaussians_pure():
    rng = np.random.default_rng(1)
    dens = estimate_densities(GroupedSamples({"a": rng.normal(0, 1, 1000), "b": rng.normal(5, 1, 1000)}))
    assert pairwise_min_ratio(dens, "a", "b") < 0.1
    assert pairwise_min_ratio(dens, "b", "a") < 0.1


def test_overlapping_uniforms_not_pure():
    rng = np.random.default_rng(2)
    dens = estimate_densities(GroupedSamples({"a": rng.uniform(0, 1, 1000), "b": rng.uniform(0, 1, 1000)}))
    assert pairwise_min_ratio(dens, "a", "b") > 0.3


def test_unknown_label():
    dens = estimate_densities(GroupedSamples({"a": [0.0, 1.0, 2.0], "b": [1.0, 2.0, 4.0]}))
    with pytest.raises(PurityLensError, match="unknown label"):
        pairwise_min_ratio(dens, "a", "zzz")


@pytest.mark.parametrize("seed", range(5))
def test_reduction_matches_linear_space_oracle(seed):
    rng = np.random.default_rng(seed)
    data = GroupedSamples({k: rng.normal(0.3 * k, 1 + 0.1 * k, 150) for k in range(4)})
    dens = estimate_densities(data)
    report = purity_from_densities(dens)
    assert report.purity_ratio == pytest.approx(brute_purity(dens), rel=1e-9)
    assert report.purity_ratio == reduce_pair_ratios(report.pair_ratios)
    assert report.is_pure_decision == (report.purity_ratio < report.threshold)
    assert all(v > 0 for v in report.pair_ratios.values())


def test_reduce_pair_ratios_is_max_of_min():
    ratios = {("a", "b"): 0.5, ("b", "a"): 0.2, ("a", "c"): 0.01, ("c", "a"): 0.9,
              ("b", "c"): 0.3, ("c", "b"): 0.4}
    assert reduce_pair_ratios(ratios) == 0.3


def test_extreme_separation_stays_positive_and_finite():
    data = GroupedSamples({"a": np.linspace(0, 1, 50), "b": np.linspace(1000, 1001, 50)})
    report = purity_ratio(data)
    assert report.purity_ratio > 0 and np.isfinite(report.neg_log_ratio)
    assert report.neg_log_ratio > 700
    assert all(0 < v < np.inf for v in report.pair_ratios.values())


def test_direct_generator_is_pure():
    assert purity_ratio(gen_direct(AnmConfig(seed=0))).purity_ratio < 0.1


def test_confounded_higher_than_direct_on_seed_family():
    d = [purity_ratio(gen_direct(AnmConfig(seed=s))).purity_ratio for s in range(20)]
    c = [purity_ratio(gen_confounded(AnmConfig(seed=s))[0]).purity_ratio for s in range(20)]
    assert np.median(c) > np.median(d)


@settings(max_examples=15, deadline=None)
@given(
    scale=st.floats(0.01, 100.0),
    shift=st.floats(-100.0, 100.0),
    seed=st.integers(0, 1000),
)
def test_increasing_affine_map_invariance(scale, shift, seed):
    data = gen_direct(AnmConfig(seed=seed, n_samples=300))
    base = purity_ratio(data).purity_ratio
    moved = purity_ratio(data.map_values(lambda v: scale * v + shift)).purity_ratio
    assert abs(moved - base) < 1e-9


def test_label_order_invariance():
    rng = np.random.default_rng(3)
    data = GroupedSamples({k: rng.normal(i, 1, 200) for i, k in enumerate("abc")})
    base = purity_ratio(data).purity_ratio
    assert purity_ratio(data.reorder(["c", "a", "b"])).purity_ratio == base


def test_threshold_validation():
    dens = estimate_densities(GroupedSamples({"a": [0.0, 1.0, 2.0], "b": [1.0, 2.0, 4.0]}))
    with pytest.raises(PurityLensError):
        purity_from_densities(dens, threshold=0.0)


def test_report_dict_roundtrip_fields():
    report = purity_ratio(gen_direct(AnmConfig(seed=0)))
    d = report.to_dict()
    assert d["purity_ratio"] == report.purity_ratio
    assert d["is_pure"] is report.is_pure_decision
    assert len(d["pair_ratios"]) == 2 and d["grid_size"] == 201
