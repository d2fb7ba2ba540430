"""Acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL verdict with the measured numbers;
``conftest.py`` prints the collected verdicts at the end of the session.
Run this file directly (``python3 tests/test_acceptance.py``) to get just
the verdict lines.
"""

from __future__ import annotations

import os
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest
from scipy import stats
from scipy.integrate import trapezoid

from purity_lens import (
    DiscreteConditional,
    GroupedSamples,
    antichain_bruteforce_m,
    discrete_pairwise_pure,
    estimate_dimension,
    purity_ratio,
    reconstruct_binary_cause,
    sperner_m,
)
from purity_lens.discrete import kwise_best_margin
from purity_lens.simulate import (
    AnmConfig,
    NoiseSpec,
    derive_seed,
    gen_direct,
    marginalization_config,
    run_fig3,
    run_fig4,
    run_fig5,
    run_marginalization,
)

VERDICTS: list[str] = []


def record(label: str, passed: bool, detail: str) -> bool:
    VERDICTS.append(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")
    return passed


# ------------------------------------------------------------ 1. Fig 3 (a)


def check_fig3():
    res = run_fig3(runs=200, master_seed=0)
    s = res.summary()
    frac = s["direct_fraction_below_threshold"]
    factor = s["confounded_median"] / s["direct_median"]
    ok = frac >= 0.70 and factor >= 2.0
    return record(
        "1 fig3 separation",
        ok,
        f"direct below 0.1: {frac:.1%} (need >= 70%), "
        f"median confounded/direct = {factor:.3g} (need >= 2)",
    )


def test_criterion_1_fig3_separation():
    assert check_fig3()


# ------------------------------------------------------------ 2. round trip


def _forward_model(seed: int, n: int = 2000):
    rng = np.random.default_rng(seed)
    groups = {}
    for label, alpha in (("a", 0.2), ("b", 0.8)):
        z = rng.random(n) < alpha
        groups[label] = np.where(z, rng.normal(6.0, 1.0, n), rng.normal(0.0, 1.0, n))
    return GroupedSamples(groups)


def roundtrip_errors(seed: int, n: int = 2000):
    """(max mixing error, L1 error of z0, L1 error of z1) after canonicalization."""
    res = reconstruct_binary_cause(_forward_model(seed, n))
    g = res.grid
    l1_0 = trapezoid(np.abs(res.density_z0 - stats.norm.pdf(g, 0, 1)), g)
    l1_1 = trapezoid(np.abs(res.density_z1 - stats.norm.pdf(g, 6, 1)), g)
    mix = max(abs(res.mixing["a"] - 0.2), abs(res.mixing["b"] - 0.8))
    return mix, l1_0, l1_1


def check_roundtrip():
    ok_count = 0
    worst = []
    for seed in range(20):
        mix, l0, l1 = roundtrip_errors(derive_seed(2, seed))
        good = mix <= 0.1 and l0 <= 0.3 and l1 <= 0.3
        ok_count += good
        worst.append(max(l0, l1))
    return record(
        "2 reconstruction round trip",
        ok_count >= 15,
        f"{ok_count}/20 seeds within tolerance (need >= 15); "
        f"median worst L1 = {np.median(worst):.3f}",
    )


def test_criterion_2_reconstruction_roundtrip():
    assert check_roundtrip()


# ------------------------------------------------------------ 3. Fig 5 anchors


def check_fig5():
    res = run_fig5(runs_per_level=100, master_seed=0)
    lv = {level: i for i, level in enumerate(res.corruption_levels)}
    ap, ac = res.auc_purity, res.auc_correlation
    checks = {
        "purity@0 near 0.5": abs(ap[lv[0.0]] - 0.5) < 0.1,
        "corr@0 near 0.5": abs(ac[lv[0.0]] - 0.5) < 0.1,
        "purity>corr@0.2": ap[lv[0.2]] > ac[lv[0.2]],
        "purity>corr@0.3": ap[lv[0.3]] > ac[lv[0.3]],
        "equal@0.5": abs(ap[lv[0.5]] - ac[lv[0.5]]) < 0.1,
    }
    failed = [k for k, v in checks.items() if not v]
    curve = ", ".join(
        f"{level:g}: {p:.3f}/{c:.3f}" for level, p, c in zip(res.corruption_levels, ap, ac)
    )
    detail = f"AUC purity/corr by level [{curve}]"
    if failed:
        detail += f"; failed anchors: {', '.join(failed)}"
    return record("3 fig5 anchors", not failed, detail)


def test_criterion_3_fig5_anchors():
    assert check_fig5()


# ------------------------------------------------------------ 4. Fig 4


def check_fig4():
    records = run_fig4(pairs=200, master_seed=0)
    strong = [r for r in records if r["r2"] > 0.5]
    causal = [r["neg_log_purity"] for r in strong if r["causal"]]
    noncausal = [r["neg_log_purity"] for r in strong if not r["causal"]]
    if not causal or not noncausal:
        return record("4 fig4 purity vs r2", False, "no pairs with r2 > 0.5 in one class")
    mc, mn = float(np.median(causal)), float(np.median(noncausal))
    return record(
        "4 fig4 purity vs r2",
        mn < mc,
        f"r2>0.5: median -log purity non-causal {mn:.3g} (n={len(noncausal)}) "
        f"vs causal {mc:.3g} (n={len(causal)})",
    )


def test_criterion_4_fig4_strongly_correlated_noncausal():
    assert check_fig4()


# ------------------------------------------------------------ 5. oracle equivalence


def random_small_conditional(rng) -> DiscreteConditional:
    """Random support pattern with integer weights 1..9 on the support."""
    rows = int(rng.integers(2, 5))
    cols = int(rng.integers(2, 6))
    mask = rng.random((rows, cols)) < 0.6
    for i in range(rows):
        if not mask[i].any():
            mask[i, rng.integers(cols)] = True
    weights = rng.integers(1, 10, size=(rows, cols)) * mask
    return DiscreteConditional.normalized(weights)


def check_oracle_equivalence():
    rng = np.random.default_rng(derive_seed(5, 0))
    agree = disagree = skipped = pure = 0
    for _ in range(300):
        cond = random_small_conditional(rng)
        margin = kwise_best_margin(cond, 2)
        if abs(margin) < 1e-6:
            skipped += 1
            continue
        exact = discrete_pairwise_pure(cond)
        pure += exact
        if exact == (margin < 0):
            agree += 1
        else:
            disagree += 1
    tested = agree + disagree
    return record(
        "5 oracle equivalence",
        disagree == 0 and tested >= 200,
        f"{agree}/{tested} agree ({pure} pure), {skipped} boundary cases excluded",
    )


def test_criterion_5_oracle_equivalence():
    assert check_oracle_equivalence()


# ------------------------------------------------------------ 6. combinatorics


def check_combinatorics():
    pairs = [(k, sperner_m(k), antichain_bruteforce_m(k)) for k in range(1, 6)]
    ok = all(a == b for _, a, b in pairs) and sperner_m(2) == 2
    return record(
        "6 antichain combinatorics",
        ok,
        "k: sperner/bruteforce " + ", ".join(f"{k}: {a}/{b}" for k, a, b in pairs),
    )


def test_criterion_6_combinatorics():
    assert check_combinatorics()


# ------------------------------------------------------------ 7. rank bounds


def binary_confounder_groups(seed: int, n: int = 1000, n_x: int = 4) -> GroupedSamples:
    rng = np.random.default_rng(seed)
    alphas = rng.uniform(0.0, 1.0, n_x)
    groups = {}
    for i, alpha in enumerate(alphas):
        z = rng.random(n) < alpha
        groups[i] = np.where(z, rng.normal(3.0, 1.0, n), rng.normal(0.0, 1.0, n))
    return GroupedSamples(groups)


def three_gaussians(seed: int, n: int = 1000) -> GroupedSamples:
    rng = np.random.default_rng(seed)
    return GroupedSamples({m: rng.normal(m, 1.0, n) for m in (0.0, 3.0, 6.0)})


def check_rank_bounds():
    low = sum(estimate_dimension(binary_confounder_groups(derive_seed(7, s))).rank <= 2 for s in range(50))
    full = sum(estimate_dimension(three_gaussians(derive_seed(7, 100 + s))).rank == 3 for s in range(50))
    return record(
        "7 rank bounds",
        low >= 45 and full >= 45,
        f"binary confounder rank <= 2 in {low}/50, three Gaussians rank 3 in {full}/50 (need >= 45)",
    )


def test_criterion_7_rank_bounds():
    assert check_rank_bounds()


# ------------------------------------------------------------ 8. controls


def check_cauchy_control():
    cfg = AnmConfig(noise=NoiseSpec.cauchy(1.0), n_samples=5000)
    ratios = [purity_ratio(gen_direct(cfg.with_seed(derive_seed(8, s)))).purity_ratio for s in range(50)]
    above = int(np.sum(np.asarray(ratios) > 0.1))
    return record(
        "8a cauchy negative control",
        above >= 40,
        f"purity ratio > 0.1 in {above}/50 (need >= 40); median {np.median(ratios):.3g}",
    )


def check_marginalization_control():
    ratios = [
        run_marginalization(marginalization_config(derive_seed(9, s))).report.purity_ratio
        for s in range(50)
    ]
    below = int(np.sum(np.asarray(ratios) < 0.1))
    return record(
        "8b marginalization positive control",
        below >= 40,
        f"purity ratio < 0.1 in {below}/50 (need >= 40); median {np.median(ratios):.3g}",
    )


def test_criterion_8a_cauchy_negative_control():
    assert check_cauchy_control()


def test_criterion_8b_marginalization_positive_control():
    assert check_marginalization_control()


# ------------------------------------------------------------ 9. determinism

_INVOCATIONS = [
    ["simulate", "direct", "--seed", "11", "--format", "csv"],
    ["simulate", "confounded", "--seed", "11"],
    ["simulate", "fig3", "--runs", "24", "--seed", "11", "--jobs", "4"],
    ["simulate", "fig5", "--runs", "12", "--levels", "0", "0.25", "0.5", "--seed", "11", "--jobs", "4"],
    ["simulate", "fig4", "--runs", "12", "--seed", "11", "--jobs", "4", "--format", "csv"],
    ["simulate", "marginalization", "--seed", "11"],
]


def _cli(args, out: Path) -> bytes:
    env = dict(os.environ)
    env.pop("PURITY_LENS_SEED", None)
    subprocess.run(
        [sys.executable, "-m", "purity_lens.cli", *args, "--output", str(out)],
        check=True, env=env, capture_output=True,
    )
    return out.read_bytes()


def check_determinism():
    mismatched = []
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        fixture = tmp / "fixture.csv"
        fixture.write_bytes(_cli(_INVOCATIONS[0], tmp / "gen.csv"))
        runs = list(_INVOCATIONS) + [
            ["purity", "--input", str(fixture)],
            ["dimension", "--input", str(fixture)],
            ["reconstruct", "--input", str(fixture.parent / "conf.csv")],
        ]
        (tmp / "conf.csv").write_bytes(
            _cli(["simulate", "confounded", "--seed", "11", "--format", "csv"], tmp / "c.csv")
        )
        for i, args in enumerate(runs):
            try:
                first = _cli(args, tmp / f"a{i}")
                second = _cli(args, tmp / f"b{i}")
            except subprocess.CalledProcessError as exc:
                if args[0] == "purity" and exc.returncode == 1:
                    continue
                raise
            if first != second:
                mismatched.append(" ".join(args))
        # parallel and sequential sweeps must agree byte for byte too
        seq = ["simulate", "fig3", "--runs", "24", "--seed", "11", "--jobs", "1"]
        if _cli(seq, tmp / "s1") != _cli(_INVOCATIONS[2], tmp / "s4"):
            mismatched.append("fig3 --jobs 1 vs --jobs 4")
    return record(
        "9 CLI determinism",
        not mismatched,
        f"{len(runs) + 1} invocation pairs compared"
        + (f"; differing: {mismatched}" if mismatched else ", all byte-identical"),
    )


@pytest.mark.slow
def test_criterion_9_cli_determinism():
    assert check_determinism()


CHECKS = [
    check_fig3,
    check_roundtrip,
    check_fig5,
    check_fig4,
    check_oracle_equivalence,
    check_combinatorics,
    check_rank_bounds,
    check_cauchy_control,
    check_marginalization_control,
    check_determinism,
]


if __name__ == "__main__":
    for check in CHECKS:
        check()
        print(VERDICTS[-1], flush=True)
