"""Command-line front end.

Exit codes
----------
0   success (for ``purity``: the conditional was judged pure)
1   ``purity`` only: the conditional was judged not pure
2   usage, input or computation error
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .dimension import DEFAULT_RANK_THRESHOLD, estimate_dimension
from .discrete import (
    discrete_kwise_pure_bruteforce,
    discrete_pairwise_pure,
    kwise_best_margin,
    sperner_m,
)
from .exceptions import PurityLensError
from .fileio import dumps_csv, dumps_json, read_matrix_csv, read_xy_csv
from .kde import BANDWIDTH_METHODS, DEFAULT_GRID_SIZE
from .purity import DEFAULT_PURITY_THRESHOLD, purity_ratio
from .reconstruct import canonicalize, reconstruct_binary_cause
from .simulate import (
    DEFAULT_LEVELS,
    AnmConfig,
    GeneticsConfig,
    NoiseSpec,
    gen_confounded,
    gen_direct,
    run_fig3,
    run_fig4,
    run_fig5,
    run_marginalization,
)

EXIT_OK, EXIT_NOT_PURE, EXIT_ERROR = 0, 1, 2
SEED_ENV = "PURITY_LENS_SEED"
SCENARIOS = ("direct", "confounded", "fig3", "fig4", "fig5", "marginalization")
ORACLES = ("discrete-purity", "kwise", "m")
FULL_RUNS = 1000


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    fmt: str = "json"
    seed: int = 0
    grid_size: int = DEFAULT_GRID_SIZE
    purity_threshold: float = DEFAULT_PURITY_THRESHOLD
    rank_threshold: float = DEFAULT_RANK_THRESHOLD
    runs: int | None = None
    jobs: int = 1
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.purity_threshold > 0:
            raise PurityLensError("--purity-threshold must be positive")
        if not self.rank_threshold > 0:
            raise PurityLensError("--rank-threshold must be positive")
        if self.grid_size < 2:
            raise PurityLensError("--grid-size must be at least 2")
        if self.jobs < 1:
            raise PurityLensError("--jobs must be at least 1")
        if self.runs is not None and self.runs < 1:
            raise PurityLensError("--runs must be at least 1")


def _seed_from_env() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise PurityLensError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--input", "-i", help="input CSV file ('-' for stdin)")
    g.add_argument("--output", "-o", help="write the report here instead of stdout")
    g.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json",
                   help="report format (default: json)")
    g.add_argument("--seed", type=int, default=None,
                   help=f"master seed; falls back to ${SEED_ENV}, then 0")
    g.add_argument("--grid-size", type=int, default=DEFAULT_GRID_SIZE,
                   help=f"evaluation grid points (default: {DEFAULT_GRID_SIZE})")
    g.add_argument("--purity-threshold", type=float, default=DEFAULT_PURITY_THRESHOLD,
                   help=f"purity ratio below which X->Y is called pure (default: {DEFAULT_PURITY_THRESHOLD})")
    g.add_argument("--rank-threshold", type=float, default=DEFAULT_RANK_THRESHOLD,
                   help=f"relative eigenvalue cut-off for the rank (default: {DEFAULT_RANK_THRESHOLD})")
    g.add_argument("--runs", type=int, default=None,
                   help="runs (fig3) or pairs per class (fig4, fig5); default 200")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps (default: 1)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="purity-lens",
        description="Purity tests, dimension estimates and latent-cause reconstruction "
                    "for conditionals P(Y|X) with discrete X.",
        epilog="exit codes: 0 ok / pure, 1 not pure (purity only), 2 error. "
               f"Randomness comes only from --seed (or ${SEED_ENV}).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("purity", parents=[common], help="purity ratio of P(Y|X) from an x,y CSV",
                       description="Exit 0 if pure, 1 if not pure, 2 on error.")
    p.add_argument("--bandwidth-method", choices=BANDWIDTH_METHODS, default="silverman",
                   help="per-group KDE bandwidth rule (default: silverman)")
    p.add_argument("--bandwidth", type=float, default=None,
                   help="fixed KDE bandwidth for every group")

    p = sub.add_parser("dimension", parents=[common], help="rank of the kernel Gram matrix")
    p.add_argument("--kernel-bandwidth", type=float, default=None,
                   help="Gaussian kernel width (default: median heuristic)")

    p = sub.add_parser("reconstruct", parents=[common],
                       help="reconstruct a binary latent cause Z from an x,y CSV")
    p.add_argument("--bandwidth", type=float, default=None,
                   help="shared KDE bandwidth (default: Silverman on the pooled sample)")

    p = sub.add_parser("simulate", parents=[common], help="run a seeded simulation scenario")
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--full", action="store_true", help=f"use {FULL_RUNS} runs / pairs per class")
    p.add_argument("--n-samples", type=int, default=None,
                   help="samples per draw (direct/confounded/fig3/marginalization: 1000; "
                        "fig4/fig5: 1200 individuals)")
    p.add_argument("--weight-std", type=float, default=1.0, help="std of the effect weight w")
    p.add_argument("--weight", type=float, default=None, help="fix w instead of drawing it")
    p.add_argument("--noise", choices=("mixture", "gaussian", "cauchy"), default=None,
                   help="noise family (default: mixture; gaussian for marginalization)")
    p.add_argument("--noise-scale", type=float, default=None,
                   help="sigma of gaussian noise / scale of cauchy noise "
                        "(genetics default 0.25, marginalization default 0.5)")
    p.add_argument("--n-vars", type=int, default=3, help="marginalization: number of causes")
    p.add_argument("--levels", type=float, nargs="+", default=None,
                   help="fig5 corruption levels (default: 0 0.1 0.2 0.3 0.4 0.5)")
    p.add_argument("--n-snps", type=int, default=2000, help="genetics: SNP columns")
    p.add_argument("--linkage-flip-prob", type=float, default=0.05,
                   help="genetics: flip probability between adjacent SNPs")
    p.add_argument("--far-distance", type=int, default=1000,
                   help="fig5: minimum column distance of the second locus")
    p.add_argument("--far-corruption", type=float, default=0.1,
                   help="fig5: corruption of the second locus in causal pairs")
    p.add_argument("--bins", type=int, default=20, help="fig3: histogram bins on [0, 1]")
    p.add_argument("--records", action="store_true", help="fig5: include per-pair records")

    p = sub.add_parser("oracle", parents=[common], help="exact checks on discrete conditionals")
    p.add_argument("kind", choices=ORACLES)
    p.add_argument("k", nargs="?", type=int, help="kwise: order k; m: alphabet size k")
    p.add_argument("--resolution", type=int, default=1001, help="kwise: lambda grid points")
    return parser


def _config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else _seed_from_env()
    skip = {"command", "input", "output", "fmt", "seed", "grid_size", "purity_threshold",
            "rank_threshold", "runs", "jobs"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(
        command=args.command, input=args.input, output=args.output, fmt=args.fmt, seed=seed,
        grid_size=args.grid_size, purity_threshold=args.purity_threshold,
        rank_threshold=args.rank_threshold, runs=args.runs, jobs=args.jobs, params=params,
    )


def _read_input(cfg: RunConfig, reader):
    if cfg.input is None:
        raise PurityLensError(f"{cfg.command} needs --input")
    if cfg.input == "-":
        return reader(sys.stdin)
    try:
        return reader(cfg.input)
    except OSError as exc:
        raise PurityLensError(f"cannot read {cfg.input}: {exc.strerror}") from None


# ------------------------------------------------------------------ commands


def cmd_purity(cfg: RunConfig):
    data = _read_input(cfg, read_xy_csv)
    report = purity_ratio(
        data,
        grid_size=cfg.grid_size,
        threshold=cfg.purity_threshold,
        bandwidth_method=cfg.params.get("bandwidth_method", "silverman"),
        bandwidth_override=cfg.params.get("bandwidth"),
    )
    code = EXIT_OK if report.is_pure_decision else EXIT_NOT_PURE
    if cfg.fmt == "csv":
        rows = [(str(a), str(b), r) for (a, b), r in report.pair_ratios.items()]
        return dumps_csv(["x", "x_prime", "min_ratio"], rows), code
    return dumps_json(report.to_dict()), code


def cmd_dimension(cfg: RunConfig):
    data = _read_input(cfg, read_xy_csv)
    est = estimate_dimension(data, cfg.rank_threshold, bandwidth=cfg.params.get("kernel_bandwidth"))
    if cfg.fmt == "csv":
        rows = [(i, v) for i, v in enumerate(est.eigenvalues)]
        return dumps_csv(["index", "eigenvalue"], rows), EXIT_OK
    out = {"labels": [str(v) for v in data.labels]}
    out.update(est.to_dict())
    return dumps_json(out), EXIT_OK


def cmd_reconstruct(cfg: RunConfig):
    data = _read_input(cfg, read_xy_csv)
    result = canonicalize(
        reconstruct_binary_cause(data, grid_size=cfg.grid_size, bandwidth=cfg.params.get("bandwidth"))
    )
    if cfg.fmt == "csv":
        rows = zip(result.grid.tolist(), result.density_z0.tolist(), result.density_z1.tolist())
        return dumps_csv(["y", "density_z0", "density_z1"], rows), EXIT_OK
    return dumps_json(result.to_dict()), EXIT_OK


def _noise(params, default_kind: str, default_scale: float) -> NoiseSpec:
    kind = params.get("noise") or default_kind
    scale = params.get("noise_scale")
    if kind == "mixture":
        if scale is not None:
            raise PurityLensError("--noise-scale does not apply to mixture noise")
        return NoiseSpec.two_gaussian_mixture()
    scale = default_scale if scale is None else scale
    return NoiseSpec.gaussian(scale) if kind == "gaussian" else NoiseSpec.cauchy(scale)


def _anm_config(cfg: RunConfig, default_kind="mixture", default_scale=1.0) -> AnmConfig:
    p = cfg.params
    return AnmConfig(
        weight_std=p.get("weight_std", 1.0),
        noise=_noise(p, default_kind, default_scale),
        n_samples=p.get("n_samples") or 1000,
        seed=cfg.seed,
        weight=p.get("weight"),
    )


def _genetics_config(cfg: RunConfig) -> GeneticsConfig:
    p = cfg.params
    if p.get("noise") not in (None, "gaussian"):
        raise PurityLensError("genetics scenarios use gaussian noise only")
    kwargs = dict(
        n_snps=p.get("n_snps", 2000),
        linkage_flip_prob=p.get("linkage_flip_prob", 0.05),
        weight_std=p.get("weight_std", 1.0),
        far_distance=p.get("far_distance", 1000),
        far_corruption=p.get("far_corruption", 0.1),
        grid_size=cfg.grid_size,
    )
    if p.get("n_samples"):
        kwargs["n_samples"] = p["n_samples"]
    if p.get("noise_scale") is not None:
        kwargs["noise_sigma"] = p["noise_scale"]
    return GeneticsConfig(**kwargs)


def _runs(cfg: RunConfig) -> int:
    if cfg.params.get("full"):
        return FULL_RUNS
    return cfg.runs if cfg.runs is not None else 200


def _sample_output(cfg, data, extra):
    if cfg.fmt == "csv":
        rows = [(str(label), float(v)) for label in data.labels for v in data[label]]
        return dumps_csv(["x", "y"], rows)
    out = {"scenario": cfg.params["scenario"], "seed": cfg.seed}
    out.update(extra)
    out["groups"] = {str(label): data[label] for label in data.labels}
    return dumps_json(out)


def cmd_simulate(cfg: RunConfig):
    scenario = cfg.params["scenario"]
    if scenario == "direct":
        return _sample_output(cfg, gen_direct(_anm_config(cfg)), {}), EXIT_OK
    if scenario == "confounded":
        data, truth = gen_confounded(_anm_config(cfg))
        extra = {"truth": {
            "weight": truth.weight,
            "p_z1": truth.p_z1,
            "p_x0_given_z": list(truth.p_x0_given_z),
            "mixing": {str(k): v for k, v in truth.mixing().items()},
        }}
        return _sample_output(cfg, data, extra), EXIT_OK
    if scenario == "marginalization":
        res = run_marginalization(
            _anm_config(cfg, "gaussian", 0.5),
            n_vars=cfg.params.get("n_vars", 3),
            grid_size=cfg.grid_size,
            threshold=cfg.purity_threshold,
        )
        if cfg.fmt == "csv":
            rows = [(res.report.purity_ratio, res.report.neg_log_ratio, res.report.is_pure_decision)]
            return dumps_csv(["purity_ratio", "neg_log_purity_ratio", "is_pure"], rows), EXIT_OK
        out = {"scenario": scenario, "seed": cfg.seed, "weights": list(res.weights)}
        out.update(res.report.to_dict())
        return dumps_json(out), EXIT_OK
    if scenario == "fig3":
        res = run_fig3(
            runs=_runs(cfg), config=_anm_config(cfg), master_seed=cfg.seed, jobs=cfg.jobs,
            grid_size=cfg.grid_size, threshold=cfg.purity_threshold, bins=cfg.params.get("bins", 20),
        )
        d = res.to_dict()
        if cfg.fmt == "csv":
            h0, h1 = d["histogram_direct"], d["histogram_confounded"]
            rows = [(h0["edges"][i], h0["edges"][i + 1], h0["counts"][i], h1["counts"][i])
                    for i in range(len(h0["counts"]))]
            return dumps_csv(["bin_left", "bin_right", "count_direct", "count_confounded"], rows), EXIT_OK
        return dumps_json(d), EXIT_OK
    if scenario == "fig4":
        records = run_fig4(pairs=_runs(cfg), config=_genetics_config(cfg),
                           master_seed=cfg.seed, jobs=cfg.jobs)
        if cfg.fmt == "csv":
            rows = [(r["r2"], r["neg_log_purity"], int(r["causal"])) for r in records]
            return dumps_csv(["r2", "neg_log_purity", "causal"], rows), EXIT_OK
        return dumps_json({"scenario": scenario, "seed": cfg.seed, "records": records}), EXIT_OK
    if scenario == "fig5":
        levels = cfg.params.get("levels") or DEFAULT_LEVELS
        if any(not 0.0 <= v <= 0.5 for v in levels):
            raise PurityLensError("--levels must lie in [0, 0.5]")
        res = run_fig5(levels, runs_per_level=_runs(cfg), config=_genetics_config(cfg),
                       master_seed=cfg.seed, jobs=cfg.jobs)
        if cfg.fmt == "csv":
            rows = zip(res.corruption_levels, res.auc_purity, res.auc_correlation)
            return dumps_csv(["level", "auc_purity", "auc_correlation"], rows), EXIT_OK
        return dumps_json(res.to_dict(include_records=cfg.params.get("records", False))), EXIT_OK
    raise PurityLensError(f"unknown scenario {scenario!r}")


def cmd_oracle(cfg: RunConfig):
    kind = cfg.params["kind"]
    k = cfg.params.get("k")
    if kind == "m":
        if k is None:
            raise PurityLensError("oracle m needs an alphabet size, e.g. 'oracle m 4'")
        out = {"oracle": "m", "k": k, "m": sperner_m(k)}
    elif kind == "discrete-purity":
        cond = _read_input(cfg, read_matrix_csv)
        out = {"oracle": kind, "rows": cond.n_rows, "cols": cond.n_cols,
               "pairwise_pure": discrete_pairwise_pure(cond)}
    else:
        cond = _read_input(cfg, read_matrix_csv)
        k = 2 if k is None else k
        res = cfg.params.get("resolution", 1001)
        out = {"oracle": kind, "rows": cond.n_rows, "cols": cond.n_cols, "k": k,
               "lambda_resolution": res,
               "best_margin": kwise_best_margin(cond, k, lambda_resolution=res),
               "kwise_pure": discrete_kwise_pure_bruteforce(cond, k, lambda_resolution=res)}
    if cfg.fmt == "csv":
        return dumps_csv(["key", "value"], [(key, v) for key, v in out.items()]), EXIT_OK
    return dumps_json(out), EXIT_OK


COMMANDS = {
    "purity": cmd_purity,
    "dimension": cmd_dimension,
    "reconstruct": cmd_reconstruct,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
}


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(cfg.output, "w", newline="") as fh:
        fh.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        text, code = COMMANDS[cfg.command](cfg)
        _emit(cfg, text)
    except (PurityLensError, OSError) as exc:
        print(f"purity-lens: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
