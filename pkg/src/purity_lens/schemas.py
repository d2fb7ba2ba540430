"""JSON Schemas (draft 2020-12) for every JSON report the CLI writes."""

_NUM = {"type": "number"}
_NUMS = {"type": "array", "items": _NUM}
_PROB = {"type": "number", "minimum": 0, "maximum": 1}
_NONNEG = {"type": "number", "minimum": 0}


def _obj(props: dict, required=None, extra: bool = False) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": extra,
    }


_PURITY_FIELDS = {
    "purity_ratio": _NONNEG,
    "threshold": _NONNEG,
    "is_pure": {"type": "boolean"},
    "neg_log_purity_ratio": _NUM,
    "pair_ratios": {
        "type": "array",
        "minItems": 2,
        "items": _obj({"x": {"type": "string"}, "x_prime": {"type": "string"}, "min_ratio": _NONNEG}),
    },
    "bandwidths": {"type": "object", "additionalProperties": {"type": "number", "exclusiveMinimum": 0}},
    "grid_size": {"type": "integer", "minimum": 2},
}

PURITY = _obj(_PURITY_FIELDS)

DIMENSION = _obj({
    "labels": {"type": "array", "items": {"type": "string"}, "minItems": 2},
    "rank": {"type": "integer", "minimum": 0},
    "eigenvalues": {"type": "array", "items": _NONNEG},
    "relative_threshold": _NONNEG,
    "min_raw_eigenvalue": _NUM,
    "kernel_bandwidth": {"type": "number", "exclusiveMinimum": 0},
})

RECONSTRUCT = _obj({
    "anchor_pair": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
    "mu0": _NUM,
    "mu1": _NUM,
    "mixing": {"type": "object", "additionalProperties": _PROB},
    "residuals": {"type": "object", "additionalProperties": _NONNEG},
    "grid": _NUMS,
    "density_z0": {"type": "array", "items": _NONNEG},
    "density_z1": {"type": "array", "items": _NONNEG},
})

_GROUPS = {"type": "object", "additionalProperties": _NUMS, "minProperties": 2}

SIMULATE_DIRECT = _obj({
    "scenario": {"const": "direct"},
    "seed": {"type": "integer"},
    "groups": _GROUPS,
})

SIMULATE_CONFOUNDED = _obj({
    "scenario": {"const": "confounded"},
    "seed": {"type": "integer"},
    "truth": _obj({
        "weight": _NUM,
        "p_z1": _PROB,
        "p_x0_given_z": {"type": "array", "items": _PROB, "minItems": 2, "maxItems": 2},
        "mixing": {"type": "object", "additionalProperties": _PROB},
    }),
    "groups": _GROUPS,
})

SIMULATE_MARGINALIZATION = _obj({
    "scenario": {"const": "marginalization"},
    "seed": {"type": "integer"},
    "weights": _NUMS,
    **_PURITY_FIELDS,
})

_HISTOGRAM = _obj({
    "edges": _NUMS,
    "counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
})

SIMULATE_FIG3 = _obj({
    "scenario": {"const": "fig3"},
    "master_seed": {"type": "integer"},
    "threshold": _NONNEG,
    "summary": _obj({
        "runs": {"type": "integer", "minimum": 1},
        "direct_fraction_below_threshold": _PROB,
        "confounded_fraction_below_threshold": _PROB,
        "direct_median": _NONNEG,
        "confounded_median": _NONNEG,
    }),
    "histogram_direct": _HISTOGRAM,
    "histogram_confounded": _HISTOGRAM,
    "direct": {"type": "array", "items": _NONNEG},
    "confounded": {"type": "array", "items": _NONNEG},
})

_FIG4_RECORD = _obj({
    "causal": {"type": "boolean"},
    "snp": {"type": "integer", "minimum": 0},
    "cause_snp": {"type": "integer", "minimum": 0},
    "weight": _NUM,
    "r2": _PROB,
    "neg_log_purity": _NUM,
    "purity_ratio": _NONNEG,
})

SIMULATE_FIG4 = _obj({
    "scenario": {"const": "fig4"},
    "seed": {"type": "integer"},
    "records": {"type": "array", "items": _FIG4_RECORD},
})

_FIG5_RECORD = _obj({
    "level": _PROB,
    "causal": {"type": "boolean"},
    "r2": _PROB,
    "neg_log_purity": _NUM,
    "purity_ratio": _NONNEG,
})

SIMULATE_FIG5 = _obj(
    {
        "scenario": {"const": "fig5"},
        "seed": {"type": "integer"},
        "runs_per_level": {"type": "integer", "minimum": 1},
        "corruption_levels": {"type": "array", "items": {"type": "number", "minimum": 0, "maximum": 0.5}},
        "auc_purity": {"type": "array", "items": _PROB},
        "auc_correlation": {"type": "array", "items": _PROB},
        "records": {"type": "array", "items": _FIG5_RECORD},
    },
    required=["scenario", "seed", "runs_per_level", "corruption_levels", "auc_purity", "auc_correlation"],
)

ORACLE_M = _obj({
    "oracle": {"const": "m"},
    "k": {"type": "integer", "minimum": 1},
    "m": {"type": "integer", "minimum": 1},
})

ORACLE_DISCRETE_PURITY = _obj({
    "oracle": {"const": "discrete-purity"},
    "rows": {"type": "integer", "minimum": 2},
    "cols": {"type": "integer", "minimum": 2},
    "pairwise_pure": {"type": "boolean"},
})

ORACLE_KWISE = _obj({
    "oracle": {"const": "kwise"},
    "rows": {"type": "integer", "minimum": 2},
    "cols": {"type": "integer", "minimum": 2},
    "k": {"type": "integer", "minimum": 2},
    "lambda_resolution": {"type": "integer", "minimum": 2},
    "best_margin": _NUM,
    "kwise_pure": {"type": "boolean"},
})

SCHEMAS = {
    "purity": PURITY,
    "dimension": DIMENSION,
    "reconstruct": RECONSTRUCT,
    "simulate direct": SIMULATE_DIRECT,
    "simulate confounded": SIMULATE_CONFOUNDED,
    "simulate marginalization": SIMULATE_MARGINALIZATION,
    "simulate fig3": SIMULATE_FIG3,
    "simulate fig4": SIMULATE_FIG4,
    "simulate fig5": SIMULATE_FIG5,
    "oracle m": ORACLE_M,
    "oracle discrete-purity": ORACLE_DISCRETE_PURITY,
    "oracle kwise": ORACLE_KWISE,
}
