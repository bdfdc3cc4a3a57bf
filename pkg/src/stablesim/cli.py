"""Command-line driver: seeded sampling to CSV, analytic evaluation, check
suites, and histogram grid files.

Commands: ``sample``, ``cdf``, ``cf``, ``check``, ``hist``.  All read a JSON
config (``--config``); ``--seed``, ``--n``, ``--output``, ``--threads``
override config fields.  Exit codes: 0 ok, 1 check failure, 2 config error,
3 sampler/runtime error.  stderr carries diagnostics only.
"""

from __future__ import annotations

import argparse
import json
import sys

import jsonschema
import numpy as np

from . import analytic, checks, stats
from .samplers import (
    DegenerateMarginal,
    MaxStableLaw,
    SampleBatch,
    StableLaw,
    TruncationExceeded,
    UnsupportedRegime,
    sample_batch,
    sample_doa_batch,
)
from .spectral import measure_from_json

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

_MEASURE_SCHEMA = {
    "type": "object",
    "required": ["sphere", "dim", "variant"],
    "properties": {
        "sphere": {"enum": ["linf", "euclid"]},
        "dim": {"type": "integer", "minimum": 1},
        "total_mass": {"type": "number", "exclusiveMinimum": 0},
        "variant": {
            "type": "object",
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "atoms": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["point", "weight"],
                        "properties": {
                            "point": {"type": "array", "items": {"type": "number"}},
                            "weight": {"type": "number", "exclusiveMinimum": 0},
                        },
                    },
                },
                "uniform_linf": {"type": "object"},
                "angular_density": {"enum": ["f1", "f2", "f3", "uniform"]},
            },
            "additionalProperties": False,
        },
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "law": {
            "type": "object",
            "required": ["kind", "alpha"],
            "properties": {
                "kind": {"enum": ["max_stable", "stable", "doa"]},
                "alpha": {"type": "number", "exclusiveMinimum": 0},
                "measure": _MEASURE_SCHEMA,
                "delta": {"type": "array", "items": {"type": "number"}},
                "n_summands": {"type": "integer", "minimum": 1},
            },
        },
        "n": {"type": "integer", "minimum": 0},
        "seed": {"type": "integer"},
        "truncation": {
            "anyOf": [{"type": "integer", "minimum": 1}, {"const": "exact"}]
        },
        "output": {"type": "string"},
        "threads": {"type": "integer", "minimum": 1},
        "points": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "grid": {
            "type": "object",
            "properties": {
                "x_range": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}},
                "y_range": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}},
                "bins": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "integer", "minimum": 1}},
                "normalization": {"enum": ["counts", "density"]},
            },
        },
        "check": {
            "type": "object",
            "required": ["suite"],
            "properties": {"suite": {"type": "string"}},
        },
    },
}


class ConfigError(ValueError):
    pass


def _load_config(args) -> dict:
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config schema error: {exc.message}") from exc
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.n is not None:
        cfg["n"] = args.n
    if args.output is not None:
        cfg["output"] = args.output
    if args.threads is not None:
        cfg["threads"] = args.threads
    return cfg


def _build_law(cfg: dict):
    law_cfg = cfg.get("law")
    if law_cfg is None:
        raise ConfigError("config needs a 'law' section")
    try:
        measure = measure_from_json(law_cfg["measure"])
    except KeyError as exc:
        raise ConfigError("law needs a 'measure'") from exc
    except ValueError as exc:
        raise ConfigError(f"bad measure: {exc}") from exc
    kind = law_cfg["kind"]
    try:
        if kind == "max_stable":
            return MaxStableLaw(law_cfg["alpha"], measure)
        if kind == "stable":
            law = StableLaw(law_cfg["alpha"], measure, law_cfg.get("delta"))
            if law.alpha != 1.0 and np.any(law.delta != 0.0):
                print("warning: delta != 0 breaks strict stability for alpha != 1", file=sys.stderr)
            return law
        return (law_cfg["alpha"], measure, law_cfg.get("n_summands", 1000))
    except ValueError as exc:
        raise ConfigError(f"bad law: {exc}") from exc


def _require_seed(cfg: dict) -> int:
    if "seed" not in cfg:
        raise ConfigError("a seed is required (config 'seed' or --seed)")
    return int(cfg["seed"])


def _fmt(v: float) -> str:
    return repr(float(v))


def _write_csv(path: str, meta: dict, header: list[str], rows) -> None:
    lines = ["# meta: " + json.dumps(meta, sort_keys=True), ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _run_batch(cfg: dict) -> SampleBatch:
    seed = _require_seed(cfg)
    n = int(cfg.get("n", 0))
    threads = int(cfg.get("threads", 1))
    built = _build_law(cfg)
    if isinstance(built, tuple):
        alpha, measure, n_summands = built
        return sample_doa_batch(alpha, measure, n_summands, n, seed, threads)
    return sample_batch(built, seed, n, cfg.get("truncation"), threads)


def cmd_sample(cfg: dict) -> int:
    batch = _run_batch(cfg)
    meta = dict(batch.meta)
    meta["command"] = "sample"
    d = batch.data.shape[1] if batch.data.ndim == 2 else 0
    header = [f"x{j + 1}" for j in range(d)]
    _write_csv(cfg.get("output", "-"), meta, header, batch.data)
    return EXIT_OK


def cmd_cdf(cfg: dict) -> int:
    law = _build_law(cfg)
    if not isinstance(law, MaxStableLaw):
        raise ConfigError("cdf applies to max_stable laws")
    points = cfg.get("points")
    if not points:
        raise ConfigError("cdf needs query 'points'")
    rows = []
    for x in points:
        try:
            val = analytic.max_joint_cdf(law, np.asarray(x, float))
        except analytic.NonPositiveArgument as exc:
            raise ConfigError(f"bad query point {x}: {exc}") from exc
        rows.append(list(x) + [val])
    header = [f"x{j + 1}" for j in range(law.dim)] + ["cdf"]
    _write_csv(cfg.get("output", "-"), {"command": "cdf", "law": law.describe()}, header, rows)
    return EXIT_OK


def cmd_cf(cfg: dict) -> int:
    law = _build_law(cfg)
    if not isinstance(law, StableLaw):
        raise ConfigError("cf applies to stable laws")
    points = cfg.get("points")
    if not points:
        raise ConfigError("cf needs query 'points'")
    rows = []
    for t in points:
        val = analytic.stable_cf(law, np.asarray(t, float))
        rows.append(list(t) + [val.real, val.imag])
    header = [f"t{j + 1}" for j in range(law.dim)] + ["re", "im"]
    _write_csv(cfg.get("output", "-"), {"command": "cf", "law": law.describe()}, header, rows)
    return EXIT_OK


def cmd_check(cfg: dict) -> int:
    section = cfg.get("check")
    if not section:
        raise ConfigError("config needs a 'check' section")
    params = {k: v for k, v in section.items() if k != "suite"}
    try:
        results = checks.run_suite(section["suite"], **params)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    except TypeError as exc:
        raise ConfigError(f"bad suite parameters: {exc}") from exc
    lines = [json.dumps(r.to_json(), sort_keys=True) for r in results]
    text = "\n".join(lines) + "\n"
    out = cfg.get("output", "-")
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def cmd_hist(cfg: dict) -> int:
    batch = _run_batch(cfg)
    grid_cfg = cfg.get("grid", {})
    law_kind = cfg["law"]["kind"]
    default_range = [0.0, 4.0] if law_kind == "max_stable" else [-8.0, 8.0]
    x_range = grid_cfg.get("x_range", default_range)
    y_range = grid_cfg.get("y_range", default_range)
    nx, ny = grid_cfg.get("bins", [200, 200])
    grid = stats.histogram2d(
        batch,
        np.linspace(x_range[0], x_range[1], nx + 1),
        np.linspace(y_range[0], y_range[1], ny + 1),
        grid_cfg.get("normalization", "counts"),
    )
    out = cfg.get("output", "-")
    if out == "-":
        sys.stdout.write(grid.to_text())
    else:
        with open(out, "w") as fh:
            fh.write(grid.to_text())
    return EXIT_OK


COMMANDS = {
    "sample": cmd_sample,
    "cdf": cmd_cdf,
    "cf": cmd_cf,
    "check": cmd_check,
    "hist": cmd_hist,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stablesim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--output", default=None)
        p.add_argument("--threads", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (UnsupportedRegime, DegenerateMarginal, TruncationExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
