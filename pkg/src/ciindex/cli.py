"""Command line front end and CSV reporting.

Five subcommands: ``simulate-mean``, ``simulate-proportion``, and
``calibrate`` run seeded studies; ``apply`` scores an externally supplied
coverage/length table with the index and ranks estimators within each
group; ``plot-data`` reshapes a scored table into long format (group,
estimator, series, value) for plotting coverage and index against the
nominal line.

Every run is driven by a small INI config (documented in the README,
``schema = 1``) plus optional flag overrides.  All tabular output is CSV
at 6 decimal places, preceded by comment lines carrying the master seed
(simulation modes) and a plan hash, so re-running a config byte-reproduces
its outputs.  Index values in CSVs are computed from the 6-dp-rounded
coverage and length actually written, which makes re-ingesting a study
CSV through ``apply`` reproduce the index column exactly.

Exit codes: 0 success, 2 validation failure (config, flags, or input
rows), 3 runtime failure (I/O and anything unexpected).
"""

from __future__ import annotations

import argparse
import configparser
import csv
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy
import scipy

from . import __version__
from .errors import CiindexError, ConfigError
from .harness import (
    DESK_SCALE,
    PAPER_SCALE,
    SimulationPlan,
    run_calibration_study,
    run_mean_study,
    run_proportion_study,
)
from .index import IndexConfig, IntervalPerformance, compute_index
from .mean_intervals import MEAN_ESTIMATORS
from .proportion_intervals import PROPORTION_ESTIMATORS
from .sampling import DataModel, binomial_model, lognormal_model, normal_model

__all__ = [
    "ExternalPerformanceRow",
    "ReportRow",
    "apply_index",
    "main",
    "run_from_config",
]

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

_MODES = ("simulate-mean", "simulate-proportion", "calibrate", "apply", "plot-data")
_SCALES = {"desk": DESK_SCALE, "paper": PAPER_SCALE}

_ALLOWED_KEYS = {
    "run": {"schema", "mode", "seed", "scale", "alpha", "loss", "rescaled"},
    "model": {"kind", "mu", "sigma2", "mu_log", "sigma2_log", "n_trials", "p"},
    "study": {"n", "N", "B", "R", "estimators", "skip_delta", "workers"},
    "apply": {"input"},
    "plot": {"input"},
}


@dataclass(frozen=True)
class ExternalPerformanceRow:
    """One estimator's (coverage, mean length), plus labeling columns."""

    estimator_label: str
    group_keys: tuple[tuple[str, str], ...]
    coverage: float
    mean_length: float

    def __post_init__(self) -> None:
        if not self.estimator_label:
            raise ConfigError("estimator label must be nonempty")
        if not (isinstance(self.coverage, float) and 0.0 <= self.coverage <= 1.0):
            raise ConfigError(f"coverage must lie in [0, 1], got {self.coverage!r}")
        if not (
            isinstance(self.mean_length, float)
            and math.isfinite(self.mean_length)
            and self.mean_length >= 0.0
        ):
            raise ConfigError(f"length must be finite and >= 0, got {self.mean_length!r}")


@dataclass(frozen=True)
class ReportRow:
    """An input row scored with its index and within-group rank."""

    estimator_label: str
    group_keys: tuple[tuple[str, str], ...]
    coverage: float
    mean_length: float
    index: float
    rank_within_group: int


def apply_index(rows: list[ExternalPerformanceRow], cfg: IndexConfig) -> list[ReportRow]:
    """Score rows with the index and rank them within each group.

    Rank 1 is the (joint) largest index in its group; ties keep input
    order.  Output preserves input order.
    """
    if not rows:
        raise ConfigError("apply_index needs at least one row")
    indexes = [
        compute_index(IntervalPerformance(row.coverage, row.mean_length), cfg) for row in rows
    ]
    ranks: dict[int, int] = {}
    by_group: dict[tuple, list[int]] = {}
    for pos, row in enumerate(rows):
        by_group.setdefault(row.group_keys, []).append(pos)
    for members in by_group.values():
        ordered = sorted(members, key=lambda pos: (-indexes[pos], pos))
        for rank, pos in enumerate(ordered, start=1):
            ranks[pos] = rank
    return [
        ReportRow(
            estimator_label=row.estimator_label,
            group_keys=row.group_keys,
            coverage=row.coverage,
            mean_length=row.mean_length,
            index=indexes[pos],
            rank_within_group=ranks[pos],
        )
        for pos, row in enumerate(rows)
    ]


# ---------------------------------------------------------------- config


def _load_config(path: Path) -> configparser.ConfigParser:
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    # keys are case sensitive so that [study] n and N can coexist
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise ConfigError(f"config parse failure: {exc}") from exc
    for section in parser.sections():
        if section not in _ALLOWED_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        unknown = set(parser[section]) - _ALLOWED_KEYS[section]
        if unknown:
            raise ConfigError(f"unknown key(s) in [{section}]: {sorted(unknown)}")
    if not parser.has_section("run"):
        raise ConfigError("config must have a [run] section")
    schema = parser.get("run", "schema", fallback=None)
    if schema is None or schema.strip() != str(SCHEMA_VERSION):
        raise ConfigError(f"[run] schema must be {SCHEMA_VERSION}, got {schema!r}")
    return parser


def _get_typed(parser, section, key, kind, default=None):
    raw = parser.get(section, key, fallback=None)
    if raw is None:
        return default
    try:
        if kind is bool:
            return parser.getboolean(section, key)
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} must be a {kind.__name__}, got {raw!r}") from exc


@dataclass(frozen=True)
class _Effective:
    mode: str
    out_dir: Path
    config_dir: Path
    seed: int | None
    alpha: float
    loss: str
    rescaled: bool
    scale: str
    parser: configparser.ConfigParser


def _effective(args: argparse.Namespace) -> _Effective:
    config_path = Path(args.config)
    parser = _load_config(config_path)
    mode = parser.get("run", "mode", fallback=None)
    if mode is not None and mode.strip() != args.command:
        raise ConfigError(
            f"config [run] mode is {mode.strip()!r} but the {args.command!r} subcommand was invoked"
        )
    seed = args.seed if args.seed is not None else _get_typed(parser, "run", "seed", int)
    alpha = args.alpha if args.alpha is not None else _get_typed(parser, "run", "alpha", float, 0.05)
    loss = args.loss if args.loss is not None else parser.get("run", "loss", fallback="absolute")
    rescaled = args.rescaled or _get_typed(parser, "run", "rescaled", bool, False)
    scale = args.scale if args.scale is not None else parser.get("run", "scale", fallback="desk")
    if scale not in _SCALES:
        raise ConfigError(f"scale must be one of {sorted(_SCALES)}, got {scale!r}")
    if loss not in ("absolute", "squared"):
        raise ConfigError(f"loss must be 'absolute' or 'squared', got {loss!r}")
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must lie in (0, 1), got {alpha!r}")
    return _Effective(
        mode=args.command,
        out_dir=Path(args.out),
        config_dir=config_path.resolve().parent,
        seed=seed,
        alpha=alpha,
        loss=loss,
        rescaled=rescaled,
        scale=scale,
        parser=parser,
    )


def _build_model(parser: configparser.ConfigParser) -> DataModel:
    if not parser.has_section("model"):
        raise ConfigError("this mode needs a [model] section")
    kind = parser.get("model", "kind", fallback=None)
    try:
        if kind == "normal":
            return normal_model(
                _require(parser, "model", "mu", float), _require(parser, "model", "sigma2", float)
            )
        if kind == "lognormal":
            return lognormal_model(
                _require(parser, "model", "mu_log", float),
                _require(parser, "model", "sigma2_log", float),
            )
        if kind == "binomial":
            return binomial_model(
                _require(parser, "model", "n_trials", int), _require(parser, "model", "p", float)
            )
    except CiindexError:
        raise
    raise ConfigError(f"[model] kind must be normal, lognormal, or binomial, got {kind!r}")


def _require(parser, section, key, kind):
    value = _get_typed(parser, section, key, kind)
    if value is None:
        raise ConfigError(f"[{section}] {key} is required")
    return value


def _build_plan(eff: _Effective, model: DataModel, calibrate: bool) -> SimulationPlan:
    parser = eff.parser
    if eff.seed is None:
        raise ConfigError("a seed is required (config [run] seed or --seed)")
    sizes = dict(_SCALES[eff.scale])
    for key in ("R", "N", "B"):
        explicit = _get_typed(parser, "study", key, int) if parser.has_section("study") else None
        if explicit is not None:
            sizes[key] = explicit
    if model.kind == "binomial":
        n = _get_typed(parser, "study", "n", int, model.n_trials)
        sizes.update(N=1, B=1)
        if not parser.has_option("study", "R"):
            sizes["R"] = 1000
        default_estimators = PROPORTION_ESTIMATORS
    else:
        n = _require(parser, "study", "n", int)
        default_estimators = MEAN_ESTIMATORS
    raw = parser.get("study", "estimators", fallback=None)
    estimators = (
        tuple(e.strip() for e in raw.split(",") if e.strip()) if raw else default_estimators
    )
    skip_delta = _get_typed(parser, "study", "skip_delta", float, 0.005)
    return SimulationPlan(
        model=model,
        n=n,
        N=sizes["N"],
        B=sizes["B"],
        R=sizes["R"],
        alpha=eff.alpha,
        estimators=estimators,
        master_seed=eff.seed,
        calibrate=calibrate,
        skip_delta=skip_delta,
        loss=eff.loss,
        rescaled=eff.rescaled,
    )


def _workers(eff: _Effective) -> int:
    value = _get_typed(eff.parser, "study", "workers", int, 1) if eff.parser.has_section("study") else 1
    if value < 1:
        raise ConfigError(f"[study] workers must be >= 1, got {value!r}")
    return value


# ---------------------------------------------------------------- output


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _quantized_triple(coverage: float, length: float, cfg: IndexConfig) -> tuple[str, str, str]:
    # index computed from the rounded values actually written, so a reader
    # recomputing from the file reproduces it exactly
    cov_q = float(_fmt(coverage))
    len_q = float(_fmt(length))
    idx = compute_index(IntervalPerformance(cov_q, len_q), cfg)
    return _fmt(cov_q), _fmt(len_q), _fmt(idx)


def _plan_echo_hash(echo: dict) -> str:
    return hashlib.sha256(json.dumps(echo, sort_keys=True).encode("utf-8")).hexdigest()


def _write_csv(path: Path, comments: list[str], header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        for line in comments:
            handle.write(f"# {line}\n")
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def _write_metadata(out_dir: Path, echo: dict, extra: dict | None = None) -> str:
    plan_hash = _plan_echo_hash(echo)
    record = {
        "plan": echo,
        "plan_sha256": plan_hash,
        "versions": {
            "ciindex": __version__,
            "numpy": numpy.__version__,
            "python": sys.version.split()[0],
            "scipy": scipy.__version__,
        },
    }
    if extra:
        record.update(extra)
    with open(out_dir / "run_metadata.json", "w", encoding="utf-8") as handle:
        json.dump(record, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return plan_hash


def _model_echo(model: DataModel) -> dict:
    fields = {k: v for k, v in vars(model).items() if v is not None}
    return fields


def _plan_echo(mode: str, plan: SimulationPlan) -> dict:
    return {
        "mode": mode,
        "model": _model_echo(plan.model),
        "n": plan.n,
        "N": plan.N,
        "B": plan.B,
        "R": plan.R,
        "alpha": plan.alpha,
        "estimators": list(plan.estimators),
        "master_seed": plan.master_seed,
        "calibrate": plan.calibrate,
        "skip_delta": plan.skip_delta,
        "loss": plan.loss,
        "rescaled": plan.rescaled,
    }


def _comments(plan_hash: str, master_seed: int | None) -> list[str]:
    if master_seed is None:
        return [f"plan_sha256={plan_hash}"]
    return [f"master_seed={master_seed} plan_sha256={plan_hash}"]


# ---------------------------------------------------------------- modes


def _run_simulate_mean(eff: _Effective) -> None:
    plan = _build_plan(eff, _build_model(eff.parser), calibrate=False)
    if plan.model.kind == "binomial":
        raise ConfigError("simulate-mean needs a normal or lognormal model")
    results = run_mean_study(plan, n_workers=_workers(eff))
    echo = _plan_echo("simulate-mean", plan)
    plan_hash = _write_metadata(eff.out_dir, echo)
    comments = _comments(plan_hash, plan.master_seed)
    cfg = plan.index_config

    rep_rows = []
    sum_rows = []
    for e in plan.estimators:
        reps, summary = results[e]
        for r, rep in enumerate(reps):
            cov, length, idx = _quantized_triple(rep.coverage, rep.mean_length, cfg)
            rep_rows.append([e, str(r), cov, length, idx])
        sum_rows.append(
            [
                e,
                _fmt(float(numpy.mean([rep.coverage for rep in reps]))),
                _fmt(float(numpy.mean([rep.mean_length for rep in reps]))),
                _fmt(summary.mean),
                _fmt(summary.skewness),
                _fmt(summary.kurtosis),
                _fmt(summary.st_dev),
            ]
        )
    _write_csv(
        eff.out_dir / "replications.csv",
        comments,
        ["estimator", "replication", "coverage", "length", "index"],
        rep_rows,
    )
    _write_csv(
        eff.out_dir / "summary.csv",
        comments,
        [
            "estimator",
            "coverage",
            "length",
            "index_mean",
            "index_skewness",
            "index_kurtosis",
            "index_st_dev",
        ],
        sum_rows,
    )


def _run_simulate_proportion(eff: _Effective) -> None:
    plan = _build_plan(eff, _build_model(eff.parser), calibrate=False)
    if plan.model.kind != "binomial":
        raise ConfigError("simulate-proportion needs a binomial model")
    results = run_proportion_study(plan)
    echo = _plan_echo("simulate-proportion", plan)
    plan_hash = _write_metadata(eff.out_dir, echo)
    rows = []
    for e in plan.estimators:
        cov, length, idx = _quantized_triple(
            results[e].coverage, results[e].mean_length, plan.index_config
        )
        rows.append([e, cov, length, idx])
    _write_csv(
        eff.out_dir / "results.csv",
        _comments(plan_hash, plan.master_seed),
        ["estimator", "coverage", "length", "index"],
        rows,
    )


def _run_calibrate(eff: _Effective) -> None:
    plan = _build_plan(eff, _build_model(eff.parser), calibrate=True)
    if plan.model.kind == "binomial":
        raise ConfigError("calibrate needs a normal or lognormal model")
    comparison = run_calibration_study(plan, n_workers=_workers(eff))
    echo = _plan_echo("calibrate", plan)
    plan_hash = _write_metadata(eff.out_dir, echo, {"calibration_resamples": "reused"})
    cfg = plan.index_config
    rows = []
    for e in plan.estimators:
        comp = comparison[e]
        for variant, (reps, _summary) in (
            ("uncalibrated", comp.uncalibrated),
            ("calibrated", comp.calibrated),
        ):
            cov = float(numpy.mean([rep.coverage for rep in reps]))
            length = float(numpy.mean([rep.mean_length for rep in reps]))
            cov_s, len_s, idx_s = _quantized_triple(cov, length, cfg)
            rows.append(
                [
                    e,
                    variant,
                    cov_s,
                    len_s,
                    idx_s,
                    "true" if comp.skipped else "false",
                    _fmt(comp.mean_beta),
                ]
            )
    _write_csv(
        eff.out_dir / "calibration.csv",
        _comments(plan_hash, plan.master_seed),
        ["estimator", "variant", "coverage", "length", "index", "skipped", "mean_beta"],
        rows,
    )


def _input_path(eff: _Effective, section: str) -> Path:
    if not eff.parser.has_section(section):
        raise ConfigError(f"this mode needs a [{section}] section with an input path")
    raw = eff.parser.get(section, "input", fallback=None)
    if not raw:
        raise ConfigError(f"[{section}] input is required")
    path = Path(raw)
    return path if path.is_absolute() else eff.config_dir / path


def _read_performance_csv(path: Path) -> tuple[list[str], list[ExternalPerformanceRow]]:
    """Parse an apply-mode input: estimator, group columns, coverage, length.

    Comment lines starting with '#' are skipped; columns after 'length'
    are ignored so scored report files re-ingest cleanly.
    """
    if not path.is_file():
        raise ConfigError(f"input file not found: {path}")
    with open(path, encoding="utf-8") as handle:
        reader = csv.reader(line for line in handle if not line.startswith("#"))
        table = [row for row in reader if row]
    if not table:
        raise ConfigError(f"{path.name}: no header row")
    header = [cell.strip() for cell in table[0]]
    if not header or header[0] != "estimator":
        raise ConfigError(f"{path.name}: first column must be 'estimator', got {header[:1]!r}")
    if "coverage" not in header or "length" not in header:
        raise ConfigError(f"{path.name}: header needs 'coverage' and 'length' columns")
    cov_at = header.index("coverage")
    len_at = header.index("length")
    if len_at != cov_at + 1 or cov_at < 1:
        raise ConfigError(
            f"{path.name}: expected columns estimator,<groups...>,coverage,length"
        )
    group_cols = header[1:cov_at]

    rows = []
    for ordinal, raw in enumerate(table[1:], start=1):
        if len(raw) != len(header):
            raise ConfigError(
                f"{path.name} row {ordinal}: expected {len(header)} cells, got {len(raw)}"
            )
        cells = [cell.strip() for cell in raw]
        try:
            coverage = float(cells[cov_at])
            length = float(cells[len_at])
        except ValueError as exc:
            raise ConfigError(f"{path.name} row {ordinal}: {exc}") from exc
        try:
            rows.append(
                ExternalPerformanceRow(
                    estimator_label=cells[0],
                    group_keys=tuple(zip(group_cols, cells[1 : cov_at])),
                    coverage=coverage,
                    mean_length=length,
                )
            )
        except CiindexError as exc:
            raise ConfigError(f"{path.name} row {ordinal}: {exc}") from exc
    if not rows:
        raise ConfigError(f"{path.name}: no data rows")
    return group_cols, rows


def _run_apply(eff: _Effective) -> None:
    in_path = _input_path(eff, "apply")
    group_cols, rows = _read_performance_csv(in_path)
    cfg = IndexConfig(eff.alpha, eff.loss, eff.rescaled)
    report = apply_index(rows, cfg)
    echo = {
        "mode": "apply",
        "alpha": eff.alpha,
        "loss": eff.loss,
        "rescaled": eff.rescaled,
        "input_sha256": hashlib.sha256(in_path.read_bytes()).hexdigest(),
    }
    plan_hash = _write_metadata(eff.out_dir, echo)
    out_rows = [
        [row.estimator_label]
        + [value for _key, value in row.group_keys]
        + [_fmt(row.coverage), _fmt(row.mean_length), _fmt(row.index), str(row.rank_within_group)]
        for row in report
    ]
    _write_csv(
        eff.out_dir / "report.csv",
        _comments(plan_hash, None),
        ["estimator", *group_cols, "coverage", "length", "index", "rank"],
        out_rows,
    )


def _group_label(group_keys: tuple[tuple[str, str], ...]) -> str:
    if not group_keys:
        return "all"
    return ";".join(f"{key}={value}" for key, value in group_keys)


def _run_plot_data(eff: _Effective) -> None:
    in_path = _input_path(eff, "plot")
    group_cols, rows = _read_performance_csv(in_path)
    cfg = IndexConfig(eff.alpha, eff.loss, eff.rescaled)
    report = apply_index(rows, cfg)
    echo = {
        "mode": "plot-data",
        "alpha": eff.alpha,
        "loss": eff.loss,
        "rescaled": eff.rescaled,
        "input_sha256": hashlib.sha256(in_path.read_bytes()).hexdigest(),
    }
    plan_hash = _write_metadata(eff.out_dir, echo)

    groups: dict[tuple, list[ReportRow]] = {}
    for row in report:
        groups.setdefault(row.group_keys, []).append(row)
    out_rows = []
    for group_keys, members in groups.items():
        label = _group_label(group_keys)
        for row in members:
            out_rows.append([label, row.estimator_label, "coverage", _fmt(row.coverage)])
        for row in members:
            out_rows.append([label, row.estimator_label, "index", _fmt(row.index)])
        out_rows.append([label, "", "nominal", _fmt(1.0 - eff.alpha)])
    _write_csv(
        eff.out_dir / "plot_data.csv",
        _comments(plan_hash, None),
        ["group", "estimator", "series", "value"],
        out_rows,
    )


_RUNNERS = {
    "simulate-mean": _run_simulate_mean,
    "simulate-proportion": _run_simulate_proportion,
    "calibrate": _run_calibrate,
    "apply": _run_apply,
    "plot-data": _run_plot_data,
}


# ---------------------------------------------------------------- entry


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ciindex",
        description="Score and compare confidence-interval estimators with a single index.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in _MODES:
        p = sub.add_parser(mode, help=f"run the {mode} mode")
        p.add_argument("--config", required=True, help="INI config path (schema = 1)")
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--scale", choices=sorted(_SCALES), default=None, help="R/N/B preset")
        p.add_argument("--alpha", type=float, default=None, help="significance level override")
        p.add_argument("--loss", choices=("absolute", "squared"), default=None)
        p.add_argument("--rescaled", action="store_true", help="map the index range onto [0, 1]")
    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI entry point; returns the process exit code."""
    args = _build_parser().parse_args(argv)
    try:
        eff = _effective(args)
        eff.out_dir.mkdir(parents=True, exist_ok=True)
        _RUNNERS[args.command](eff)
        return EXIT_OK
    except CiindexError as exc:
        print(f"ciindex: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"ciindex: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - last-resort runtime failure
        print(f"ciindex: unexpected failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def run_from_config(config_path: str, out_dir: str = ".") -> int:
    """Execute the mode named by the config's [run] mode key.

    Equivalent to ``ciindex <mode> --config config_path --out out_dir``;
    returns the exit code.
    """
    try:
        parser = _load_config(Path(config_path))
        mode = parser.get("run", "mode", fallback=None)
        if mode is None or mode.strip() not in _MODES:
            raise ConfigError(f"[run] mode must be one of {_MODES}, got {mode!r}")
    except CiindexError as exc:
        print(f"ciindex: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return main([mode.strip(), "--config", str(config_path), "--out", str(out_dir)])
