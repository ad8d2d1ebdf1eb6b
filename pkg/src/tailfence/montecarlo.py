"""Seeded replication engine for estimator-comparison studies.

A study sweeps sample size n for the fence/quartile estimators and the
order-statistic count k (at fixed n) for the classical ones, drawing m
replicates per grid point and reporting the mean estimate with empirical
95% bands over the valid replicates.

Replicate r at grid point g always uses ``RngState(seed, stream=g*m + r)``,
so results are bit-identical for identical configs no matter how many
workers evaluate the grid.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import distributions as dist
from .distributions import DistributionSpec, RngState
from .empirical import Sample, empirical_quantile
from .estimators import ALL_METHODS, CLASSICAL_METHODS, NEW_METHODS, evaluate

DEFAULT_N_GRID = tuple(range(10, 101, 5))


@dataclass(frozen=True)
class StudyConfig:
    """Study definition; fully determines the output bytes."""

    spec: DistributionSpec
    seed: int
    m: int = 1000
    n_grid: tuple[int, ...] = DEFAULT_N_GRID
    k_grid: tuple[int, ...] | None = None  # default 2..n_for_k-1
    methods: tuple[str, ...] = ALL_METHODS
    n_for_k: int | None = None  # sample size for the k sweep; default max(n_grid)

    def __post_init__(self):
        RngState(self.seed)  # validates the seed range
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if not self.n_grid:
            raise ValueError("n_grid must be nonempty")
        if any(n < 5 for n in self.n_grid):
            raise ValueError(f"every n must be >= 5, got {self.n_grid}")
        if list(self.n_grid) != sorted(set(self.n_grid)):
            raise ValueError("n_grid must be strictly ascending")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        for method in self.methods:
            if method not in ALL_METHODS:
                raise ValueError(f"unknown method {method!r}")
        if len(set(self.methods)) != len(self.methods):
            raise ValueError("duplicate methods")
        n_fixed = self.fixed_n
        if self.k_grid is not None:
            if not self.k_grid:
                raise ValueError("k_grid must be nonempty when given")
            if list(self.k_grid) != sorted(set(self.k_grid)):
                raise ValueError("k_grid must be strictly ascending")
            if any(not 1 <= k <= n_fixed - 1 for k in self.k_grid):
                raise ValueError(f"k_grid must lie in [1, {n_fixed - 1}], got {self.k_grid}")

    @property
    def fixed_n(self) -> int:
        return self.n_for_k if self.n_for_k is not None else max(self.n_grid)

    @property
    def effective_k_grid(self) -> tuple[int, ...]:
        if self.k_grid is not None:
            return self.k_grid
        return tuple(range(2, self.fixed_n))


@dataclass(frozen=True)
class StudyRow:
    """One (axis value, method) aggregate; statistics empty when nothing was valid."""

    axis: str  # "n" or "k"
    value: int
    method: str
    mean_alpha: float | None
    ci_low: float | None
    ci_high: float | None
    valid_fraction: float


class _GridPoint(NamedTuple):
    axis: str
    value: int
    n: int
    k: int | None
    methods: tuple[str, ...]


def summarize_ci(values) -> tuple[float, float, float]:
    """Mean plus empirical 2.5%/97.5% type-6 quantiles (clamped at small m)."""
    smp = Sample(values)
    if smp.sorted[0] == smp.sorted[-1]:
        # keep mean == ci bounds exact for constant collections
        return (float(smp.sorted[0]),) * 3
    return (
        float(np.mean(smp.values)),
        empirical_quantile(smp, 0.025),
        empirical_quantile(smp, 0.975),
    )


def _grid_points(config: StudyConfig) -> list[_GridPoint]:
    new = tuple(m for m in config.methods if m in NEW_METHODS)
    classical = tuple(m for m in config.methods if m in CLASSICAL_METHODS)
    points: list[_GridPoint] = []
    if new:
        for n in config.n_grid:
            points.append(_GridPoint("n", n, n, None, new))
    if classical:
        n_fixed = config.fixed_n
        for k in config.effective_k_grid:
            usable = tuple(m for m in classical if m != "pickands" or 4 * k <= n_fixed)
            points.append(_GridPoint("k", k, n_fixed, k, usable))
    return points


def _evaluate_point(config: StudyConfig, g: int, point: _GridPoint) -> list[StudyRow]:
    if not point.methods:
        return []
    per_method: dict[str, list] = {m: [] for m in point.methods}
    base = g * config.m
    for r in range(config.m):
        smp = dist.sample(config.spec, RngState(config.seed, base + r), point.n)
        for method in point.methods:
            per_method[method].append(evaluate(method, smp, k=point.k))
    rows = []
    for method in point.methods:
        values = [rec.alpha_hat for rec in per_method[method] if rec.valid]
        if values:
            mean, lo, hi = summarize_ci(values)
        else:
            mean = lo = hi = None
        rows.append(
            StudyRow(
                axis=point.axis,
                value=point.value,
                method=method,
                mean_alpha=mean,
                ci_low=lo,
                ci_high=hi,
                valid_fraction=len(values) / config.m,
            )
        )
    return rows


def _evaluate_point_args(args) -> list[StudyRow]:
    return _evaluate_point(*args)


@dataclass(frozen=True)
class StudyResult:
    config: StudyConfig
    rows: tuple[StudyRow, ...]

    def axes(self) -> tuple[str, ...]:
        seen = []
        for row in self.rows:
            if row.axis not in seen:
                seen.append(row.axis)
        return tuple(seen)

    def rows_for_axis(self, axis: str) -> tuple[StudyRow, ...]:
        return tuple(row for row in self.rows if row.axis == axis)

    def row(self, axis: str, value: int, method: str) -> StudyRow:
        for row in self.rows:
            if (row.axis, row.value, row.method) == (axis, value, method):
                return row
        raise KeyError(f"no row for axis={axis!r} value={value} method={method!r}")

    def csv_for_axis(self, axis: str) -> str:
        lines = ["axis,method,mean,ci_low,ci_high,valid_fraction,m,seed"]
        for row in self.rows_for_axis(axis):
            lines.append(
                f"{row.value},{row.method},{_fmt(row.mean_alpha)},{_fmt(row.ci_low)},"
                f"{_fmt(row.ci_high)},{_fmt(row.valid_fraction)},{self.config.m},{self.config.seed}"
            )
        return "\n".join(lines) + "\n"


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def run_study(config: StudyConfig, workers: int | None = None) -> StudyResult:
    """Run the full study; deterministic CSV bytes for a given config.

    workers=None picks a process count automatically; results are gathered
    by grid-point index, never by completion order.
    """
    points = _grid_points(config)
    if workers is None:
        workers = max(1, min(len(points), os.cpu_count() or 1, 8))
    if workers > 1 and len(points) > 1:
        tasks = [(config, g, point) for g, point in enumerate(points)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_evaluate_point_args, tasks))
    else:
        chunks = [_evaluate_point(config, g, point) for g, point in enumerate(points)]
    rows: list[StudyRow] = []
    for chunk in chunks:
        rows.extend(chunk)
    return StudyResult(config=config, rows=tuple(rows))


def write_study_outputs(result: StudyResult, outdir) -> list[Path]:
    """Write one CSV per axis type plus a JSON run manifest; returns the paths."""
    from . import __version__

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    config = result.config
    prefix = config.spec.family
    paths = []
    for axis in result.axes():
        path = outdir / f"{prefix}_{axis}.csv"
        path.write_text(result.csv_for_axis(axis))
        paths.append(path)
    manifest = {
        "family": config.spec.family,
        "params": config.spec.params,
        "seed": config.seed,
        "m": config.m,
        "n_grid": list(config.n_grid),
        "k_grid": list(config.effective_k_grid),
        "n_for_k": config.fixed_n,
        "methods": list(config.methods),
        "files": [p.name for p in paths],
        "version": __version__,
    }
    manifest_path = outdir / f"{prefix}_manifest.json"
    manifest_path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    paths.append(manifest_path)
    return paths
