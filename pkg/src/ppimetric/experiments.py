"""Benchmark protocols a-d over the partial-oracle predictor.

Each set is five rows of (predictor params, prevalence). ``run_experiment``
simulates every row ``reps`` times and reports mean and standard deviation of
AUPRC, AUROC and the three-dimensional score.

Sets b-d use alpha/beta grids recovered by inverting published AUROC values
through :func:`ppimetric.simulate.analytic_auroc`; every grid reproduces its
AUROC column to within 0.001.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from .curves import (
    INTERPOLATIONS,
    ConfigError,
    CurvePoints,
    Interpolation,
    auprc,
    auroc,
    pr_curve,
    roc_curve,
    threshold_sweep,
)
from .simulate import PredictorParams, SimConfig, simulate
from .trimetric import TriConfig, TriReport, tri_evaluate

SetId = Literal["a", "b", "c", "d"]
SET_IDS = ("a", "b", "c", "d")
METRICS = ("auprc", "auroc", "tri_score")
Row = tuple[PredictorParams, float]

_STEPS = (0.05, 0.10, 0.15, 0.20, 0.25)


def grid_for_set(set_id: str) -> tuple[Row, ...]:
    if set_id == "a":
        return tuple((PredictorParams(0.1, 0.1), p) for p in _STEPS)
    if set_id == "b":
        return tuple((PredictorParams(a, 0.1), 0.1) for a in _STEPS)
    if set_id == "c":
        return tuple((PredictorParams(0.1, b), 0.1) for b in (0.45, 0.40, 0.35, 0.30, 0.25))
    if set_id == "d":
        return tuple((PredictorParams(a, round(0.5 - a, 10)), 0.1) for a in _STEPS)
    raise ConfigError(f"unknown experiment set {set_id!r}; expected one of {SET_IDS}")


@dataclass(frozen=True)
class ExperimentSpec:
    """One benchmark protocol.

    With ``common_random_numbers`` (the default) every row of a replication
    reuses the same random stream, so row-to-row differences reflect the
    parameters rather than sampling noise. Otherwise each (row, rep) pair gets
    its own stream.
    """

    set_id: str
    rows: tuple[Row, ...]
    n: int = 10_000
    reps: int = 10
    seed: int = 0
    tri_config: TriConfig = field(default_factory=TriConfig)
    pr_interpolation: Interpolation = "linear"
    common_random_numbers: bool = True

    def __post_init__(self) -> None:
        if len(self.rows) != 5:
            raise ConfigError(f"an experiment has exactly 5 rows, got {len(self.rows)}")
        if self.reps < 1:
            raise ConfigError("reps must be >= 1")
        if self.pr_interpolation not in INTERPOLATIONS:
            raise ConfigError(f"unknown interpolation {self.pr_interpolation!r}")
        for _, prevalence in self.rows:
            SimConfig(self.n, prevalence, 0)

    @classmethod
    def for_set(cls, set_id: str, **overrides) -> "ExperimentSpec":
        return cls(set_id=set_id, rows=grid_for_set(set_id), **overrides)

    def derive_seed(self, row: int, rep: int) -> int:
        key = (self.seed, rep) if self.common_random_numbers else (self.seed, row, rep)
        return int(np.random.SeedSequence(key).generate_state(1, np.uint64)[0])

    def sim_config(self, row: int, rep: int) -> SimConfig:
        return SimConfig(self.n, self.rows[row][1], self.derive_seed(row, rep))


@dataclass(frozen=True, eq=False)
class MetricTable:
    """Per-replication values with shape ``(5, reps)`` for each metric."""

    spec: ExperimentSpec
    values: dict[str, NDArray[np.float64]]

    def mean(self, metric: str) -> NDArray[np.float64]:
        return self.values[metric].mean(axis=1)

    def std(self, metric: str) -> NDArray[np.float64]:
        ddof = 1 if self.spec.reps > 1 else 0
        return self.values[metric].std(axis=1, ddof=ddof)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricTable):
            return NotImplemented
        return self.spec == other.spec and all(
            np.array_equal(self.values[m], other.values[m]) for m in METRICS
        )


def _evaluate_once(spec: ExperimentSpec, row: int, rep: int) -> tuple[float, float, float]:
    params, _ = spec.rows[row]
    sweep = threshold_sweep(simulate(params, spec.sim_config(row, rep)))
    return (
        auprc(pr_curve(sweep), spec.pr_interpolation),
        auroc(roc_curve(sweep)),
        tri_evaluate(sweep, spec.tri_config).score,
    )


def run_experiment(spec: ExperimentSpec, max_workers: int | None = 1) -> MetricTable:
    jobs = [(row, rep) for row in range(len(spec.rows)) for rep in range(spec.reps)]
    if max_workers == 1:
        results = [_evaluate_once(spec, row, rep) for row, rep in jobs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(lambda job: _evaluate_once(spec, *job), jobs))
    arr = np.asarray(results, dtype=np.float64).reshape(len(spec.rows), spec.reps, len(METRICS))
    if not np.isfinite(arr).all():
        raise RuntimeError(f"non-finite statistic in experiment set {spec.set_id}")
    return MetricTable(spec, {m: arr[:, :, i] for i, m in enumerate(METRICS)})


def emit_figure_points(spec: ExperimentSpec, kind: str) -> list[CurvePoints] | list[TriReport]:
    """Curve data for each row, from the first replication only."""
    if kind not in ("roc", "pr", "tri"):
        raise ConfigError(f"unknown curve kind {kind!r}")
    out = []
    for row, (params, _) in enumerate(spec.rows):
        sweep = threshold_sweep(simulate(params, spec.sim_config(row, 0)))
        if kind == "roc":
            out.append(roc_curve(sweep))
        elif kind == "pr":
            out.append(pr_curve(sweep))
        else:
            out.append(tri_evaluate(sweep, spec.tri_config))
    return out
