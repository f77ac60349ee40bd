"""Three-dimensional evaluation metric focused on positive-prediction purity.

Dimensions, each read against recall:

1. the tp/fp ratio, optionally rescaled by n_neg/n_pos so that it becomes
   TPR/FPR (the positive likelihood ratio) and stops depending on prevalence,
   then mapped to [0, 1] by a linear cap;
2. ``1 - fp/tn``, clamped to [0, 1];
3. recall itself, the shared axis.

The score is ``area(dim1 vs recall) * area(dim2 vs recall)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from .core import DataError
from .curves import ConfigError, Sweep, _trapezoid

RatioMode = Literal["odds_normalized", "raw"]
RATIO_MODES = ("odds_normalized", "raw")


@dataclass(frozen=True)
class TriConfig:
    ratio_cap: float = 100.0
    ratio_mode: RatioMode = "odds_normalized"
    clamp_dim2: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.ratio_cap) and self.ratio_cap > 0):
            raise ConfigError(f"ratio_cap must be a positive finite number, got {self.ratio_cap!r}")
        if self.ratio_mode not in RATIO_MODES:
            raise ConfigError(f"unknown ratio_mode {self.ratio_mode!r}; expected one of {RATIO_MODES}")


@dataclass(frozen=True)
class TriPoint:
    recall: float
    g: float
    d2: float


@dataclass(frozen=True, eq=False)
class TriReport:
    recall: NDArray[np.float64]
    g: NDArray[np.float64]
    d2: NDArray[np.float64]
    area1: float
    area2: float
    score: float
    config: TriConfig = field(default_factory=TriConfig)

    @property
    def points(self) -> list[TriPoint]:
        return [TriPoint(r, g, d) for r, g, d in zip(self.recall.tolist(), self.g.tolist(), self.d2.tolist())]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriReport):
            return NotImplemented
        return (
            np.array_equal(self.recall, other.recall)
            and np.array_equal(self.g, other.g)
            and np.array_equal(self.d2, other.d2)
            and (self.area1, self.area2, self.score, self.config)
            == (other.area1, other.area2, other.score, other.config)
        )


def _ratio_hat(tp, fp, n_pos: int, n_neg: int, mode: str):
    # products of counts stay below 2**53, so each quotient is a single rounding
    if mode == "odds_normalized":
        return np.asarray(tp, dtype=np.float64) * n_neg, np.asarray(fp, dtype=np.float64) * n_pos
    return np.asarray(tp, dtype=np.float64), np.asarray(fp, dtype=np.float64)


def _g(tp, fp, n_pos: int, n_neg: int, cfg: TriConfig) -> NDArray[np.float64]:
    num, den = _ratio_hat(tp, fp, n_pos, n_neg, cfg.ratio_mode)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = num / den
    r = np.where(den == 0, np.where(num > 0, np.inf, 0.0), r)
    return np.minimum(r, cfg.ratio_cap) / cfg.ratio_cap


def ratio_transform(tp: int, fp: int, n_pos: int, n_neg: int, cfg: TriConfig = TriConfig()) -> float:
    """Capped, optionally prevalence-normalised tp/fp mapped to [0, 1].

    >>> ratio_transform(4, 1, 10, 10), ratio_transform(4, 2, 10, 10)
    (0.04, 0.02)
    """
    if n_pos < 1 or n_neg < 1:
        raise DataError("ratio_transform needs n_pos >= 1 and n_neg >= 1")
    if not (0 <= tp <= n_pos and 0 <= fp <= n_neg):
        raise DataError(f"counts out of range: tp={tp}/{n_pos}, fp={fp}/{n_neg}")
    return float(_g(tp, fp, n_pos, n_neg, cfg))


def _dim2(fp: NDArray[np.int64], tn: NDArray[np.int64], clamp: bool) -> NDArray[np.float64]:
    with np.errstate(divide="ignore", invalid="ignore"):
        d2 = 1.0 - fp / tn
    d2 = np.where(tn == 0, -np.inf, d2)
    if clamp:
        d2 = np.clip(d2, 0.0, 1.0)
    return d2


def tri_evaluate(sweep: Sweep, cfg: TriConfig = TriConfig()) -> TriReport:
    g = _g(sweep.tp, sweep.fp, sweep.n_pos, sweep.n_neg, cfg)
    d2 = _dim2(sweep.fp, sweep.tn, cfg.clamp_dim2)

    # per-recall upper envelope, each dimension on its own
    starts = np.flatnonzero(np.concatenate(([True], sweep.tp[1:] != sweep.tp[:-1])))
    recall = sweep.tp[starts] / sweep.n_pos
    g_env = np.maximum.reduceat(g, starts)
    d2_env = np.maximum.reduceat(d2, starts)
    if recall[0] > 0.0:
        recall = np.concatenate(([0.0], recall))
        g_env = np.concatenate(([g[0]], g_env))
        d2_env = np.concatenate(([d2[0]], d2_env))
    if not np.isfinite(d2_env).all():
        raise DataError("unclamped dimension 2 diverges (tn = 0) on the recall envelope")

    area1 = _trapezoid(recall, g_env)
    area2 = _trapezoid(recall, d2_env)
    for a in (recall, g_env, d2_env):
        a.flags.writeable = False
    return TriReport(recall, g_env, d2_env, area1, area2, area1 * area2, cfg)
