"""Partial-oracle predictor P(alpha, beta) for synthetic benchmarks.

A positive gets score 1.0 with probability ``alpha`` and otherwise a draw
from U[0.25, 1]; a negative gets 0.0 with probability ``beta`` and otherwise
a draw from U[0, 0.75].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .core import Dataset
from .curves import ConfigError

POS_LOW, POS_HIGH = 0.25, 1.0
NEG_LOW, NEG_HIGH = 0.0, 0.75
# P(U[0.25, 1] > U[0, 0.75]); see scripts/check_overlap_constant.py
OVERLAP_WIN = 7.0 / 9.0

_U53 = 2.0**-53


@dataclass(frozen=True)
class PredictorParams:
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ConfigError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class SimConfig:
    n: int
    prevalence: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0.0 < self.prevalence < 1.0):
            raise ConfigError(f"prevalence must lie in (0, 1), got {self.prevalence!r}")
        if not (0 <= self.seed < 2**64):
            raise ConfigError("seed must be an unsigned 64-bit integer")
        n_pos = n_positives(self.n, self.prevalence)
        if n_pos < 1 or self.n - n_pos < 1:
            raise ConfigError(
                f"n={self.n} at prevalence {self.prevalence} leaves a class empty"
            )


def n_positives(n: int, prevalence: float) -> int:
    """round(n * prevalence), halves rounded up."""
    return int(math.floor(n * prevalence + 0.5))


def gen_labels(cfg: SimConfig) -> NDArray[np.bool_]:
    """Exact class counts, positives first."""
    labels = np.zeros(cfg.n, dtype=bool)
    labels[: n_positives(cfg.n, cfg.prevalence)] = True
    return labels


def _uniform_pairs(n: int, seed: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    # Philox is counter-based: raw word j depends only on (key, j), so the two
    # words 2i and 2i + 1 belonging to instance i never depend on other instances.
    raw = np.random.Philox(key=seed).random_raw(2 * n)
    u = (raw >> np.uint64(11)).astype(np.float64) * _U53
    return u[0::2], u[1::2]


def gen_scores(labels: NDArray[np.bool_], params: PredictorParams, seed: int) -> Dataset:
    labels = np.asarray(labels, dtype=bool)
    u_det, u_score = _uniform_pairs(labels.size, seed)
    pos_scores = np.where(u_det < params.alpha, 1.0, POS_LOW + (POS_HIGH - POS_LOW) * u_score)
    neg_scores = np.where(u_det < params.beta, 0.0, NEG_LOW + (NEG_HIGH - NEG_LOW) * u_score)
    return Dataset(np.where(labels, pos_scores, neg_scores), labels)


def simulate(params: PredictorParams, cfg: SimConfig) -> Dataset:
    return gen_scores(gen_labels(cfg), params, cfg.seed)


def analytic_auroc(params: PredictorParams) -> float:
    """Population AUROC of P(alpha, beta).

    Only a pair of non-deterministic instances can be mis-ranked, and such a
    pair is ordered correctly with probability 7/9.
    """
    return 1.0 - (1.0 - params.alpha) * (1.0 - params.beta) * (1.0 - OVERLAP_WIN)
