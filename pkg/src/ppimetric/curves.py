"""Threshold sweeps, ROC and precision-recall curves, and their areas."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np
from numpy.typing import NDArray

from .core import ConfusionMatrix, DataError, Dataset, RateBundle, rates

Interpolation = Literal["linear", "step"]
INTERPOLATIONS = ("linear", "step")


class ConfigError(ValueError):
    """An option value outside its allowed set."""


@dataclass(frozen=True)
class SweepPoint:
    threshold: float
    cm: ConfusionMatrix
    rates: RateBundle


@dataclass(frozen=True, eq=False)
class Sweep:
    """Cumulative counts at every distinct score, highest threshold first.

    ``tp[i]`` and ``fp[i]`` count the instances with score ``>= thresholds[i]``.
    The all-negative predictor is never part of a sweep.
    """

    thresholds: NDArray[np.float64]
    tp: NDArray[np.int64]
    fp: NDArray[np.int64]
    n_pos: int
    n_neg: int

    def __len__(self) -> int:
        return int(self.thresholds.size)

    @property
    def fn(self) -> NDArray[np.int64]:
        return self.n_pos - self.tp

    @property
    def tn(self) -> NDArray[np.int64]:
        return self.n_neg - self.fp

    def confusion(self, i: int) -> ConfusionMatrix:
        tp, fp = int(self.tp[i]), int(self.fp[i])
        return ConfusionMatrix(tp=tp, fp=fp, fn=self.n_pos - tp, tn=self.n_neg - fp)

    @property
    def points(self) -> list[SweepPoint]:
        return list(self)

    def __iter__(self) -> Iterator[SweepPoint]:
        for i in range(len(self)):
            cm = self.confusion(i)
            yield SweepPoint(float(self.thresholds[i]), cm, rates(cm))


@dataclass(frozen=True, eq=False)
class CurvePoints:
    x: NDArray[np.float64]
    y: NDArray[np.float64]

    def __len__(self) -> int:
        return int(self.x.size)

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return zip(self.x.tolist(), self.y.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurvePoints):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)


def _readonly(a: NDArray) -> NDArray:
    a.flags.writeable = False
    return a


def threshold_sweep(data: Dataset) -> Sweep:
    data.require_both_classes()
    order = np.argsort(-data.scores, kind="stable")
    s = data.scores[order]
    y = data.labels[order]
    ctp = np.cumsum(y, dtype=np.int64)
    cfp = np.arange(1, y.size + 1, dtype=np.int64) - ctp
    # last index of each run of equal scores: ties flip together
    ends = np.flatnonzero(np.append(s[1:] != s[:-1], True))
    return Sweep(
        thresholds=_readonly(s[ends].copy()),
        tp=_readonly(ctp[ends]),
        fp=_readonly(cfp[ends]),
        n_pos=data.n_pos,
        n_neg=data.n_neg,
    )


def roc_curve(sweep: Sweep) -> CurvePoints:
    """(FPR, TPR) per sweep point, anchored at (0, 0)."""
    fpr = np.concatenate(([0.0], sweep.fp / sweep.n_neg))
    tpr = np.concatenate(([0.0], sweep.tp / sweep.n_pos))
    return CurvePoints(_readonly(fpr), _readonly(tpr))


def _trapezoid(x: NDArray[np.float64], y: NDArray[np.float64]) -> float:
    return float(np.sum(np.diff(x) * (y[1:] + y[:-1])) / 2.0)


def _check_unit_span(curve: CurvePoints, what: str) -> None:
    if len(curve) < 2 or curve.x[0] != 0.0 or curve.x[-1] != 1.0:
        raise DataError(f"{what} curve must span x from 0 to 1")
    if np.any(np.diff(curve.x) < 0):
        raise DataError(f"{what} curve x must be non-decreasing")


def auroc(curve: CurvePoints) -> float:
    _check_unit_span(curve, "ROC")
    return _trapezoid(curve.x, curve.y)


def auroc_pairwise(data: Dataset, chunk: int = 4096) -> float:
    """Fraction of (positive, negative) pairs ranked correctly, ties counting half.

    Brute force over every pair; kept independent of the sweep on purpose.
    """
    data.require_both_classes()
    pos = data.scores[data.labels]
    neg = data.scores[~data.labels]
    wins = 0
    ties = 0
    for start in range(0, pos.size, chunk):
        block = pos[start : start + chunk, None]
        wins += int(np.count_nonzero(block > neg[None, :]))
        ties += int(np.count_nonzero(block == neg[None, :]))
    return (wins + 0.5 * ties) / (pos.size * neg.size)


def pr_curve(sweep: Sweep) -> CurvePoints:
    """(recall, precision) upper envelope, one point per distinct recall.

    A constant-precision anchor is prepended at recall 0 unless the sweep
    already starts there.
    """
    precision = sweep.tp / (sweep.tp + sweep.fp)
    # tp is non-decreasing along the sweep, so equal recalls are contiguous
    starts = np.flatnonzero(np.concatenate(([True], sweep.tp[1:] != sweep.tp[:-1])))
    best = np.maximum.reduceat(precision, starts)
    recall = sweep.tp[starts] / sweep.n_pos
    if recall[0] > 0.0:
        recall = np.concatenate(([0.0], recall))
        best = np.concatenate(([precision[0]], best))
    return CurvePoints(_readonly(recall), _readonly(best))


def auprc(curve: CurvePoints, interpolation: Interpolation = "linear") -> float:
    if interpolation not in INTERPOLATIONS:
        raise ConfigError(f"unknown interpolation {interpolation!r}; expected one of {INTERPOLATIONS}")
    _check_unit_span(curve, "PR")
    if interpolation == "linear":
        return _trapezoid(curve.x, curve.y)
    return float(np.sum(np.diff(curve.x) * curve.y[1:]))
