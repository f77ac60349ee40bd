"""Datasets, confusion matrices and scalar rates for binary classifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray


class DataError(ValueError):
    """Input data cannot be evaluated (empty, non-finite, missing a class)."""


@dataclass(frozen=True)
class LabeledScore:
    score: float
    label: bool

    def __post_init__(self) -> None:
        if not math.isfinite(self.score):
            raise DataError(f"score must be finite, got {self.score!r}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """Scores paired with gold-standard labels.

    Stored as two read-only arrays; ``items`` rebuilds the per-instance view.
    """

    scores: NDArray[np.float64]
    labels: NDArray[np.bool_]

    def __post_init__(self) -> None:
        scores = np.array(self.scores, dtype=np.float64)
        labels = np.asarray(self.labels)
        if labels.dtype != np.bool_:
            if not np.isin(labels, (0, 1)).all():
                raise DataError("labels must be binary (0/1 or bool)")
            labels = labels.astype(bool)
        else:
            labels = labels.copy()
        if scores.ndim != 1 or scores.shape != labels.shape:
            raise DataError("scores and labels must be 1-d arrays of equal length")
        if not np.isfinite(scores).all():
            raise DataError("scores must be finite")
        scores.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, bool | int]]) -> "Dataset":
        pairs = list(pairs)
        if not pairs:
            return cls(np.empty(0), np.empty(0, dtype=bool))
        scores, labels = zip(*pairs)
        return cls(np.asarray(scores, dtype=np.float64), np.asarray(labels).astype(bool))

    @property
    def items(self) -> list[LabeledScore]:
        return [LabeledScore(float(s), bool(y)) for s, y in zip(self.scores, self.labels)]

    @property
    def n_pos(self) -> int:
        return int(self.labels.sum())

    @property
    def n_neg(self) -> int:
        return int(self.labels.size - self.labels.sum())

    @property
    def prevalence(self) -> float:
        return self.n_pos / len(self)

    def __len__(self) -> int:
        return int(self.labels.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return np.array_equal(self.scores, other.scores) and np.array_equal(
            self.labels, other.labels
        )

    def require_both_classes(self) -> None:
        if self.n_pos < 1 or self.n_neg < 1:
            raise DataError(
                f"need at least one positive and one negative (got {self.n_pos} / {self.n_neg})"
            )


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise DataError(f"confusion counts must be non-negative: {self}")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class RateBundle:
    """Scalar rates of one confusion matrix.

    ``None`` marks an undefined quantity (0/0); ``math.inf`` marks x/0 with x > 0.
    """

    accuracy: float
    sensitivity: Optional[float]
    specificity: Optional[float]
    precision: Optional[float]
    tp_fp_ratio: Optional[float]
    fp_tn_ratio: Optional[float]

    @property
    def recall(self) -> Optional[float]:
        return self.sensitivity


def _ratio(num: int, den: int) -> Optional[float]:
    if den > 0:
        return num / den
    return math.inf if num > 0 else None


def _fraction(num: int, den: int) -> Optional[float]:
    return num / den if den > 0 else None


def confusion_at_threshold(data: Dataset, threshold: float) -> ConfusionMatrix:
    """Counts when every score ``>= threshold`` is called positive."""
    if len(data) == 0:
        raise DataError("empty dataset")
    if not math.isfinite(threshold):
        raise DataError(f"threshold must be finite, got {threshold!r}")
    predicted = data.scores >= threshold
    tp = int(np.count_nonzero(predicted & data.labels))
    fp = int(np.count_nonzero(predicted & ~data.labels))
    return ConfusionMatrix(tp=tp, fp=fp, fn=data.n_pos - tp, tn=data.n_neg - fp)


def rates(cm: ConfusionMatrix) -> RateBundle:
    if cm.total == 0:
        raise DataError("all-zero confusion matrix")
    return RateBundle(
        accuracy=(cm.tp + cm.tn) / cm.total,
        sensitivity=_fraction(cm.tp, cm.tp + cm.fn),
        specificity=_fraction(cm.tn, cm.fp + cm.tn),
        precision=_fraction(cm.tp, cm.tp + cm.fp),
        tp_fp_ratio=_ratio(cm.tp, cm.fp),
        fp_tn_ratio=_ratio(cm.fp, cm.tn),
    )


def as_dataset(scores: ArrayLike, labels: ArrayLike) -> Dataset:
    return Dataset(np.asarray(scores, dtype=np.float64), np.asarray(labels))
