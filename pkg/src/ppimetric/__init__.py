"""Binary classifier evaluation: ROC, precision-recall and a purity-focused 3-D metric."""

__version__ = "0.1.0"

from .core import ConfusionMatrix, DataError, Dataset, LabeledScore, RateBundle, confusion_at_threshold, rates
from .curves import (
    ConfigError,
    CurvePoints,
    Sweep,
    SweepPoint,
    auprc,
    auroc,
    auroc_pairwise,
    pr_curve,
    roc_curve,
    threshold_sweep,
)
from .experiments import ExperimentSpec, MetricTable, emit_figure_points, grid_for_set, run_experiment
from .simulate import PredictorParams, SimConfig, analytic_auroc, gen_labels, gen_scores, simulate
from .trimetric import TriConfig, TriPoint, TriReport, ratio_transform, tri_evaluate
