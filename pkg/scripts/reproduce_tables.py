"""Run sets a-d and print AUPRC, AUROC and tri-score tables side by side.

    python scripts/reproduce_tables.py --n 10000 --reps 10 --out results/
"""

import argparse
from pathlib import Path

from ppimetric.cli import write_curve
from ppimetric.experiments import METRICS, SET_IDS, ExperimentSpec, emit_figure_points, run_experiment

PUBLISHED = {
    "auprc": {"a": (0.496, 0.557, 0.614, 0.656, 0.695), "b": (0.531, 0.557, 0.586, 0.611, 0.640),
              "c": (0.616, 0.606, 0.595, 0.584, 0.577), "d": (0.589, 0.606, 0.624, 0.637, 0.655)},
    "auroc": {"a": (0.819, 0.820, 0.819, 0.819, 0.820), "b": (0.811, 0.820, 0.829, 0.840, 0.850),
              "c": (0.889, 0.880, 0.870, 0.860, 0.849), "d": (0.883, 0.880, 0.877, 0.874, 0.874)},
    "tri_score": {"a": (0.247, 0.253, 0.251, 0.254, 0.252), "b": (0.236, 0.251, 0.273, 0.290, 0.308),
                  "c": (0.322, 0.311, 0.305, 0.292, 0.289), "d": (0.297, 0.314, 0.322, 0.332, 0.341)},
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, help="directory for per-row curve CSVs")
    args = ap.parse_args()

    tables = {s: run_experiment(ExperimentSpec.for_set(s, n=args.n, reps=args.reps, seed=args.seed)) for s in SET_IDS}
    for metric in METRICS:
        print(f"\n{metric}  (ours mean±std | published)")
        print("row  " + "  ".join(f"{'set ' + s:>22}" for s in SET_IDS))
        for i in range(5):
            cells = []
            for s in SET_IDS:
                t = tables[s]
                cells.append(f"{t.mean(metric)[i]:.3f}±{t.std(metric)[i]:.3f} | {PUBLISHED[metric][s][i]:.3f}")
            print(f"{i + 1:>3}  " + "  ".join(f"{c:>22}" for c in cells))

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for s in SET_IDS:
            spec = tables[s].spec
            for kind in ("roc", "pr", "tri"):
                for i, curve in enumerate(emit_figure_points(spec, kind), start=1):
                    with open(args.out / f"set_{s}_{kind}_row{i}.csv", "w") as fh:
                        write_curve(fh, curve, kind)
        print(f"\ncurve points written to {args.out}")


if __name__ == "__main__":
    main()
