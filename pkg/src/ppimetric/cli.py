"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 degenerate data (a class is
missing), 64 usage error, 66 input file not found, 73 output cannot be written.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import math
import re
import sys
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import __version__
from .core import DataError, Dataset, confusion_at_threshold, rates
from .curves import CurvePoints, auprc, auroc, pr_curve, roc_curve, threshold_sweep
from .experiments import METRICS, SET_IDS, ExperimentSpec, emit_figure_points, run_experiment
from .simulate import PredictorParams, SimConfig, n_positives, simulate
from .trimetric import TriConfig, TriReport, tri_evaluate

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_USAGE = 64
EXIT_NOINPUT = 66
EXIT_CANTCREATE = 73

HEADER = "score,label"
_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_RATIO_MODES = {"odds": "odds_normalized", "raw": "raw"}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """Shortest round-trip decimal; integral values print without a fraction."""
    x = float(x)
    if x.is_integer():
        return str(int(x))
    return repr(x)


def parse_score_file(raw: bytes) -> Dataset:
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        line = raw[: exc.start].count(b"\n") + 1
        raise CliError(EXIT_PARSE, f"line {line}: non-ASCII byte") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    if not lines or lines[0] != HEADER:
        raise CliError(EXIT_PARSE, f"line 1: expected header {HEADER!r}")
    scores, labels = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise CliError(EXIT_PARSE, f"line {lineno}: expected 'score,label', got {line!r}")
        score, label = parts
        if not _DECIMAL.fullmatch(score) or not math.isfinite(float(score)):
            raise CliError(EXIT_PARSE, f"line {lineno}: score {score!r} is not a finite decimal")
        if label not in ("0", "1"):
            raise CliError(EXIT_PARSE, f"line {lineno}: label {label!r} is not 0 or 1")
        scores.append(float(score))
        labels.append(label == "1")
    return Dataset(np.asarray(scores, dtype=np.float64), np.asarray(labels, dtype=bool))


def read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_NOINPUT, f"cannot read {path}: {exc.strerror}") from None


def load(path: str) -> tuple[Dataset, str]:
    raw = read_input(path)
    data = parse_score_file(raw)
    try:
        data.require_both_classes()
    except DataError as exc:
        raise CliError(EXIT_DEGENERATE, str(exc)) from None
    return data, hashlib.sha256(raw).hexdigest()


def tri_config(args: argparse.Namespace) -> TriConfig:
    return TriConfig(ratio_cap=args.ratio_cap, ratio_mode=_RATIO_MODES[args.ratio_mode])


def _marker(x: float | None) -> str:
    if x is None:
        return "undefined"
    if math.isinf(x):
        return "inf"
    return fmt(x)


def build_report(data: Dataset, fingerprint: str, threshold: float, cfg: TriConfig, interpolation: str) -> list[tuple[str, str]]:
    sweep = threshold_sweep(data)
    cm = confusion_at_threshold(data, threshold)
    rb = rates(cm)
    pr = pr_curve(sweep)
    tri = tri_evaluate(sweep, cfg)
    return [
        ("tool.name", "ppimetric"),
        ("tool.version", __version__),
        ("input.sha256", fingerprint),
        ("dataset.n", str(len(data))),
        ("dataset.n_pos", str(data.n_pos)),
        ("dataset.n_neg", str(data.n_neg)),
        ("dataset.prevalence", fmt(data.prevalence)),
        ("threshold", fmt(threshold)),
        ("confusion.tp", str(cm.tp)),
        ("confusion.fp", str(cm.fp)),
        ("confusion.fn", str(cm.fn)),
        ("confusion.tn", str(cm.tn)),
        ("rates.accuracy", _marker(rb.accuracy)),
        ("rates.sensitivity", _marker(rb.sensitivity)),
        ("rates.specificity", _marker(rb.specificity)),
        ("rates.precision", _marker(rb.precision)),
        ("rates.tp_fp_ratio", _marker(rb.tp_fp_ratio)),
        ("rates.fp_tn_ratio", _marker(rb.fp_tn_ratio)),
        ("auroc", fmt(auroc(roc_curve(sweep)))),
        ("auprc", fmt(auprc(pr, interpolation))),
        ("auprc.interpolation", interpolation),
        ("auprc.linear", fmt(auprc(pr, "linear"))),
        ("auprc.step", fmt(auprc(pr, "step"))),
        ("tri.area1", fmt(tri.area1)),
        ("tri.area2", fmt(tri.area2)),
        ("tri.score", fmt(tri.score)),
        ("tri.ratio_cap", fmt(cfg.ratio_cap)),
        ("tri.ratio_mode", cfg.ratio_mode),
        ("tri.clamp_dim2", str(cfg.clamp_dim2).lower()),
    ]


def write_curve(out: TextIO, curve: CurvePoints | TriReport, kind: str) -> None:
    if kind == "tri":
        out.write("recall,g,d2\n")
        for p in curve.points:
            out.write(f"{fmt(p.recall)},{fmt(p.g)},{fmt(p.d2)}\n")
        return
    out.write("fpr,tpr\n" if kind == "roc" else "recall,precision\n")
    for x, y in curve:
        out.write(f"{fmt(x)},{fmt(y)}\n")


def cmd_eval(args: argparse.Namespace) -> int:
    data, fingerprint = load(args.file)
    report = build_report(data, fingerprint, args.threshold, tri_config(args), args.pr_interpolation)
    sys.stdout.write("".join(f"{k}={v}\n" for k, v in report))
    return EXIT_OK


def cmd_curve(args: argparse.Namespace) -> int:
    data, _ = load(args.file)
    sweep = threshold_sweep(data)
    if args.kind == "roc":
        curve = roc_curve(sweep)
    elif args.kind == "pr":
        curve = pr_curve(sweep)
    else:
        curve = tri_evaluate(sweep, tri_config(args))
    write_curve(sys.stdout, curve, args.kind)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    for flag, value in (("--alpha", args.alpha), ("--beta", args.beta)):
        if not 0.0 <= value <= 1.0:
            raise CliError(EXIT_USAGE, f"{flag} must lie in [0, 1], got {value}")
    if not 0.0 < args.prevalence < 1.0:
        raise CliError(EXIT_USAGE, f"--prevalence must lie in (0, 1), got {args.prevalence}")
    if args.n < 2:
        raise CliError(EXIT_USAGE, f"--n must be at least 2, got {args.n}")
    k = n_positives(args.n, args.prevalence)
    if k < 1 or k == args.n:
        raise CliError(EXIT_USAGE, f"--n {args.n} with --prevalence {args.prevalence} leaves a class empty")
    if not 0 <= args.seed < 2**64:
        raise CliError(EXIT_USAGE, "--seed must be an unsigned 64-bit integer")
    data = simulate(PredictorParams(args.alpha, args.beta), SimConfig(args.n, args.prevalence, args.seed))
    lines = [HEADER] + [f"{fmt(s)},{int(y)}" for s, y in zip(data.scores.tolist(), data.labels.tolist())]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def table_rows(table, metric: str) -> Iterable[str]:
    yield "row,alpha,beta,prevalence,mean,std"
    for i, ((params, prevalence), mean, std) in enumerate(
        zip(table.spec.rows, table.mean(metric), table.std(metric)), start=1
    ):
        yield f"{i},{fmt(params.alpha)},{fmt(params.beta)},{fmt(prevalence)},{fmt(mean)},{fmt(std)}"


def cmd_experiment(args: argparse.Namespace) -> int:
    if args.n < 2 or args.reps < 1:
        raise CliError(EXIT_USAGE, "--n must be >= 2 and --reps >= 1")
    if not 0 <= args.seed < 2**64:
        raise CliError(EXIT_USAGE, "--seed must be an unsigned 64-bit integer")
    try:
        spec = ExperimentSpec.for_set(
            args.set,
            n=args.n,
            reps=args.reps,
            seed=args.seed,
            tri_config=tri_config(args),
            pr_interpolation=args.pr_interpolation,
        )
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    table = run_experiment(spec)

    files: dict[str, str] = {
        f"set_{args.set}_{metric}.csv": "\n".join(table_rows(table, metric)) + "\n" for metric in METRICS
    }
    if args.emit_curves:
        for kind in ("roc", "pr", "tri"):
            for i, curve in enumerate(emit_figure_points(spec, kind), start=1):
                buf = io.StringIO()
                write_curve(buf, curve, kind)
                files[f"set_{args.set}_{kind}_row{i}.csv"] = buf.getvalue()
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, body in files.items():
            (out_dir / name).write_text(body)
    except OSError as exc:
        raise CliError(EXIT_CANTCREATE, f"cannot write to {out_dir}: {exc.strerror}") from None

    sys.stdout.write("\n".join(table_rows(table, "tri_score")) + "\n")
    return EXIT_OK


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return value


def _positive_float(text: str) -> float:
    value = _finite_float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _add_tri_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ratio-cap", type=_positive_float, default=100.0)
    p.add_argument("--ratio-mode", choices=sorted(_RATIO_MODES), default="odds")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppimetric", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="full metric report for a score file")
    p.add_argument("file", help="score,label CSV ('-' for stdin)")
    p.add_argument("--threshold", type=_finite_float, default=0.5)
    p.add_argument("--pr-interpolation", choices=("linear", "step"), default="linear")
    _add_tri_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("curve", help="curve points as CSV")
    p.add_argument("file", help="score,label CSV ('-' for stdin)")
    p.add_argument("kind", choices=("roc", "pr", "tri"))
    _add_tri_flags(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("simulate", help="score file from the partial-oracle predictor")
    p.add_argument("--alpha", type=_finite_float, required=True)
    p.add_argument("--beta", type=_finite_float, required=True)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--prevalence", type=_finite_float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("experiment", help="run benchmark set a, b, c or d")
    p.add_argument("--set", choices=SET_IDS, required=True)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pr-interpolation", choices=("linear", "step"), default="linear")
    _add_tri_flags(p)
    p.add_argument("--out-dir", default="results")
    p.add_argument("--emit-curves", action="store_true", help="also write per-row curve point files")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ppimetric: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
