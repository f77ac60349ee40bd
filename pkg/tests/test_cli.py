import io
import subprocess
import sys

import pytest

from ppimetric.cli import main

FOUR_CSV = "score,label\n0.9,1\n0.7,0\n0.6,1\n0.2,0\n"
PERFECT_CSV = "score,label\n1,1\n1,1\n0,0\n0,0\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(text):
    return dict(line.split("=", 1) for line in text.splitlines())


@pytest.fixture
def write(tmp_path):
    def _write(body, name="scores.csv", mode="w"):
        path = tmp_path / name
        if mode == "wb":
            path.write_bytes(body)
        else:
            path.write_text(body)
        return str(path)

    return _write


class TestEval:
    def test_four(self, capsys, write):
        code, out, _ = run(capsys, "eval", write(FOUR_CSV))
        r = report(out)
        assert code == 0
        assert float(r["auroc"]) == 0.75
        assert float(r["auprc.linear"]) == pytest.approx(0.9167, abs=1e-4)
        assert float(r["tri.score"]) == pytest.approx(0.56625, abs=1e-12)
        assert r["dataset.n_pos"] == "2" and r["tri.ratio_mode"] == "odds_normalized"
        assert len(r["input.sha256"]) == 64

    def test_perfect(self, capsys, write):
        r = report(run(capsys, "eval", write(PERFECT_CSV))[1])
        assert r["auroc"] == r["auprc"] == r["tri.score"] == "1"

    def test_flags_echoed(self, capsys, write):
        r = report(run(capsys, "eval", write(FOUR_CSV), "--threshold", "0.95", "--ratio-mode", "raw",
                       "--ratio-cap", "10", "--pr-interpolation", "step")[1])
        assert r["threshold"] == "0.95" and r["confusion.tp"] == "0"
        assert r["rates.precision"] == "undefined" and r["rates.tp_fp_ratio"] == "undefined"
        assert r["tri.ratio_mode"] == "raw" and r["tri.ratio_cap"] == "10"
        assert r["auprc"] == r["auprc.step"]

    def test_crlf(self, capsys, write):
        path = write(FOUR_CSV.replace("\n", "\r\n"))
        assert report(run(capsys, "eval", path)[1])["auroc"] == "0.75"

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(FOUR_CSV.encode())))
        assert report(run(capsys, "eval", "-")[1])["auroc"] == "0.75"

    def test_bad_label_cites_line(self, capsys, write):
        body = "score,label\n" + "0.5,1\n0.4,0\n" * 2 + "0.3,1\n0.2,2\n"
        code, _, err = run(capsys, "eval", write(body))
        assert code == 2 and "line 7" in err

    @pytest.mark.parametrize("body", [
        "0.9,1\n0.1,0\n",
        "score,label\n0.9\n",
        "score,label\nnan,1\n0.1,0\n",
        "score,label\n1_0,1\n0.1,0\n",
        "score,label\n0.9,1\n\n0.1,0\n",
    ])
    def test_malformed(self, capsys, write, body):
        assert run(capsys, "eval", write(body))[0] == 2

    def test_non_ascii(self, capsys, write):
        assert run(capsys, "eval", write("score,label\n0.9,1\n0.\xc3\xa9,0\n".encode("latin-1"), mode="wb"))[0] == 2

    def test_single_class(self, capsys, write):
        assert run(capsys, "eval", write("score,label\n0.9,1\n0.1,1\n"))[0] == 3
        assert run(capsys, "curve", write("score,label\n", name="empty.csv"), "roc")[0] == 3

    def test_usage_errors(self, capsys, write):
        path = write(FOUR_CSV)
        for argv in (["eval", path, "--bogus"], ["eval", path, "--threshold", "inf"],
                     ["eval", path, "--ratio-cap", "-1"], ["curve", path, "cost"], ["frobnicate"]):
            with pytest.raises(SystemExit) as exc:
                main(argv)
            assert exc.value.code == 64

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "eval", str(tmp_path / "nope.csv"))[0] == 66


class TestCurve:
    def test_roc(self, capsys, write):
        out = run(capsys, "curve", write(FOUR_CSV), "roc")[1].splitlines()
        assert out == ["fpr,tpr", "0,0", "0,0.5", "0.5,0.5", "0.5,1", "1,1"]

    def test_pr_perfect(self, capsys, write):
        assert run(capsys, "curve", write(PERFECT_CSV), "pr")[1].splitlines() == ["recall,precision", "0,1", "1,1"]

    def test_tri(self, capsys, write):
        out = run(capsys, "curve", write(FOUR_CSV), "tri")[1].splitlines()
        assert out == ["recall,g,d2", "0,1,1", "0.5,1,1", "1,0.02,0"]

    def test_precision_digits(self, capsys, write):
        out = run(capsys, "curve", write(FOUR_CSV), "pr")[1].splitlines()
        assert float(out[-1].split(",")[1]) == 2 / 3


class TestSimulate:
    def test_oracle_scores(self, capsys):
        out = run(capsys, "simulate", "--alpha", "1", "--beta", "1", "--n", "50")[1].splitlines()
        assert out[0] == "score,label"
        assert all(line in ("1,1", "0,0") for line in out[1:])

    def test_exact_positive_count(self, capsys):
        out = run(capsys, "simulate", "--alpha", "0.1", "--beta", "0.1", "--n", "100", "--prevalence", "0.1")[1]
        assert sum(line.endswith(",1") for line in out.splitlines()[1:]) == 10

    @pytest.mark.parametrize("flag,value", [("--alpha", "1.5"), ("--beta", "-0.1"), ("--prevalence", "1")])
    def test_out_of_range(self, capsys, flag, value):
        argv = {"--alpha": "0.5", "--beta": "0.5", "--prevalence": "0.1"}
        argv[flag] = value
        code, _, err = run(capsys, "simulate", *[x for kv in argv.items() for x in kv])
        assert code == 64 and flag in err

    def test_round_trip(self, capsys, write):
        body = run(capsys, "simulate", "--alpha", "0.2", "--beta", "0.3", "--n", "3000", "--seed", "9")[1]
        path = write(body)
        code, out, _ = run(capsys, "eval", path)
        assert code == 0 and 0.8 < float(report(out)["auroc"]) < 0.95
        for kind in ("roc", "pr", "tri"):
            assert run(capsys, "curve", path, kind)[0] == 0


class TestExperiment:
    def test_writes_tables(self, capsys, tmp_path):
        out_dir = tmp_path / "res"
        code, out, _ = run(capsys, "experiment", "--set", "d", "--n", "2000", "--reps", "2",
                           "--out-dir", str(out_dir), "--emit-curves")
        assert code == 0
        assert out.splitlines()[0] == "row,alpha,beta,prevalence,mean,std"
        assert len(out.splitlines()) == 6
        for metric in ("auprc", "auroc", "tri_score"):
            lines = (out_dir / f"set_d_{metric}.csv").read_text().splitlines()
            assert len(lines) == 6
        assert (out_dir / "set_d_tri_row5.csv").read_text().startswith("recall,g,d2\n")
        assert (out_dir / "set_d_roc_row1.csv").read_text().startswith("fpr,tpr\n0,0\n")
        assert out == (out_dir / "set_d_tri_score.csv").read_text()

    def test_unwritable(self, capsys, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        code = run(capsys, "experiment", "--set", "a", "--n", "200", "--reps", "1", "--out-dir", str(blocker / "sub"))[0]
        assert code == 73

    def test_bad_set(self):
        with pytest.raises(SystemExit) as exc:
            main(["experiment", "--set", "z"])
        assert exc.value.code == 64


def test_byte_identical_subprocess_runs(tmp_path):
    cmd = [sys.executable, "-m", "ppimetric", "simulate", "--alpha", "0.1", "--beta", "0.1", "--n", "500", "--seed", "4"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == subprocess.run(cmd, capture_output=True, check=True).stdout
    path = tmp_path / "s.csv"
    path.write_bytes(first)
    ev = [sys.executable, "-m", "ppimetric", "eval", str(path)]
    assert subprocess.run(ev, capture_output=True, check=True).stdout == subprocess.run(ev, capture_output=True, check=True).stdout
