import json

import numpy as np
import pytest

from spcreg.cli import main


def run(args):
    return main([str(a) for a in args])


def strip_timestamp(path):
    doc = json.loads(path.read_text())
    doc.pop("timestamp")
    return json.dumps(doc, sort_keys=True)


@pytest.fixture()
def case_csv(tmp_path):
    out = tmp_path / "sim"
    assert run(["simulate", "--case", "1a", "--n", 60, "--sigma", "0.1",
                "--seed", 3, "--out-dir", out]) == 0
    return out


class TestSimulate:
    def test_files_written_and_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert run(["simulate", "--case", "1b", "--n", 30, "--seed", 5,
                        "--out-dir", out]) == 0
        assert (a / "train.csv").read_bytes() == (b / "train.csv").read_bytes()
        assert (a / "test.csv").read_bytes() == (b / "test.csv").read_bytes()
        meta = json.loads((a / "case.json").read_text())
        assert meta["p"] == 10
        assert meta["manifest"]["subcommand"] == "simulate"

    def test_unknown_case_exits_2(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["simulate", "--case", "zz", "--n", 30, "--out-dir", tmp_path])
        assert exc.value.code == 2  # argparse rejects the choice


class TestFit:
    def test_huge_penalties_give_null_model(self, case_csv, tmp_path, capsys):
        out = tmp_path / "fit"
        code = run(["fit", case_csv / "train.csv", "--response", "y", "--k", 2,
                    "--lambda-beta", 1e12, "--lambda-gamma", 1e12,
                    "--out-dir", out])
        assert code == 0
        doc = json.loads((out / "model.json").read_text())
        model = doc["model"]
        assert np.all(np.asarray(model["b"]) == 0.0)
        assert np.all(np.asarray(model["gamma"]) == 0.0)
        y = np.loadtxt(case_csv / "train.csv", delimiter=",", skiprows=1)[:, -1]
        assert model["gamma0"] == pytest.approx(float(y.mean()), rel=1e-12)
        assert "selected components" in capsys.readouterr().out

    def test_bad_csv_exits_2_with_location(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,y\n1,2\nwat,4\n")
        code = run(["fit", bad, "--response", "y", "--k", 1,
                    "--lambda-beta", 1, "--lambda-gamma", 1,
                    "--out-dir", tmp_path])
        assert code == 2
        err = capsys.readouterr().err
        assert "row 3" in err and "column 1" in err

    def test_response_only_file_exits_2(self, tmp_path):
        lonely = tmp_path / "only.csv"
        lonely.write_text("y\n1\n2\n")
        assert run(["fit", lonely, "--response", "y", "--k", 1,
                    "--lambda-beta", 1, "--lambda-gamma", 1,
                    "--out-dir", tmp_path]) == 2

    def test_nonconvergence_exits_3(self, case_csv, tmp_path, capsys):
        out = tmp_path / "fit"
        code = run(["fit", case_csv / "train.csv", "--response", "y", "--k", 2,
                    "--lambda-beta", 0.01, "--lambda-gamma", 0.01,
                    "--max-sweeps", 2, "--out-dir", out])
        assert code == 3
        assert "did not converge" in capsys.readouterr().err
        assert (out / "model.json").exists()  # trace still written

    def test_adaptive_flag(self, case_csv, tmp_path):
        out = tmp_path / "afit"
        assert run(["fit", case_csv / "train.csv", "--response", "y", "--k", 1,
                    "--lambda-beta", 5, "--lambda-gamma", 0.5, "--adaptive",
                    "--out-dir", out]) == 0
        doc = json.loads((out / "model.json").read_text())
        assert doc["manifest"]["parameters"]["adaptive"] is True


class TestCv:
    def test_deterministic_output(self, case_csv, tmp_path):
        # identical flags twice (same out-dir; snapshot between overwrites)
        out = tmp_path / "c"
        args = ["cv", case_csv / "train.csv", "--response", "y",
                "--k", 1, "--seed", 7, "--out-dir", out]
        assert run(args) == 0
        first = strip_timestamp(out / "cv.json")
        assert run(args) == 0
        assert strip_timestamp(out / "cv.json") == first

    def test_grid_choice_recorded_and_distinct(self, case_csv, tmp_path):
        docs = {}
        for grid in ("linear", "log"):
            out = tmp_path / grid
            assert run(["cv", case_csv / "train.csv", "--response", "y",
                        "--k", 1, "--grid", grid, "--out-dir", out]) == 0
            docs[grid] = json.loads((out / "cv.json").read_text())
        assert docs["linear"]["manifest"]["parameters"]["grid"] == "linear"
        assert docs["log"]["manifest"]["parameters"]["grid"] == "log"
        lin = docs["linear"]["cv"]["lambda_beta_grid"]
        log = docs["log"]["cv"]["lambda_beta_grid"]
        assert lin != log
        assert lin[0] == pytest.approx(log[0])    # shared endpoints
        assert lin[-1] == pytest.approx(log[-1])

    def test_adaptive_pipeline_recovers_first_predictor(self, case_csv, tmp_path):
        out = tmp_path / "acv"
        assert run(["cv", case_csv / "train.csv", "--response", "y", "--k", 1,
                    "--adaptive", "--seed", 1, "--out-dir", out]) == 0
        doc = json.loads((out / "cv.json").read_text())
        comp = np.asarray(doc["model"]["composite_coefficients"])
        assert comp[0] != 0.0  # x1 carries the signal
        assert "pilot_cv" in doc and "adaptive_cv" in doc


class TestPredict:
    def test_round_trip_accuracy(self, case_csv, tmp_path):
        fit_dir = tmp_path / "fit"
        assert run(["cv", case_csv / "train.csv", "--response", "y", "--k", 1,
                    "--adaptive", "--out-dir", fit_dir]) == 0
        pred_dir = tmp_path / "pred"
        assert run(["predict", fit_dir / "cv.json", case_csv / "test.csv",
                    "--response", "y", "--out-dir", pred_dir]) == 0
        pred = np.loadtxt(pred_dir / "predictions.csv", skiprows=1)
        test = np.loadtxt(case_csv / "test.csv", delimiter=",", skiprows=1)
        mse = float(np.mean((test[:, -1] - pred) ** 2))
        assert mse < 0.05  # near the noise floor for case 1a

    def test_wrong_width_exits_2(self, case_csv, tmp_path):
        fit_dir = tmp_path / "fit"
        assert run(["fit", case_csv / "train.csv", "--response", "y", "--k", 1,
                    "--lambda-beta", 1, "--lambda-gamma", 1,
                    "--out-dir", fit_dir]) == 0
        narrow = tmp_path / "narrow.csv"
        narrow.write_text("x1,x2\n1,2\n3,4\n")
        assert run(["predict", fit_dir / "model.json", narrow,
                    "--out-dir", tmp_path]) == 2


class TestBench:
    def test_csv_payload_byte_identical_across_runs(self, tmp_path):
        payloads = []
        for tag in ("b1", "b2"):
            out = tmp_path / tag
            assert run(["bench", "--cases", "1a", "--methods", "spcr,pcr",
                        "--R", 2, "--k", 1, "--n", 40, "--seed", 0,
                        "--out-dir", out]) == 0
            payloads.append((out / "bench_replications.csv").read_bytes())
        assert payloads[0] == payloads[1]

    def test_unknown_case_exits_2(self, tmp_path, capsys):
        assert run(["bench", "--cases", "1a,zz", "--R", 1, "--k", 1,
                    "--out-dir", tmp_path]) == 2
        assert "unknown case" in capsys.readouterr().err

    def test_report_contains_references_and_table(self, tmp_path, capsys):
        out = tmp_path / "rep"
        assert run(["bench", "--cases", "1b", "--methods", "aspcr", "--R", 1,
                    "--k", 1, "--n", 50, "--sigma", "0.1", "--seed", 2,
                    "--out-dir", out]) == 0
        doc = json.loads((out / "bench_report.json").read_text())
        ref = doc["published_references"]["1b"]["mse"]["aspcr"]
        assert ref["mean"] == pytest.approx(1.250e-2)
        console = capsys.readouterr().out
        assert "published" in console and "aspcr" in console
