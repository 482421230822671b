"""
Integration tests for the command-line entry point.

Every command runs against the quick configuration and writes into a
temporary output directory.
"""

from pathlib import Path

import pandas as pd
import pytest

import main
from action_diagnosis.execution_model.model import load_execution_model
from tests.fixtures.configs import SYMMETRIC_RELATIONS, write_config


@pytest.fixture
def run(quick_config_file, tmp_path):
    """Run main() with the quick configuration; returns (exit code, output dir)."""
    def _run(*args, out="run", config=None):
        out_dir = tmp_path / out
        code = main.main(["--config", config or quick_config_file, "--out", str(out_dir),
                          *args])
        return code, out_dir
    return _run


def failed_ids(campaign_path: Path):
    frame = pd.read_csv(campaign_path)
    return frame.loc[frame["success"] == 0, "id"].tolist()


class TestSimulate:
    """Test the simulate command."""

    def test_writes_campaign(self, run, capsys):
        code, out = run("simulate")

        assert code == 0
        frame = pd.read_csv(out / "campaign.csv")
        assert list(frame.columns) == ["id", "x", "y", "z", "success", "causes"]
        assert len(frame) == 40
        assert frame["id"].tolist() == list(range(40))
        assert "✓ wrote" in capsys.readouterr().out

    def test_count_and_seed(self, run):
        _, first = run("simulate", "--count", "10", out="a")
        _, second = run("--seed", "12", "simulate", "--count", "10", out="b")

        assert len(pd.read_csv(first / "campaign.csv")) == 10
        assert (first / "campaign.csv").read_bytes() != (second / "campaign.csv").read_bytes()

    def test_rerun_is_byte_identical(self, run):
        _, first = run("simulate", out="a")
        _, second = run("simulate", out="b")
        assert (first / "campaign.csv").read_bytes() == (second / "campaign.csv").read_bytes()

    def test_aimed_campaign(self, run, tmp_path):
        aimed = write_config(tmp_path / "aimed.ini", {"campaign": {"aimed": "true"},
                                                      "scene": {"pose_noise_std": "0.01"}})
        code, out = run("simulate", config=aimed)

        assert code == 0
        frame = pd.read_csv(out / "campaign.csv")
        assert frame["x"].between(0.06, 0.11).all()
        assert (frame["y"].abs() <= 0.06).all()
        assert (frame["z"].abs() <= 0.018).all()
        assert (frame["success"] == 0).any()

    def test_aimed_campaign_without_noise(self, run, tmp_path):
        aimed = write_config(tmp_path / "aimed.ini", {"campaign": {"aimed": "true"}})
        code, out = run("simulate", config=aimed)

        assert code == 1
        assert not (out / "campaign.csv").exists()


class TestDiagnoseAndCorrect:
    """Test the diagnose and correct commands."""

    def test_diagnose_all_failures(self, run):
        _, simulated = run("simulate", out="sim")
        code, out = run("diagnose")

        assert code == 0
        frame = pd.read_csv(out / "diagnoses.csv")
        assert frame["failure_id"].tolist() == failed_ids(simulated / "campaign.csv")

    def test_stored_campaign_matches_regenerated(self, run):
        _, simulated = run("simulate", out="sim")
        _, regenerated = run("diagnose", out="a")
        _, stored = run("diagnose", "--campaign", str(simulated / "campaign.csv"), out="b")

        assert (regenerated / "diagnoses.csv").read_bytes() == \
            (stored / "diagnoses.csv").read_bytes()

    def test_single_failure(self, run):
        _, simulated = run("simulate", out="sim")
        target = failed_ids(simulated / "campaign.csv")[0]

        code, out = run("diagnose", "--failure-id", str(target))

        assert code == 0
        assert pd.read_csv(out / "diagnoses.csv")["failure_id"].tolist() == [target]

    def test_unknown_failure_id(self, run, capsys):
        code, _ = run("diagnose", "--failure-id", "100000")

        assert code == 3
        assert "DATA ERROR" in capsys.readouterr().err

    def test_correct_writes_one_row_per_failure(self, run):
        _, simulated = run("simulate", out="sim")
        code, out = run("correct", "--kappa", "4")

        assert code == 0
        frame = pd.read_csv(out / "corrections.csv")
        assert frame["failure_id"].tolist() == failed_ids(simulated / "campaign.csv")

    def test_correct_rerun_is_byte_identical(self, run):
        _, first = run("correct", out="a")
        _, second = run("correct", out="b")
        assert (first / "corrections.csv").read_bytes() == \
            (second / "corrections.csv").read_bytes()


class TestSweep:
    """Test the sweep command."""

    def test_kmax_sweep(self, run):
        code, out = run("sweep", "--param", "kmax")

        assert code == 0
        summary = pd.read_csv(out / "sweep_samples_per_region.csv")
        assert summary["value"].tolist() == [1, 2, 5, 10, 22, 46, 100, 215, 464, 1000]
        assert (out / "sweep_samples_per_region_raw.csv").exists()
        assert (out / "sweep_samples_per_region_timing.csv").exists()
        assert not (out / "diagnoses_vs_samples_per_region.csv").exists()

    def test_anchor_sweep_with_plot_data(self, run):
        _, first = run("sweep", "--param", "anchor", "--emit-plot-data", out="a")
        _, second = run("sweep", "--param", "anchor", "--emit-plot-data", out="b")

        plot = first / "diagnoses_vs_anchor_ratio.csv"
        assert plot.exists()
        for name in ("sweep_anchor_ratio.csv", "sweep_anchor_ratio_raw.csv",
                     "diagnoses_vs_anchor_ratio.csv"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_unknown_parameter(self, run):
        with pytest.raises(SystemExit):
            run("sweep", "--param", "beta")


class TestRetrainAndEvaluate:
    """Test the retrain and eval commands."""

    def test_retrain(self, run):
        code, out = run("retrain", "--kappa", "2")

        assert code == 0
        reference = load_execution_model(out / "reference_model.json")
        assert len(pd.read_csv(out / "corrections.csv")) > 0
        if (out / "retrained_model.json").exists():
            retrained = load_execution_model(out / "retrained_model.json")
            assert retrained.preconditions.required(1) == reference.preconditions.required(1)
            assert len(retrained.success) % 2 == 0

    def test_stored_model_diagnoses_identically(self, run):
        _, trained = run("retrain", out="trained")
        _, learned = run("diagnose", out="a")
        _, stored = run("diagnose", "--model", str(trained / "reference_model.json"), out="b")

        assert (learned / "diagnoses.csv").read_bytes() == \
            (stored / "diagnoses.csv").read_bytes()

    def test_eval(self, run):
        code, out = run("eval")

        assert code == 0
        frame = pd.read_csv(out / "correction_experiment.csv")
        assert frame["kappa"].tolist() == [2.0, 4.0]
        assert (frame["trials"] == 3).all()

    def test_eval_overrides_and_rerun(self, run):
        _, first = run("eval", "--trials", "2", "--kappa", "3", out="a")
        _, second = run("eval", "--trials", "2", "--kappa", "3", out="b")

        frame = pd.read_csv(first / "correction_experiment.csv")
        assert frame["kappa"].tolist() == [3.0]
        assert (first / "correction_experiment.csv").read_bytes() == \
            (second / "correction_experiment.csv").read_bytes()

    def test_eval_with_pose_noise(self, run):
        code, out = run("eval", "--trials", "20", "--pose-noise", "0.02")

        assert code == 0
        frame = pd.read_csv(out / "correction_experiment.csv")
        evaluated = frame[frame["evaluable"] == 1]
        assert (evaluated["successes"] < 20).all()

    def test_eval_rejects_negative_pose_noise(self, run):
        code, out = run("eval", "--pose-noise", "-0.01")

        assert code == 5
        assert not (out / "correction_experiment.csv").exists()


class TestErrors:
    """Test exit codes for invalid input."""

    def test_invalid_configuration(self, run, tmp_path, capsys):
        bad = write_config(tmp_path / "bad.ini", {"execution": {"beta": "1.5"}})
        code, _ = run("simulate", config=bad)

        assert code == 1
        assert "CONFIGURATION ERROR" in capsys.readouterr().err

    def test_misaligned_relations(self, run, tmp_path):
        bad = write_config(tmp_path / "symmetric.ini", extra=SYMMETRIC_RELATIONS)
        code, out = run("diagnose", config=bad)

        assert code == 1
        assert not (out / "diagnoses.csv").exists()

    def test_missing_campaign_file(self, run, tmp_path):
        code, _ = run("diagnose", "--campaign", str(tmp_path / "absent.csv"))
        assert code == 1

    def test_missing_command(self, run):
        with pytest.raises(SystemExit):
            run()
