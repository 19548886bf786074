"""
Tests for the command-line entry point, experiment configs and the self-check suite.
"""
import json

import pandas as pd
import pytest
from app.bitdomain import SpongeParams
from app.cli import EXIT_OK, EXIT_PARAMETER, EXIT_USAGE, build_parser, main, resolve_config
from app.schemas.experiment import ExperimentConfig
from app.services.experiments import run_experiment
from app.services.verification import check_census, check_statelessness, verify_suite
from pydantic import ValidationError


def _json_report(output: str) -> dict:
    header, body = output.split("\n", 1)
    assert "generated_at" in json.loads(header)
    return json.loads(body)


class TestExperimentConfig:
    """Test suite for config validation."""

    def test_rate_above_capacity(self):
        """Test the r <= c check."""
        with pytest.raises(ValidationError):
            ExperimentConfig(experiment="verify", r=3, c=2)

    def test_missing_width(self):
        """Test that separation needs n."""
        with pytest.raises(ValidationError):
            ExperimentConfig(experiment="separation")

    def test_tradeoff_single_cell(self):
        """Test that flags form a one-cell grid."""
        config = ExperimentConfig(experiment="tradeoff", r=4, c=4, m=2, t=2, k=1)

        assert [cell.model_dump(exclude_none=True) for cell in config.tradeoff_grid()] == [
            {"r": 4, "c": 4, "m": 2, "t": 2, "k": 1}
        ]

    def test_flags_override_file(self, tmp_path):
        """Test that explicit flags win over the config file."""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"experiment": "verify", "r": 1, "c": 1, "seed": 5}))
        args = build_parser().parse_args(["verify", "--config", str(path), "--c", "2"])
        config = resolve_config(args)

        assert config.sponge_params() == SpongeParams(1, 2)
        assert config.seed == 5


class TestVerification:
    """Test suite for the self-check suite."""

    def test_suite_passes_r1_c1(self):
        """Test every check at (1,1)."""
        report = verify_suite(SpongeParams(1, 1), seed=0)

        assert report["passed"]
        assert report["checks"]["census"]["cosets"] == 4
        assert report["checks"]["single_query"]["f_queries"] == 1000
        assert not report["checks"]["fiber_uniformity"].get("skipped", False)

    def test_census_skipped_when_too_large(self):
        """Test that non-enumerable settings skip the census."""
        assert check_census(SpongeParams(2, 2))["skipped"]

    def test_statelessness_at_larger_width(self):
        """Test the replay check at (2,4)."""
        assert check_statelessness(SpongeParams(2, 4), seed=1)["passed"]


class TestMain:
    """Test suite for sponge-lab runs."""

    def test_verify(self, capsys):
        """Test verify at (1,1)."""
        assert main(["verify", "--r", "1", "--c", "1"]) == EXIT_OK

        body = _json_report(capsys.readouterr().out)
        assert body["passed"] is True
        assert body["experiment"] == "verify"

    def test_coset_census(self, capsys):
        """Test the census report at (1,1)."""
        assert main(["coset-census", "--r", "1", "--c", "1"]) == EXIT_OK

        report = _json_report(capsys.readouterr().out)["report"]
        assert len(report["cosets"]) == 4
        assert sorted(c["size"] for c in report["cosets"]) == [4, 4, 8, 8]
        assert report["group_order"] == 24

    def test_unsupported_regime(self, capsys):
        """Test that r > c is a usage error."""
        assert main(["verify", "--r", "3", "--c", "2"]) == EXIT_USAGE
        assert "r <= c" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        """Test that an unreadable config is a usage error."""
        assert main(["verify", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE

    def test_parameter_error(self, capsys):
        """Test that a guardrail breach exits with the parameter status."""
        assert main(["separation", "--n", "20", "--instances", "1", "--challenges", "1"]) == EXIT_PARAMETER
        assert "parameter error" in capsys.readouterr().err

    def test_indiff_exact_advantage(self, capsys):
        """Test the indiff report with the exact table advantage."""
        assert main(["indiff", "--r", "1", "--c", "1", "--trials", "30"]) == EXIT_OK

        report = _json_report(capsys.readouterr().out)["report"]
        assert report["exact_table_advantage"] == "1/6"
        assert report["real"]["trials"] == 30

    def test_remove_sr(self, capsys):
        """Test shared-randomness removal at (1,1)."""
        assert main(["remove-sr", "--r", "1", "--c", "1", "--sr-bits", "4"]) == EXIT_OK

        report = _json_report(capsys.readouterr().out)["report"]
        assert report["reconstructed"] == report["p"]
        assert report["played"] == report["p"]
        assert report["S_sim"] == 1

    def test_csv_output(self, tmp_path):
        """Test CSV reports written to a file."""
        path = tmp_path / "curve.csv"
        status = main([
            "truncation-curve", "--n", "10", "--m", "4", "--trials", "50",
            "--q-grid", "8", "16", "--format", "csv", "--output", str(path),
        ])

        assert status == EXIT_OK
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# generated_at=")
        assert lines[1].startswith("q,collision_advantage,distinct_advantage,advantage")
        assert len(lines) == 4

    def test_body_is_deterministic(self, capsys):
        """Test that two runs differ only in the header line."""
        main(["coset-census", "--r", "1", "--c", "1", "--seed", "3"])
        first = capsys.readouterr().out.split("\n", 1)[1]
        main(["coset-census", "--r", "1", "--c", "1", "--seed", "3"])
        second = capsys.readouterr().out.split("\n", 1)[1]

        assert first == second

    def test_relative_output_lands_in_reports_dir(self, tmp_path, monkeypatch):
        """Test that a bare report name is written under REPORTS_DIR."""
        monkeypatch.setattr("app.cli.settings.REPORTS_DIR", str(tmp_path / "reports"))
        status = main(["coset-census", "--r", "1", "--c", "1", "--output", "census.json"])

        assert status == EXIT_OK
        assert (tmp_path / "reports" / "census.json").exists()


class TestExperimentRunners:
    """Test suite for pass flags of the experiment runners."""

    @staticmethod
    def _tradeoff_config():
        return ExperimentConfig(
            experiment="tradeoff",
            grid=[{"r": 4, "c": 4, "m": 2, "t": 2, "k": 1}, {"r": 4, "c": 6, "m": 2, "t": 2, "k": 1}],
            instances=3,
            challenges=10,
            eps_samples=256,
        )

    def test_tradeoff_passes_with_transfer_and_collapse(self):
        """Test that a small two-capacity grid passes both checks."""
        result = run_experiment(self._tradeoff_config())

        assert result.passed
        assert all(row["holds"] for row in result.body["transfer"])
        assert all(row["collapsed"] for row in result.body["collapse"])

    def test_tradeoff_fails_without_collapse(self, monkeypatch):
        """Test that a capacity spread beyond the joint CI fails the run."""
        monkeypatch.setattr(
            "app.services.experiments.collapse_check", lambda frame: pd.DataFrame([{"collapsed": False}])
        )

        assert not run_experiment(self._tradeoff_config()).passed

    def test_separation_reports_analytic_coverage(self):
        """Test the closed-form check at the largest query budget."""
        config = ExperimentConfig(
            experiment="separation", n=8, instances=200, challenges=50, budgets=[0, 16, 64], trials=4000,
        )
        result = run_experiment(config)

        check = result.body["analytic_check"]
        assert check["T"] == 64
        assert check["analytic_covered"]
        assert result.passed
