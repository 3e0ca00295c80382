"""
Tests for environment settings, run config loading and schema validation
"""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from app.config import AppSettings, load_run_config
from app.exceptions import ConfigError
from app.schemas import ProblemConfig, RunConfig


class TestAppSettings:
    def test_environment_overrides(self, monkeypatch, tmp_path):
        monkeypatch.setenv("HERDTEST_LOG_LEVEL", "DEBUG")
        monkeypatch.setenv("HERDTEST_LOG_DIR", str(tmp_path))
        monkeypatch.setenv("HERDTEST_OUTPUT_DIR", str(tmp_path / "out"))
        settings = AppSettings()
        assert settings.log_level == "DEBUG"
        assert settings.log_file == tmp_path / "herdtest.log"
        assert settings.output_dir == tmp_path / "out"

    def test_describe_without_log_file(self, monkeypatch):
        monkeypatch.setenv("HERDTEST_LOG_TO_FILE", "false")
        assert AppSettings().describe()['log_file'] == 'disabled'

    def test_defaults(self, monkeypatch):
        for name in ("HERDTEST_LOG_LEVEL", "HERDTEST_LOG_DIR", "HERDTEST_OUTPUT_DIR"):
            monkeypatch.delenv(name, raising=False)
        settings = AppSettings()
        assert settings.log_level == "INFO"
        assert settings.output_dir == Path("output")


class TestLoadRunConfig:
    def test_defaults_without_file(self):
        run_config = load_run_config()
        assert run_config == RunConfig()
        assert run_config.problem.n == 250
        assert run_config.maximality_horizons is None

    def test_partial_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"problem": {"q": 0.99}, "grids": {"m_max": 12}}), encoding="utf-8")
        run_config = load_run_config(path)
        assert run_config.problem.q == 0.99
        assert run_config.problem.p == 0.9999
        assert run_config.grids.m_max == 12
        assert run_config.infogap_costs == RunConfig().infogap_costs

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ConfigError, match="Cannot read"):
            load_run_config(tmp_path / "missing.json")

    def test_invalid_document(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"grids": {"h_max": 2.0}}), encoding="utf-8")
        with pytest.raises(ConfigError, match="Invalid config"):
            load_run_config(path)


class TestRunConfig:
    def test_costs_must_ascend(self):
        with pytest.raises(ValidationError):
            RunConfig(infogap_costs=[2e6, 1e6])

    def test_pool_within_herd(self):
        with pytest.raises(ValidationError):
            RunConfig(grids={"m_max": 251})
        with pytest.raises(ValidationError):
            RunConfig(curve_decisions=[1, 300])

    def test_bridge_horizons_follow_maximality(self):
        assert RunConfig().bridge_horizons is None
        assert RunConfig(maximality_horizons=[1e-3]).bridge_horizons == [1e-3]
        explicit = RunConfig(maximality_horizons=[1e-3], bridge={"horizons": [2e-3]})
        assert explicit.bridge_horizons == [2e-3]

    def test_summary(self):
        assert RunConfig().summary()['horizons'] == 'matched'
        assert RunConfig(maximality_horizons=[1e-3, 2e-3]).summary()['horizons'] == 2


class TestProblemConfig:
    def test_hashable_and_frozen(self):
        assert hash(ProblemConfig()) == hash(ProblemConfig())
        with pytest.raises(ValidationError):
            ProblemConfig().n = 10

    def test_termination_cost(self):
        assert ProblemConfig().termination_cost == 100_000.0

    def test_scaled(self):
        doubled = ProblemConfig().scaled(2.0)
        assert doubled.cost_coeffs == (2000.0, -4000.0, 2000.0)
        assert doubled.a == 2e7
        assert doubled.termination_cost == 200_000.0
        assert (doubled.p, doubled.q) == (0.9999, 0.999)
        with pytest.raises(ValueError):
            ProblemConfig().scaled(0.0)

    def test_negative_testing_cost(self):
        with pytest.raises(ValidationError, match="negative"):
            ProblemConfig(cost_coeffs=(0.0, -1.0, 0.0))

    def test_schedule_length(self):
        with pytest.raises(ValidationError):
            ProblemConfig(n=3, outbreak_schedule=(0.0, 1.0))
        assert ProblemConfig(n=3, outbreak_schedule=(0.0, 1.0, 2.0, 3.0)).outbreak_schedule[3] == 3.0

    def test_extra_fields_rejected(self):
        with pytest.raises(ValidationError):
            ProblemConfig(herd=250)
