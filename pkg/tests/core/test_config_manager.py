"""Tests for core/config_manager.py."""

import logging
import os
from pathlib import Path

import pytest

from torsioncert.core.config_manager import ENV_PREFIX, RunConfig, load_config
from torsioncert.core.constants import T1_CANDIDATE_BUDGET, T2_SEARCH_PRIMES


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    """Run every test without TORSIONCERT_* variables; .env files load into os.environ."""
    saved = {k: v for k, v in os.environ.items() if k.startswith(ENV_PREFIX)}
    for key in saved:
        monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
    yield
    for key in [k for k in os.environ if k.startswith(ENV_PREFIX)]:
        del os.environ[key]
    os.environ.update(saved)


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.t1_budget == T1_CANDIDATE_BUDGET
        assert config.t2_primes == T2_SEARCH_PRIMES
        assert config.use_cache
        assert not config.factorization_enabled

    def test_overrides_skip_none(self):
        config = RunConfig().with_overrides(jobs=3, log_level=None)
        assert config.jobs == 3
        assert config.log_level == "INFO"

    def test_factor_oracle(self):
        assert RunConfig(factor_oracle="sympy").factorization_enabled


class TestLoadConfig:
    def test_environment(self, monkeypatch):
        monkeypatch.setenv(ENV_PREFIX + "JOBS", "4")
        monkeypatch.setenv(ENV_PREFIX + "T2_PRIMES", "3,5")
        monkeypatch.setenv(ENV_PREFIX + "CACHE_DIR", "/tmp/tc-cache")
        config = load_config()
        assert config.jobs == 4
        assert config.t2_primes == (3, 5)
        assert config.cache_dir == Path("/tmp/tc-cache")

    def test_env_file(self, tmp_path):
        env_file = tmp_path / "run.env"
        env_file.write_text(f"{ENV_PREFIX}T1_BUDGET=9\n{ENV_PREFIX}LOG_LEVEL=DEBUG\n")
        config = load_config(env_file)
        assert config.t1_budget == 9
        assert config.log_level == "DEBUG"

    def test_environment_wins_over_file(self, monkeypatch, tmp_path):
        env_file = tmp_path / "run.env"
        env_file.write_text(f"{ENV_PREFIX}T1_BUDGET=9\n")
        monkeypatch.setenv(ENV_PREFIX + "T1_BUDGET", "12")
        assert load_config(env_file).t1_budget == 12

    def test_bad_integer_falls_back(self, monkeypatch, caplog):
        monkeypatch.setenv(ENV_PREFIX + "T1_BUDGET", "many")
        with caplog.at_level(logging.WARNING):
            config = load_config()
        assert config.t1_budget == T1_CANDIDATE_BUDGET
        assert "not an integer" in caplog.text

    def test_jobs_at_least_one(self, monkeypatch):
        monkeypatch.setenv(ENV_PREFIX + "JOBS", "0")
        assert load_config().jobs == 1
