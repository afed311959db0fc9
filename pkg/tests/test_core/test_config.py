"""
Tests for environment-driven limits.
"""

import pytest

from modsm.config import (
    DEFAULT_CAP,
    ensure_within,
    get_cap,
    get_loop_cap,
    get_rule_cap,
    get_workers,
    setup_logging,
)
from modsm.errors import CapExceeded, ConfigError


class TestConfig:
    """Getters read the environment; explicit arguments win."""

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("MODSM_CAP", raising=False)
        assert get_cap() == DEFAULT_CAP

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("MODSM_CAP", "64")
        monkeypatch.setenv("MODSM_LOOP_CAP", "5")
        monkeypatch.setenv("MODSM_RULE_CAP", "10")
        assert get_cap() == 64
        assert get_loop_cap() == 5
        assert get_rule_cap() == 10
        assert get_cap(8) == 8

    def test_blank_environment_uses_default(self, monkeypatch):
        monkeypatch.setenv("MODSM_CAP", " ")
        assert get_cap() == DEFAULT_CAP

    def test_workers_at_least_one(self, monkeypatch):
        monkeypatch.setenv("MODSM_WORKERS", "0")
        assert get_workers() == 1
        assert get_workers(4) == 4

    def test_ensure_within(self):
        ensure_within("candidates", 16, 16)
        with pytest.raises(CapExceeded) as excinfo:
            ensure_within("candidates", 32, 16)
        assert excinfo.value.required == 32
        assert excinfo.value.limit == 16

    def test_non_integer_environment(self, monkeypatch):
        monkeypatch.setenv("MODSM_WORKERS", "many")
        with pytest.raises(ConfigError, match="MODSM_WORKERS"):
            get_workers()

    def test_unknown_log_level(self, monkeypatch):
        monkeypatch.setenv("MODSM_LOG_LEVEL", "chatty")
        with pytest.raises(ConfigError):
            setup_logging()
