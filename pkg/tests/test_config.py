"""Tests for environment-driven settings."""

import logging

from warpcurv.config import ExecutionSettings, ReportSettings, Settings, get_settings, reset_settings


def test_defaults():
    settings = Settings()
    assert settings.execution.threads == 1
    assert settings.execution.check_timeout == 600.0
    assert settings.reports.timestamp
    assert settings.log_level == "INFO"


def test_environment(monkeypatch):
    monkeypatch.setenv("WARPCURV_THREADS", "4")
    monkeypatch.setenv("WARPCURV_CHECK_TIMEOUT", "12.5")
    monkeypatch.setenv("WARPCURV_NO_TIMESTAMP", "yes")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    settings = Settings()
    assert settings.execution.threads == 4
    assert settings.execution.check_timeout == 12.5
    assert not settings.reports.timestamp
    assert settings.log_level == "DEBUG"


def test_invalid_thread_count(monkeypatch, caplog):
    monkeypatch.setenv("WARPCURV_THREADS", "many")
    with caplog.at_level(logging.WARNING):
        assert ExecutionSettings().threads == 1
    assert "WARPCURV_THREADS" in caplog.text


def test_flag_wins_over_environment(monkeypatch):
    monkeypatch.setenv("WARPCURV_THREADS", "4")
    execution = ExecutionSettings()
    assert execution.resolve_threads(2) == 2
    assert execution.resolve_threads(0) == 1
    assert execution.resolve_threads(None) == 4


def test_timestamp_default(monkeypatch):
    monkeypatch.setenv("WARPCURV_NO_TIMESTAMP", "0")
    assert ReportSettings().timestamp


def test_singleton():
    first = get_settings()
    assert get_settings() is first
    reset_settings()
    assert get_settings() is not first
