import pytest
from pydantic import ValidationError

from cubic_orders.config import Settings


def test_defaults(monkeypatch):
    for name in ("N_SCAN_MAX", "SEARCH_BOUND", "CUBIC_ORDERS_THREADS", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    config = Settings(_env_file=None)
    assert config.N_SCAN_MAX == 6
    assert config.SEARCH_BOUND == 50
    assert config.CUBIC_ORDERS_THREADS == 0
    assert config.LOG_LEVEL == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CUBIC_ORDERS_THREADS", "4")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    monkeypatch.setenv("TM_HEIGHT", "30")
    config = Settings(_env_file=None)
    assert config.CUBIC_ORDERS_THREADS == 4
    assert config.LOG_LEVEL == "DEBUG"
    assert config.TM_HEIGHT == 30


def test_invalid_values_are_rejected(monkeypatch):
    monkeypatch.setenv("CUBIC_ORDERS_THREADS", "-2")
    with pytest.raises(ValidationError):
        Settings(_env_file=None)
