import pytest

from cubic_orders.field_core import PrimeContext, make_field, make_prime_context
from cubic_orders.order_enum import OrderTriple, make_triple


@pytest.fixture
def ctx_factory():
    """Build a PrimeContext from (m, p)."""
    def _make(m: int, p: int) -> PrimeContext:
        return make_prime_context(make_field(m), p)
    return _make


@pytest.fixture
def triple_factory(ctx_factory):
    """Build an OrderTriple from (m, p, i, j, beta)."""
    def _make(m: int, p: int, i: int, j: int, beta: int) -> OrderTriple:
        return make_triple(ctx_factory(m, p), i, j, beta)
    return _make


@pytest.fixture
def single_worker(monkeypatch):
    """Keep every scan in-process."""
    from cubic_orders.config import settings
    monkeypatch.setattr(settings, "CUBIC_ORDERS_THREADS", 1)
