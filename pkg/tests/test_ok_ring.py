import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic_orders.exceptions import NotFullRank
from cubic_orders.field_core import make_field, make_prime_context
from cubic_orders.ok_ring import (
    ONE,
    X,
    Y,
    RingElement,
    generator_index,
    hnf_of_rows,
    in_order_lattice,
    mul,
    order_from_generator,
)
from cubic_orders.order_enum import is_closed_oracle, triple_from_hnf

coordinates = st.integers(min_value=-50, max_value=50)
elements = st.builds(RingElement, coordinates, coordinates, coordinates)
fields = st.sampled_from([make_field(m) for m in (2, 3, 5, 6, 7, 11, 12, -20, 50)])


def test_multiplication_table():
    field = make_field(2)
    assert mul(X, X, field) == RingElement(0, 0, 1)
    assert mul(X, Y, field) == RingElement(2, 0, 0)
    assert mul(Y, Y, field) == RingElement(0, 2, 0)
    assert mul(ONE, Y, field) == Y


def test_multiplication_table_with_square_part():
    field = make_field(12)  # h = 3, k = 2
    assert mul(X, X, field) == RingElement(0, 0, 2)
    assert mul(X, Y, field) == RingElement(6, 0, 0)
    assert mul(Y, Y, field) == RingElement(0, 3, 0)


@settings(max_examples=200)
@given(elements, elements, elements, fields)
def test_ring_axioms(a, b, c, field):
    assert mul(a, b, field) == mul(b, a, field)
    assert mul(mul(a, b, field), c, field) == mul(a, mul(b, c, field), field)
    b_plus_c = RingElement(*(u + v for u, v in zip(b.as_tuple(), c.as_tuple())))
    ab, ac = mul(a, b, field), mul(a, c, field)
    assert mul(a, b_plus_c, field).as_tuple() == tuple(u + v for u, v in zip(ab.as_tuple(), ac.as_tuple()))


def test_in_order_lattice(triple_factory):
    t = triple_factory(2, 5, 1, 0, 0)
    assert in_order_lattice(RingElement(7, 0, 0), t)
    assert not in_order_lattice(RingElement(0, 2, 0), t)
    assert in_order_lattice(RingElement(0, 5, 0), t)

    t = triple_factory(2, 5, 1, 0, 3)
    assert in_order_lattice(RingElement(0, 3, 1), t)
    assert not in_order_lattice(RingElement(0, 0, 1), t)


def test_order_from_generator_examples(ctx_factory):
    hnf = order_from_generator(X, make_field(2))
    assert hnf.index == 1
    assert hnf.rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    ctx = ctx_factory(5, 5)
    hnf = order_from_generator(Y, ctx.field)
    assert hnf.index == 5
    assert triple_from_hnf(ctx, hnf).as_tuple() == (1, 0, 0)

    ctx = ctx_factory(2, 5)
    hnf = order_from_generator(RingElement(0, 5, 0), ctx.field)
    assert hnf.index == 125
    assert triple_from_hnf(ctx, hnf).as_tuple() == (1, 2, 0)


def test_rational_generator_is_rejected():
    with pytest.raises(NotFullRank):
        order_from_generator(RingElement(3, 0, 0), make_field(2))
    with pytest.raises(NotFullRank):
        generator_index(RingElement(-1, 0, 0), make_field(5))


def test_hnf_of_rows_reduces_below_diagonal():
    hnf = hnf_of_rows([(1, 0, 0), (0, 5, 0), (7, 13, 1)])
    assert hnf.rows == ((1, 0, 0), (0, 5, 0), (0, 3, 1))
    assert hnf.diagonal == (1, 5, 1)
    with pytest.raises(NotFullRank):
        hnf_of_rows([(1, 0, 0), (0, 1, 0), (1, 1, 0)])


@settings(max_examples=60, deadline=None)
@given(coordinates.filter(bool), coordinates, st.integers(-20, 20), st.sampled_from([2, 5, 6, 12]))
def test_generated_order_ignores_rational_shift(c1, c2, shift, m):
    field = make_field(m)
    xi = RingElement(0, c1, c2)
    assert order_from_generator(xi, field) == order_from_generator(RingElement(shift, c1, c2), field)


@settings(max_examples=60, deadline=None)
@given(coordinates, coordinates, st.sampled_from([2, 5, 7]))
def test_generated_order_is_closed(c1, c2, m):
    if (c1, c2) == (0, 0):
        return
    ctx = make_prime_context(make_field(m), 5)
    hnf = order_from_generator(RingElement(0, c1, c2), ctx.field)
    t = triple_from_hnf(ctx, hnf)
    if t is not None:
        assert is_closed_oracle(t)
