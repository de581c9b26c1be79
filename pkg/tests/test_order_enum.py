from fractions import Fraction

import pytest

from cubic_orders import order_enum
from cubic_orders.exceptions import CrossCheckMismatch, InputError, ScanLimitExceeded
from cubic_orders.order_enum import (
    METHODS,
    classify_closed_form,
    classify_valuation,
    count_by_i,
    count_orders_formula,
    cumulative_A,
    enumerate_orders,
    hnf_bounds,
    integrality_coefficients,
    is_closed_oracle,
    triple_from_hnf,
)

GRID_MS = (2, 3, 5, 6, 7, 11, 12)
GRID_PS = (5, 7, 11)


@pytest.mark.parametrize("i, j, beta, expected", [
    (1, 0, 3, True),
    (1, 0, 1, False),
    (1, 0, 0, False),
    (0, 0, 0, True),
    (1, 0, 2, False),
])
def test_classifiers_on_examples(triple_factory, i, j, beta, expected):
    t = triple_factory(2, 5, i, j, beta)
    assert is_closed_oracle(t) is expected
    assert classify_valuation(t) is expected
    assert classify_closed_form(t) is expected


def test_closed_form_divisible_branch(triple_factory):
    assert classify_closed_form(triple_factory(5, 5, 1, 0, 0))
    assert not classify_closed_form(triple_factory(5, 5, 1, 0, 1))


def test_triple_validation(ctx_factory):
    ctx = ctx_factory(2, 5)
    with pytest.raises(InputError):
        order_enum.make_triple(ctx, 1, 0, 5)
    with pytest.raises(InputError):
        order_enum.make_triple(ctx, -1, 0, 0)
    t = order_enum.make_triple(ctx, 2, 1, 10)
    assert (t.n, t.index, t.alpha) == (3, 125, 2)
    assert order_enum.make_triple(ctx, 1, 0, 0).alpha is None


def test_integrality_coefficients(triple_factory):
    coefficients = integrality_coefficients(triple_factory(2, 5, 1, 0, 3))
    assert coefficients == (Fraction(25), Fraction(15), Fraction(9), Fraction(-5))
    coefficients = integrality_coefficients(triple_factory(2, 5, 1, 0, 0))
    assert coefficients[3] == Fraction(2, 5)


@pytest.mark.parametrize("m, n, expected", [
    (5, 1, [(1, 0, 0)]),
    (2, 1, [(1, 0, 3)]),
    (2, 0, [(0, 0, 0)]),
    (7, 0, [(0, 0, 0)]),
])
@pytest.mark.parametrize("method", METHODS)
def test_enumerate_examples(ctx_factory, m, n, expected, method):
    orders = enumerate_orders(ctx_factory(m, 5), n, method, workers=1)
    assert [t.as_tuple() for t in orders] == expected


def test_enumerate_is_sorted_by_i_then_beta(ctx_factory):
    orders = enumerate_orders(ctx_factory(2, 5), 3, "fast")
    assert [t.as_tuple() for t in orders] == sorted(
        (t.as_tuple() for t in orders), key=lambda triple: (triple[0], triple[2])
    )
    assert (2, 1, 5) in [t.as_tuple() for t in orders]


def test_enumerate_rejects_bad_requests(ctx_factory):
    ctx = ctx_factory(2, 5)
    with pytest.raises(InputError):
        enumerate_orders(ctx, 1, "guess")
    with pytest.raises(InputError):
        enumerate_orders(ctx, -1)
    with pytest.raises(ScanLimitExceeded):
        enumerate_orders(ctx, 3, "oracle", n_scan_max=2)
    assert len(enumerate_orders(ctx, 9, "fast")) == count_orders_formula(ctx, 9)


@pytest.mark.parametrize("m, p, n, expected", [
    (5, 5, 3, 6),
    (2, 5, 1, 1),
    (6, 7, 1, 3),
    (2, 7, 0, 1),
    (5, 5, 0, 1),
    (2, 7, 2, 1),
])
def test_count_orders_formula(ctx_factory, m, p, n, expected):
    assert count_orders_formula(ctx_factory(m, p), n) == expected


@pytest.mark.parametrize("m", GRID_MS)
@pytest.mark.parametrize("p", GRID_PS)
def test_classifiers_agree_on_every_lattice(ctx_factory, m, p):
    ctx = ctx_factory(m, p)
    for n in range(4):
        triples = [(i, n - i, beta) for i in range(n + 1) for beta in range(p ** i)]
        assert order_enum.check_closure_equivalence(ctx, triples) == []


@pytest.mark.parametrize("m", GRID_MS)
@pytest.mark.parametrize("p", GRID_PS)
def test_every_method_matches_formula(ctx_factory, m, p, single_worker):
    ctx = ctx_factory(m, p)
    for n in range(4):
        reference = enumerate_orders(ctx, n, "oracle")
        assert len(reference) == count_orders_formula(ctx, n)
        for method in ("valuation", "closed_form", "fast"):
            assert enumerate_orders(ctx, n, method) == reference


def test_enumerated_orders_have_expected_hnf(ctx_factory):
    ctx = ctx_factory(12, 5)
    for n in range(5):
        for t in enumerate_orders(ctx, n):
            hnf = t.hnf()
            assert hnf.index == 5 ** n
            assert hnf.rows[0] == (1, 0, 0)
            assert triple_from_hnf(ctx, hnf) == t


def test_hnf_bounds_width(ctx_factory):
    for m in (5, 50, 30):
        ctx = ctx_factory(m, 5)
        for n in range(12):
            a, b = hnf_bounds(ctx, n)
            assert b - a == n // 3


def test_count_by_i(ctx_factory):
    assert count_by_i(ctx_factory(5, 5), 3) == {1: 1, 2: 5}
    assert count_by_i(ctx_factory(2, 5), 3) == {1: 1, 2: 5, 3: 1}


def test_cumulative_counts(ctx_factory):
    assert [r.cumulative_A for r in cumulative_A(ctx_factory(5, 5), 1)] == [1, 2]
    assert [r.cumulative_A for r in cumulative_A(ctx_factory(2, 5), 1)] == [1, 2]
    assert [r.cumulative_A for r in cumulative_A(ctx_factory(2, 5), 0)] == [1]

    reports = cumulative_A(ctx_factory(5, 5), 3, verify_scan=True)
    assert [(r.by_formula, r.by_scan, r.cumulative_A) for r in reports] == [
        (1, 1, 1), (1, 1, 2), (1, 1, 3), (6, 6, 9),
    ]


def test_cumulative_counts_stop_scanning_past_the_limit(ctx_factory):
    reports = cumulative_A(ctx_factory(2, 5), 3, verify_scan=True, n_scan_max=1)
    assert [r.by_scan for r in reports] == [1, 1, None, None]


@pytest.mark.parametrize("m", GRID_MS)
@pytest.mark.parametrize("p", GRID_PS)
def test_cumulative_count_bounds(ctx_factory, m, p):
    for report in cumulative_A(ctx_factory(m, p), 9):
        n = report.n
        assert p ** (n // 3) <= report.cumulative_A <= p ** n


def test_scan_mismatch_is_reported(ctx_factory, mocker):
    mocker.patch.dict(order_enum.CLASSIFIERS, {"oracle": lambda ctx, i, j, beta: True})
    with pytest.raises(CrossCheckMismatch):
        cumulative_A(ctx_factory(2, 5), 1, verify_scan=True, workers=1)
