from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from cubic_orders.exceptions import BadPrime, NotCoprime
from cubic_orders.padic import (
    INFINITY,
    Valuation,
    count_cube_roots,
    count_cube_roots_exhaustive,
    int_nu,
    lift_cube_roots,
    nu,
    nu_fraction,
)

PRIMES = [5, 7, 11, 13, 31]
nonzero = st.integers(min_value=-10**6, max_value=10**6).filter(bool)
rationals = st.builds(Fraction, st.integers(-10**6, 10**6), nonzero)


def test_nu_examples():
    assert nu(50, 5) == 2
    assert nu(Fraction(3, 25), 5) == -2
    assert nu(0, 7) is INFINITY
    assert nu_fraction(3, 25, 5) == -2
    assert nu_fraction(0, 4, 5).is_infinite


def test_infinity_compares_above_everything():
    assert INFINITY > 10**9
    assert INFINITY >= 0
    assert not INFINITY < 5
    assert Valuation(3) < INFINITY
    assert Valuation(-1) < 0


def test_int_nu_rejects_zero():
    with pytest.raises(ValueError):
        int_nu(0, 5)
    assert int_nu(-250, 5) == 3


@settings(max_examples=200)
@given(rationals, rationals, st.sampled_from(PRIMES))
def test_valuation_is_ultrametric(x, y, p):
    if x and y:
        assert nu(x * y, p).value == nu(x, p).value + nu(y, p).value
    else:
        assert nu(x * y, p).is_infinite
    assert nu(x + y, p) >= min(nu(x, p), nu(y, p))
    if nu(x, p) != nu(y, p):
        assert nu(x + y, p) == min(nu(x, p), nu(y, p))


@pytest.mark.parametrize("m, p, expected", [
    (2, 5, 1),
    (2, 7, 0),
    (6, 7, 3),
    (5, 5, 1),
    (1, 13, 3),
])
def test_count_cube_roots(m, p, expected):
    assert count_cube_roots(m, p) == expected


def test_count_cube_roots_rejects_excluded_primes():
    with pytest.raises(BadPrime):
        count_cube_roots(2, 3)


def test_count_cube_roots_matches_exhaustive_count():
    for p in primerange(5, 100):
        for m in range(-200, 201):
            assert count_cube_roots(m, p) == count_cube_roots_exhaustive(m, p), (m, p)


@pytest.mark.parametrize("c, p, e, expected", [
    (2, 5, 1, [3]),
    (2, 5, 2, [3]),
    (1, 7, 1, [1, 2, 4]),
    (2, 7, 3, []),
])
def test_lift_cube_roots(c, p, e, expected):
    assert lift_cube_roots(c, p, e) == expected


def test_lift_cube_roots_errors():
    with pytest.raises(NotCoprime):
        lift_cube_roots(10, 5, 2)
    with pytest.raises(BadPrime):
        lift_cube_roots(2, 3, 2)
    with pytest.raises(ValueError):
        lift_cube_roots(2, 5, 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(-5000, 5000), st.sampled_from(PRIMES), st.integers(1, 5))
def test_lifted_roots_are_exactly_the_cube_roots(c, p, e):
    if c % p == 0:
        return
    modulus = p ** e
    roots = lift_cube_roots(c, p, e)
    assert len(roots) == count_cube_roots(c, p)
    assert all((alpha ** 3 - c) % modulus == 0 for alpha in roots)
    if modulus <= 2000:
        assert roots == [a for a in range(modulus) if (a ** 3 - c) % modulus == 0]
