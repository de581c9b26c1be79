"""
p-adic valuations, cube-root counting modulo p, and Hensel lifting of cube roots.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import List, Optional, Union

from gmpy2 import remove
from sympy import isprime, nthroot_mod

from .exceptions import BadPrime, NotCoprime

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


@total_ordering
@dataclass(frozen=True)
class Valuation:
    """
    A p-adic valuation: a finite integer, or +infinity for the valuation of zero.

    Compares against plain integers, so ``nu(x, p) >= 0`` reads naturally.
    """
    value: Optional[int]

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Valuation, int)):
            return self.value == _coerce(other).value
        return NotImplemented

    def __lt__(self, other: Union["Valuation", int]) -> bool:
        other = _coerce(other)
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(self.value)


INFINITY = Valuation(None)


def _coerce(value: Union[Valuation, int]) -> Valuation:
    return value if isinstance(value, Valuation) else Valuation(int(value))


def _check_prime(p: int) -> None:
    if p in (2, 3) or not isprime(p):
        raise BadPrime(f"p = {p} must be a prime other than 2 and 3")


def int_nu(n: int, p: int) -> int:
    """Valuation of a nonzero integer as a plain int."""
    if n == 0:
        raise ValueError("the valuation of zero is infinite")
    return int(remove(abs(n), p)[1])


def nu(x: Rational, p: int) -> Valuation:
    """
    p-adic valuation of an integer or a fraction, with nu(0) = +infinity.

    Args:
        x: Integer or :class:`fractions.Fraction`.
        p: Prime.

    Returns:
        nu_p(numerator) - nu_p(denominator).
    """
    q = Fraction(x)
    if q == 0:
        return INFINITY
    return Valuation(int_nu(q.numerator, p) - int_nu(q.denominator, p))


def nu_fraction(numerator: int, denominator: int, p: int) -> Valuation:
    """Valuation of numerator / denominator without building the fraction first."""
    if denominator == 0:
        raise ZeroDivisionError("denominator must be nonzero")
    if numerator == 0:
        return INFINITY
    return Valuation(int_nu(numerator, p) - int_nu(denominator, p))


def count_cube_roots(m: int, p: int) -> int:
    """
    Number r_p of solutions of x^3 = m in Z/pZ.

    Returns 1 when p | m or p = 2 (mod 3); otherwise 3 or 0 according to whether
    m^((p-1)/3) = 1 (mod p).
    """
    _check_prime(p)
    if m % p == 0 or p % 3 == 2:
        return 1
    return 3 if pow(m % p, (p - 1) // 3, p) == 1 else 0


def count_cube_roots_exhaustive(m: int, p: int) -> int:
    """Count x in {0, ..., p-1} with x^3 = m (mod p) by trying every residue."""
    return sum(1 for x in range(p) if (x * x * x - m) % p == 0)


def lift_cube_roots(c: int, p: int, e: int) -> List[int]:
    """
    All residues alpha mod p^e with alpha^3 = c (mod p^e), in increasing order.

    Every root modulo p lifts uniquely because 3 * alpha^2 is a p-adic unit; the
    lift is one Newton step per digit.

    Raises:
        NotCoprime: p divides c.
        BadPrime: p is not a prime outside {2, 3}.
        ValueError: e < 1.
    """
    _check_prime(p)
    if c % p == 0:
        raise NotCoprime(f"{p} divides {c}")
    if e < 1:
        raise ValueError(f"precision e = {e} must be positive")

    roots = nthroot_mod(c % p, 3, p, all_roots=True) or []
    lifted = []
    for alpha in roots:
        alpha = int(alpha)
        modulus = p
        for _ in range(1, e):
            modulus *= p
            derivative_inv = pow(3 * alpha * alpha, -1, modulus)
            alpha = (alpha - (alpha ** 3 - c) * derivative_inv) % modulus
        lifted.append(alpha)

    logger.debug(f"Lifted {len(lifted)} cube roots of {c} to modulus {p}^{e}")
    return sorted(lifted)
