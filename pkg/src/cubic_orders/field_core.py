"""
Pure cubic field data.

A field K = Q(theta), theta^3 = m, is stored through the factorisation
m = h * k^2 with h, k square-free and coprime. For m^2 != 1 (mod 9) the ring of
integers has the integral basis {1, X, Y} with X = theta and Y = theta^2 / k.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Tuple

from sympy import factorint, isprime, multiplicity

from .exceptions import BadPrime, DegenerateInput, NotCubeFree, UnsupportedBasisCase

logger = logging.getLogger(__name__)

EXCLUDED_PRIMES = (2, 3)


def factor_cubefree(m: int) -> Tuple[int, int]:
    """
    Split a cube-free integer as m = h * k^2.

    Args:
        m: Cube-free integer with |m| >= 2.

    Returns:
        (h, k) with h, k square-free, gcd(h, k) = 1 and k > 0; the sign of m is
        carried by h.

    Raises:
        DegenerateInput: m is -1, 0 or 1.
        NotCubeFree: some prime cubed divides m.
    """
    if m in (-1, 0, 1):
        raise DegenerateInput(f"m = {m} does not define a cubic field")

    h, k = (1 if m > 0 else -1), 1
    for q, e in factorint(abs(m)).items():
        q, e = int(q), int(e)
        if e >= 3:
            raise NotCubeFree(f"{q}^3 divides m = {m}")
        if e == 2:
            k *= q
        else:
            h *= q
    return h, k


@dataclass(frozen=True)
class PureCubicField:
    """Validated datum for Q(m^(1/3)) with integral basis {1, X, Y}."""
    m: int
    h: int
    k: int

    @property
    def is_negative(self) -> bool:
        """True when m < 0; such fields are supported and flagged in reports."""
        return self.m < 0

    @property
    def discriminant(self) -> int:
        """Discriminant of the ring of integers, -27 h^2 k^2."""
        return -27 * self.h ** 2 * self.k ** 2

    @property
    def basis(self) -> str:
        return f"{{1, X, Y}}, X = theta, Y = theta^2/{self.k}"

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "h": self.h, "k": self.k, "basis": self.basis}


def make_field(m: int) -> PureCubicField:
    """
    Build the field datum for m, validating every precondition.

    Raises:
        NotCubeFree, DegenerateInput: from :func:`factor_cubefree`.
        UnsupportedBasisCase: m^2 = 1 (mod 9).
    """
    h, k = factor_cubefree(m)
    if (m * m) % 9 == 1:
        raise UnsupportedBasisCase(
            f"m = {m} has m^2 = 1 (mod 9); only the basis {{1, X, Y}} is supported"
        )
    if m < 0:
        logger.warning(f"Negative m = {m}: sign carried by h = {h}")
    return PureCubicField(m=m, h=h, k=k)


@dataclass(frozen=True)
class PrimeContext:
    """A field together with a prime p outside {2, 3}."""
    p: int
    field: PureCubicField

    @cached_property
    def nu_h(self) -> int:
        return int(multiplicity(self.p, abs(self.field.h)))

    @cached_property
    def nu_k(self) -> int:
        return int(multiplicity(self.p, self.field.k))

    @property
    def divides_m(self) -> bool:
        return self.field.m % self.p == 0

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, **self.field.to_dict()}


def make_prime_context(field: PureCubicField, p: int) -> PrimeContext:
    """
    Attach a prime to a field.

    Raises:
        BadPrime: p is not prime, or p is 2 or 3.
    """
    if p in EXCLUDED_PRIMES or not isprime(p):
        raise BadPrime(f"p = {p} must be a prime other than 2 and 3")
    return PrimeContext(p=p, field=field)
