"""Exception hierarchy for cubic-orders.

Input problems derive from :class:`InputError` (CLI exit code 2, HTTP 422);
violated mathematical invariants derive from :class:`ConsistencyError`
(CLI exit code 3, HTTP 500).
"""


class CubicOrdersError(Exception):
    """Base class for every error raised by the package."""


class InputError(CubicOrdersError, ValueError):
    """The caller supplied a value outside the supported domain."""


class NotCubeFree(InputError):
    """Some prime cubed divides m."""


class DegenerateInput(InputError):
    """m is -1, 0 or 1, so the cube root of m is rational."""


class UnsupportedBasisCase(InputError):
    """m^2 = 1 (mod 9); the integral basis {1, X, Y} does not apply."""


class BadPrime(InputError):
    """p is not a prime, or p is 2 or 3."""


class NotCoprime(InputError):
    """The residue to be lifted is divisible by p."""


class BadWitness(InputError):
    """The pair does not evaluate to +-1 on the index form."""


class ScanLimitExceeded(InputError):
    """A brute-force method was requested for an exponent above the scan limit."""


class NotFullRank(CubicOrdersError, ValueError):
    """1, xi, xi^2 are linearly dependent over Z (xi is rational)."""


class ConsistencyError(CubicOrdersError, ArithmeticError):
    """An internal cross-check or proven invariant failed."""


class NotAnOrder(ConsistencyError):
    """The index form of a lattice accepted as an order has a non-integral coefficient."""


class ClassificationGap(ConsistencyError):
    """A primitive solution with U*V != 0 fits none of the four valuation cases."""


class MultiplicityViolation(ConsistencyError):
    """A (primitive solution, n) pair links to three or more orders."""


class CrossCheckMismatch(ConsistencyError):
    """Two independent computations of the same quantity disagree."""
