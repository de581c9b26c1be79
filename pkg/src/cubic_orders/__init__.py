"""Orders of prime-power index in pure cubic fields: counting, enumeration and monogenicity."""

from .exceptions import ConsistencyError, CubicOrdersError, InputError
from .field_core import PrimeContext, PureCubicField, factor_cubefree, make_field, make_prime_context

__version__ = "1.0.0"

__all__ = [
    "ConsistencyError",
    "CubicOrdersError",
    "InputError",
    "PrimeContext",
    "PureCubicField",
    "factor_cubefree",
    "make_field",
    "make_prime_context",
    "__version__",
]
