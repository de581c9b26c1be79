"""
Index forms of pure cubic orders and bounded monogenicity search.

For the maximal order the index form in the basis {1, X, Y} is k x^3 - h y^3.
An order with basis {1, p^i X, beta X + p^j Y} has index form
p^-n (k (p^i x + beta y)^3 - h (p^j y)^3), and Z[x p^i X + y (beta X + p^j Y)]
is that order exactly when the form takes the value +-1 at (x, y).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from sympy import integer_nthroot

from .config import settings
from .exceptions import BadWitness, InputError, NotAnOrder
from .field_core import PureCubicField
from .ok_ring import RingElement
from .order_enum import OrderTriple

logger = logging.getLogger(__name__)

Witness = Tuple[int, int]


@dataclass(frozen=True)
class BinaryCubicForm:
    """A x^3 + B x^2 y + C x y^2 + D y^3 with integer coefficients."""
    A: int
    B: int
    C: int
    D: int

    def evaluate(self, x: int, y: int) -> int:
        return self.A * x ** 3 + self.B * x * x * y + self.C * x * y * y + self.D * y ** 3

    @property
    def coefficients(self) -> Tuple[int, int, int, int]:
        return (self.A, self.B, self.C, self.D)

    @property
    def discriminant(self) -> int:
        a, b, c, d = self.coefficients
        return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d

    def to_dict(self) -> Dict[str, Any]:
        return {"A_coeff": self.A, "B_coeff": self.B, "C_coeff": self.C, "D_coeff": self.D}


class MonogenicityStatus(str, Enum):
    MONOGENIC_WITH_WITNESS = "monogenic_with_witness"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MonogenicityVerdict:
    """
    Outcome of a bounded witness search.

    ``unknown`` only means no witness exists in the searched box; it is never a
    proof that the order is not monogenic.
    """
    status: MonogenicityStatus
    witness: Optional[Witness]
    search_bound: int

    @property
    def is_monogenic(self) -> bool:
        return self.status is MonogenicityStatus.MONOGENIC_WITH_WITNESS

    def to_dict(self) -> Dict[str, Any]:
        x, y = self.witness if self.witness else (None, None)
        return {"status": self.status.value, "x": x, "y": y, "search_bound": self.search_bound}


def index_form_maximal(field: PureCubicField) -> BinaryCubicForm:
    return BinaryCubicForm(field.k, 0, 0, -field.h)


def _exact(value: Fraction, name: str, t: OrderTriple) -> int:
    if value.denominator != 1:
        logger.error(f"Non-integral {name} = {value} for triple {t.as_tuple()}")
        raise NotAnOrder(
            f"{name} = {value} is not an integer for (i, j, beta) = {t.as_tuple()}, "
            f"m = {t.context.field.m}, p = {t.p}"
        )
    return value.numerator


def index_form_order(t: OrderTriple) -> BinaryCubicForm:
    """
    Index form of the order t with respect to its basis {1, p^i X, beta X + p^j Y}.

    Raises:
        NotAnOrder: some coefficient is not an integer, so t is not closed under
            multiplication.
    """
    field = t.context.field
    h, k = field.h, field.k
    p_n = t.index
    beta = t.beta
    return BinaryCubicForm(
        _exact(Fraction(k * t.p_i ** 3, p_n), "A", t),
        _exact(Fraction(3 * k * t.p_i ** 2 * beta, p_n), "B", t),
        _exact(Fraction(3 * k * t.p_i * beta ** 2, p_n), "C", t),
        _exact(Fraction(k * beta ** 3 - h * t.p_j ** 3, p_n), "D", t),
    )


def _is_canonical(x: int, y: int) -> bool:
    return y > 0 or (y == 0 and x > 0)


def _witness_key(witness: Witness) -> Tuple[int, int, int]:
    x, y = witness
    return (max(abs(x), abs(y)), x, y)


def _signed_cube_root(value: int) -> Optional[int]:
    root, exact = integer_nthroot(abs(value), 3)
    if not exact:
        return None
    return int(root) if value >= 0 else -int(root)


def find_witness(t: OrderTriple, H: int) -> Optional[Witness]:
    """
    Smallest (x, y) with |x|, |y| <= H and |I(x, y)| = 1, or ``None``.

    Witnesses come in pairs (x, y), (-x, -y); the one with y > 0, or y = 0 and
    x > 0, is reported. Candidates are ordered by max(|x|, |y|), then x, then y.

    Each y is solved for directly: k u^3 = h (p^j y)^3 +- p^n with
    u = p^i x + beta y, so only O(H) cube roots are taken.
    """
    field = t.context.field
    h, k = field.h, field.k
    p_n = t.index
    best: Optional[Witness] = None
    for y in range(0, H + 1):
        v = t.p_j * y
        for sign in (1, -1):
            numerator = h * v ** 3 + sign * p_n
            if numerator % k:
                continue
            u = _signed_cube_root(numerator // k)
            if u is None:
                continue
            x, remainder = divmod(u - t.beta * y, t.p_i)
            if remainder or abs(x) > H:
                continue
            candidate = (x, y) if _is_canonical(x, y) else (-x, -y)
            if best is None or _witness_key(candidate) < _witness_key(best):
                best = candidate
    return best


def is_monogenic_bounded(t: OrderTriple, H: Optional[int] = None) -> MonogenicityVerdict:
    """
    Search |x|, |y| <= H for a point where the index form of t is +-1.

    Args:
        t: An order (accepted by a closure classifier).
        H: Box size; ``None`` reads ``SEARCH_BOUND``.
    """
    bound = settings.SEARCH_BOUND if H is None else H
    if bound < 0:
        raise InputError(f"search bound H = {bound} must be non-negative")

    witness = find_witness(t, bound)
    if witness is not None:
        form = index_form_order(t)
        if abs(form.evaluate(*witness)) != 1:
            raise NotAnOrder(f"witness {witness} gives {form.evaluate(*witness)} for {t.as_tuple()}")
        logger.debug(f"Order {t.as_tuple()} is monogenic, witness {witness}")
        return MonogenicityVerdict(MonogenicityStatus.MONOGENIC_WITH_WITNESS, witness, bound)
    return MonogenicityVerdict(MonogenicityStatus.UNKNOWN, None, bound)


def witness_to_generator(t: OrderTriple, witness: Witness) -> RingElement:
    """
    xi = x (p^i X) + y (beta X + p^j Y), a generator of t as a ring.

    Raises:
        BadWitness: the index form of t is not +-1 at the witness.
    """
    x, y = witness
    value = index_form_order(t).evaluate(x, y)
    if abs(value) != 1:
        raise BadWitness(f"I({x}, {y}) = {value} for order {t.as_tuple()}, expected +-1")
    return RingElement(0, x * t.p_i + y * t.beta, y * t.p_j)
