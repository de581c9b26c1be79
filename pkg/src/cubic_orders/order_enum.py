"""
Orders of p-power index in a pure cubic field.

Every order of index p^n has a unique Z-basis {1, p^i X, beta X + p^j Y} with
i + j = n and 0 <= beta < p^i. This module decides which (i, j, beta) give a
ring, in four independent ways, and counts them in closed form:

* ``oracle``       multiplies the basis elements and tests lattice membership;
* ``valuation``    checks that four rational coefficients are p-integral;
* ``closed_form``  applies the case analysis on nu_p(beta), i and j;
* ``fast``         constructs the accepted beta directly (Hensel lifting).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from .config import settings
from .exceptions import CrossCheckMismatch, InputError, ScanLimitExceeded
from .field_core import PrimeContext
from .ok_ring import OrderHNF, RingElement, in_order_lattice, mul
from .padic import count_cube_roots, int_nu, lift_cube_roots, nu, nu_fraction
from .workers import map_ordered

logger = logging.getLogger(__name__)

SCAN_METHODS = ("oracle", "valuation", "closed_form")
METHODS = SCAN_METHODS + ("fast",)

# beta values handled per scan task
SCAN_CHUNK = 1024


@dataclass(frozen=True)
class OrderTriple:
    """
    The lattice with basis {1, p^i X, beta X + p^j Y}, index p^(i+j).

    Ordered canonically by (i, beta).
    """
    i: int
    j: int
    beta: int
    context: PrimeContext

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise InputError(f"exponents must be non-negative, got i={self.i}, j={self.j}")
        if not 0 <= self.beta < self.context.p ** self.i:
            raise InputError(
                f"beta = {self.beta} outside [0, {self.context.p}^{self.i})"
            )

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def n(self) -> int:
        return self.i + self.j

    @cached_property
    def p_i(self) -> int:
        return self.context.p ** self.i

    @cached_property
    def p_j(self) -> int:
        return self.context.p ** self.j

    @property
    def index(self) -> int:
        return self.context.p ** self.n

    @property
    def sort_key(self) -> Tuple[int, int]:
        return (self.i, self.beta)

    @property
    def alpha(self) -> Optional[int]:
        """beta with its p-part removed; ``None`` when beta = 0."""
        if self.beta == 0:
            return None
        return self.beta // self.context.p ** int_nu(self.beta, self.context.p)

    @property
    def basis(self) -> Tuple[RingElement, RingElement, RingElement]:
        return (
            RingElement(1, 0, 0),
            RingElement(0, self.p_i, 0),
            RingElement(0, self.beta, self.p_j),
        )

    def hnf(self) -> OrderHNF:
        return OrderHNF(rows=tuple(element.as_tuple() for element in self.basis))

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.i, self.j, self.beta)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "i": self.i, "j": self.j, "beta": self.beta}


class CountReport(BaseModel):
    """Number of orders of index p^n, with the running total A_{K,p,n}."""
    n: int = Field(..., description="Exponent of the index p^n")
    by_formula: int = Field(..., description="Closed-form count of orders of index p^n")
    by_scan: Optional[int] = Field(
        None, description="Count from an enumeration, when one was run"
    )
    cumulative_A: int = Field(..., description="Orders of index p^t for some t <= n")


def make_triple(ctx: PrimeContext, i: int, j: int, beta: int) -> OrderTriple:
    return OrderTriple(i=i, j=j, beta=beta, context=ctx)


def triple_from_hnf(ctx: PrimeContext, hnf: OrderHNF) -> Optional[OrderTriple]:
    """
    Read an HNF with diagonal (1, p^i, p^j) as an :class:`OrderTriple`.

    Returns ``None`` when the lattice is not of that shape (index not a power of
    p, or 1 not a basis vector).
    """
    rows = hnf.rows
    if rows[0] != (1, 0, 0) or rows[1][0] or rows[2][0]:
        return None
    _, d1, d2 = hnf.diagonal
    i, j = int_nu(d1, ctx.p), int_nu(d2, ctx.p)
    if ctx.p ** i != d1 or ctx.p ** j != d2:
        return None
    return make_triple(ctx, i, j, rows[2][1])


# --- classifiers -----------------------------------------------------------

def _oracle_accepts(ctx: PrimeContext, i: int, j: int, beta: int) -> bool:
    field = ctx.field
    triple = _Lattice(ctx.p ** i, ctx.p ** j, beta)
    a = RingElement(0, triple.p_i, 0)
    b = RingElement(0, beta, triple.p_j)
    return (
        in_order_lattice(mul(a, a, field), triple)
        and in_order_lattice(mul(a, b, field), triple)
        and in_order_lattice(mul(b, b, field), triple)
    )


@dataclass(frozen=True)
class _Lattice:
    """Just the numbers :func:`in_order_lattice` reads, for tight scan loops."""
    p_i: int
    p_j: int
    beta: int


def _scaled(p: int, coefficient: int, exponent: int) -> Tuple[int, int]:
    """coefficient * p^exponent as a (numerator, denominator) pair."""
    if exponent >= 0:
        return coefficient * p ** exponent, 1
    return coefficient, p ** -exponent


def _coefficient_pairs(ctx: PrimeContext, i: int, j: int, beta: int) -> Tuple[Tuple[int, int], ...]:
    p, h, k = ctx.p, ctx.field.h, ctx.field.k
    # h p^(2j-i) - k p^(-n) beta^3 = (h p^(3j) - k beta^3) / p^n
    return (
        _scaled(p, k, 2 * i - j),
        _scaled(p, k * beta, i - j),
        (k * beta * beta, p ** j),
        (h * p ** (3 * j) - k * beta ** 3, p ** (i + j)),
    )


def integrality_coefficients(t: OrderTriple) -> Tuple[Fraction, ...]:
    """
    The four rationals whose p-integrality is equivalent to closure:
    k p^(2i-j), k p^(i-j) beta, k p^(-j) beta^2, h p^(2j-i) - k p^(-i-j) beta^3.
    """
    return tuple(
        Fraction(numerator, denominator)
        for numerator, denominator in _coefficient_pairs(t.context, t.i, t.j, t.beta)
    )


def _valuation_accepts(ctx: PrimeContext, i: int, j: int, beta: int) -> bool:
    return all(
        nu_fraction(numerator, denominator, ctx.p) >= 0
        for numerator, denominator in _coefficient_pairs(ctx, i, j, beta)
    )


def hnf_bounds(ctx: PrimeContext, n: int) -> Tuple[int, int]:
    """
    (a, b) = (ceil((n - nu_p(k)) / 3), floor((2n + nu_p(h)) / 3)).

    Lattices with beta = 0 or nu_p(beta) >= a are orders exactly when a <= i <= b.
    """
    lower = n - ctx.nu_k
    return -(-lower // 3), (2 * n + ctx.nu_h) // 3


def _pm_condition(ctx: PrimeContext, n: int, i: int, beta: int) -> bool:
    lower = n - ctx.nu_k
    if not lower <= 3 * i <= 2 * n + ctx.nu_h:
        return False
    return beta == 0 or 3 * int_nu(beta, ctx.p) >= lower


def _closed_form_accepts(ctx: PrimeContext, i: int, j: int, beta: int) -> bool:
    n = i + j
    if _pm_condition(ctx, n, i, beta):
        return True
    if ctx.divides_m or beta == 0 or 3 * j >= n:
        return False
    p = ctx.p
    if int_nu(beta, p) != j:
        return False
    alpha = beta // p ** j
    return nu(ctx.field.m - (ctx.field.k * alpha) ** 3, p) >= i - 2 * j


CLASSIFIERS: Dict[str, Callable[[PrimeContext, int, int, int], bool]] = {
    "oracle": _oracle_accepts,
    "valuation": _valuation_accepts,
    "closed_form": _closed_form_accepts,
}


def is_closed_oracle(t: OrderTriple) -> bool:
    """Ground truth: the three products of basis elements stay in the lattice."""
    return CLASSIFIERS["oracle"](t.context, t.i, t.j, t.beta)


def classify_valuation(t: OrderTriple) -> bool:
    """All four :func:`integrality_coefficients` have non-negative valuation."""
    return CLASSIFIERS["valuation"](t.context, t.i, t.j, t.beta)


def classify_closed_form(t: OrderTriple) -> bool:
    """
    Closed-form case analysis.

    For p | m: (beta = 0 or nu(beta) >= (n - nu(k))/3) and
    (n - nu(k))/3 <= i <= (2n + nu(h))/3. For p not dividing m the same clause
    with nu(h) = nu(k) = 0, or: beta != 0, j < n/3, nu(beta) = j and
    nu(m - (k alpha)^3) >= i - 2j.
    """
    return CLASSIFIERS["closed_form"](t.context, t.i, t.j, t.beta)


# --- enumeration -----------------------------------------------------------

def _scan_chunk(task: Tuple[str, PrimeContext, int, int, int, int]) -> List[Tuple[int, int, int]]:
    method, ctx, i, j, start, stop = task
    accepts = CLASSIFIERS[method]
    return [(i, j, beta) for beta in range(start, stop) if accepts(ctx, i, j, beta)]


def _scan_tasks(method: str, ctx: PrimeContext, n: int) -> List[tuple]:
    tasks = []
    for i in range(n + 1):
        width = ctx.p ** i
        for start in range(0, width, SCAN_CHUNK):
            tasks.append((method, ctx, i, n - i, start, min(start + SCAN_CHUNK, width)))
    return tasks


def _fast_triples(ctx: PrimeContext, n: int) -> List[Tuple[int, int, int]]:
    p, field = ctx.p, ctx.field
    found = []

    a, b = hnf_bounds(ctx, n)
    step = p ** a
    for i in range(max(a, 0), min(b, n) + 1):
        found.extend((i, n - i, beta) for beta in range(0, p ** i, step))

    if not ctx.divides_m:
        # beta = p^j alpha with j < n/3 and (k alpha)^3 = m (mod p^(i-2j))
        for j in range(n):
            if 3 * j >= n:
                break
            i = n - j
            e = i - 2 * j
            modulus = p ** e
            c = field.m * pow(field.k ** 3, -1, modulus) % modulus
            for root in lift_cube_roots(c, p, e):
                for t in range(p ** j):
                    found.append((i, j, p ** j * (root + t * modulus)))

    found.sort(key=lambda triple: (triple[0], triple[2]))
    return found


def enumerate_orders(
    ctx: PrimeContext,
    n: int,
    method: str = "fast",
    workers: Optional[int] = None,
    n_scan_max: Optional[int] = None,
) -> List[OrderTriple]:
    """
    All orders of index p^n, sorted by (i, beta).

    Args:
        ctx: Field and prime.
        n: Exponent of the index.
        method: ``oracle``, ``valuation``, ``closed_form`` or ``fast``.
        workers: Process cap for the beta scans (``None`` reads settings).
        n_scan_max: Largest n a scanning method accepts (``None`` reads settings).

    Raises:
        InputError: unknown method or negative n.
        ScanLimitExceeded: a scanning method was asked for n > n_scan_max.
    """
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    if n < 0:
        raise InputError(f"n = {n} must be non-negative")

    if method == "fast":
        raw = _fast_triples(ctx, n)
    else:
        limit = settings.N_SCAN_MAX if n_scan_max is None else n_scan_max
        if n > limit:
            raise ScanLimitExceeded(
                f"{method} scan limited to n <= {limit}; use method 'fast' for n = {n}"
            )
        chunks = map_ordered(_scan_chunk, _scan_tasks(method, ctx, n), workers)
        raw = sorted(
            (triple for chunk in chunks for triple in chunk),
            key=lambda triple: (triple[0], triple[2]),
        )

    logger.debug(f"{method}: {len(raw)} orders of index {ctx.p}^{n} for m = {ctx.field.m}")
    return [make_triple(ctx, i, j, beta) for i, j, beta in raw]


def count_by_i(ctx: PrimeContext, n: int) -> Dict[int, int]:
    """How many orders of index p^n have each first diagonal exponent i."""
    counts: Dict[int, int] = {}
    for i, _, _ in _fast_triples(ctx, n):
        counts[i] = counts.get(i, 0) + 1
    return counts


def _geometric(p: int, terms: int) -> int:
    """(p^terms - 1) / (p - 1), with the division checked to be exact."""
    quotient, remainder = divmod(p ** terms - 1, p - 1)
    if remainder:
        raise CrossCheckMismatch(f"inexact geometric sum for p = {p}, terms = {terms}")
    return quotient


def count_orders_formula(ctx: PrimeContext, n: int) -> int:
    """Closed-form number of orders of index p^n."""
    if n < 0:
        raise InputError(f"n = {n} must be non-negative")
    p = ctx.p
    if ctx.divides_m:
        return _geometric(p, n // 3 + 1)
    ceil_third = -(-n // 3)
    r_p = count_cube_roots(ctx.field.m, p)
    return _geometric(p, 2 * n // 3 - ceil_third + 1) + r_p * _geometric(p, ceil_third)


def cumulative_A(
    ctx: PrimeContext,
    n_max: int,
    verify_scan: bool = False,
    method: str = "oracle",
    workers: Optional[int] = None,
    n_scan_max: Optional[int] = None,
) -> List[CountReport]:
    """
    Per-n counts and A_{K,p,n} for n = 0..n_max.

    With ``verify_scan`` each row is also counted by ``enumerate_orders(method)``
    for n up to the scan limit; larger rows keep ``by_scan = None``.

    Raises:
        CrossCheckMismatch: formula and enumeration disagree.
    """
    limit = settings.N_SCAN_MAX if n_scan_max is None else n_scan_max
    reports = []
    total = 0
    for n in range(n_max + 1):
        by_formula = count_orders_formula(ctx, n)
        total += by_formula
        by_scan = None
        if verify_scan:
            if method != "fast" and n > limit:
                logger.warning(f"Skipping {method} scan for n = {n} > {limit}")
            else:
                by_scan = len(enumerate_orders(ctx, n, method, workers, limit))
                if by_scan != by_formula:
                    raise CrossCheckMismatch(
                        f"m = {ctx.field.m}, p = {ctx.p}, n = {n}: "
                        f"formula {by_formula} != {method} scan {by_scan}"
                    )
        reports.append(CountReport(n=n, by_formula=by_formula, by_scan=by_scan, cumulative_A=total))
    return reports


def check_closure_equivalence(ctx: PrimeContext, triples: Sequence[Tuple[int, int, int]]) -> List[Tuple[int, int, int]]:
    """Triples on which the three classifiers do not all agree."""
    disagreements = []
    for i, j, beta in triples:
        verdicts = {CLASSIFIERS[name](ctx, i, j, beta) for name in SCAN_METHODS}
        if len(verdicts) > 1:
            disagreements.append((i, j, beta))
    return disagreements
