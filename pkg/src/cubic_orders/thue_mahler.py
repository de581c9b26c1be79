"""
Bounded Thue-Mahler search for k U^3 - h V^3 = +-p^N and its link to monogenic orders.

An order of index p^n is monogenic with witness (x, y) exactly when
(U, V) = (p^i x + beta y, p^j y) solves k U^3 - h V^3 = +-p^n. Dividing out
gcd(U, V) = p^e leaves a primitive solution with N = n - 3e, so every monogenic
order comes from one primitive solution, and each primitive solution yields at
most two orders of a given index.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

from .config import settings
from .exceptions import ClassificationGap, CrossCheckMismatch, InputError, MultiplicityViolation
from .field_core import PrimeContext
from .index_form import Witness, index_form_order, is_monogenic_bounded
from .order_enum import OrderTriple, enumerate_orders
from .padic import int_nu
from .workers import map_ordered

logger = logging.getLogger(__name__)

# orders linked to one (primitive solution, n) pair
MAX_LINKED_ORDERS = 2


@dataclass(frozen=True)
class PrimitiveSolution:
    """k U^3 - h V^3 = sign * p^N with gcd(U, V) = 1, V > 0 or (V = 0 and U > 0)."""
    U: int
    V: int
    N: int
    sign: int

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (self.N, self.V, self.U)

    @property
    def sign_symbol(self) -> str:
        return "+" if self.sign > 0 else "-"

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.U, self.V, self.N, self.sign)

    def to_dict(self) -> Dict[str, Any]:
        return {"U": self.U, "V": self.V, "N": self.N, "sign": self.sign_symbol}


class SolutionCase(str, Enum):
    CASE_I = "i"
    CASE_II = "ii"
    CASE_III = "iii"
    CASE_IV = "iv"
    ZERO_COORDINATE = "zero_coordinate"


@dataclass(frozen=True)
class SolutionClass:
    case: SolutionCase
    a: Optional[int]
    b: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        return {"case": self.case.value, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class LinkedOrder:
    """A monogenic order, its witness, and the primitive solution it comes from."""
    order: OrderTriple
    witness: Witness
    solution: PrimitiveSolution
    e: int

    def to_dict(self) -> Dict[str, Any]:
        x, y = self.witness
        return {
            **self.order.to_dict(),
            "x": x,
            "y": y,
            **self.solution.to_dict(),
            "e": self.e,
        }


@dataclass
class MonogenicCensus:
    """Monogenic orders of index p^n found by bounded search, with running totals."""
    n: int
    count_orders: int
    orders_found: List[Tuple[OrderTriple, Witness]]
    linked_solutions: Dict[OrderTriple, PrimitiveSolution]
    cumulative_A: int
    cumulative_B: int
    links: List[LinkedOrder] = field(default_factory=list)

    @property
    def count_monogenic_found(self) -> int:
        return len(self.orders_found)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.cumulative_B, self.cumulative_A)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "count_orders": self.count_orders,
            "count_monogenic_found": self.count_monogenic_found,
            "cumulative_A": self.cumulative_A,
            "cumulative_B": self.cumulative_B,
            "ratio": self.ratio,
        }


def _form_value(ctx: PrimeContext, U: int, V: int) -> int:
    return ctx.field.k * U ** 3 - ctx.field.h * V ** 3


def _as_prime_power(ctx: PrimeContext, value: int) -> Optional[Tuple[int, int]]:
    """(N, sign) with value = sign * p^N, or ``None``."""
    if value == 0:
        return None
    N = int_nu(value, ctx.p)
    if ctx.p ** N != abs(value):
        return None
    return N, (1 if value > 0 else -1)


def _solutions_with_v(task: Tuple[PrimeContext, int, int, int]) -> List[PrimitiveSolution]:
    ctx, V, H, N_max = task
    found = []
    for U in range(-H, H + 1):
        if V == 0 and U <= 0:
            continue
        if gcd(U, V) != 1:
            continue
        shape = _as_prime_power(ctx, _form_value(ctx, U, V))
        if shape is not None and shape[0] <= N_max:
            found.append(PrimitiveSolution(U, V, shape[0], shape[1]))
    return found


def find_primitive_solutions(
    ctx: PrimeContext,
    H: Optional[int] = None,
    N_max: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[PrimitiveSolution]:
    """
    Every canonical primitive solution with |U|, |V| <= H and N <= N_max.

    The box is split by V across workers; results are sorted by (N, V, U).
    """
    H = settings.TM_HEIGHT if H is None else H
    N_max = settings.TM_NMAX if N_max is None else N_max
    if H < 0 or N_max < 0:
        raise InputError(f"H = {H} and N_max = {N_max} must be non-negative")

    tasks = [(ctx, V, H, N_max) for V in range(0, H + 1)]
    solutions = [s for chunk in map_ordered(_solutions_with_v, tasks, workers) for s in chunk]
    solutions.sort(key=lambda s: s.sort_key)
    logger.info(
        f"{len(solutions)} primitive solutions of {ctx.field.k}U^3 - {ctx.field.h}V^3 = +-{ctx.p}^N "
        f"with height <= {H}, N <= {N_max}"
    )
    return solutions


def check_solution(s: PrimitiveSolution, ctx: PrimeContext) -> None:
    """Raise :class:`InputError` unless s is a canonical primitive solution for ctx."""
    if gcd(s.U, s.V) != 1:
        raise InputError(f"gcd({s.U}, {s.V}) != 1")
    if not (s.V > 0 or (s.V == 0 and s.U > 0)):
        raise InputError(f"({s.U}, {s.V}) is not the canonical sign representative")
    if s.N < 0 or s.sign not in (1, -1):
        raise InputError(f"invalid exponent or sign in {s.as_tuple()}")
    if _form_value(ctx, s.U, s.V) != s.sign * ctx.p ** s.N:
        raise InputError(f"{s.as_tuple()} does not solve kU^3 - hV^3 = +-p^N for m = {ctx.field.m}")


def classify_solution(s: PrimitiveSolution, ctx: PrimeContext) -> SolutionClass:
    """
    Sort a primitive solution by (a, b, N) = (nu_p(U), nu_p(V), N).

    Raises:
        ClassificationGap: U V != 0 and (a, b, N) fits none of the four shapes.
    """
    if s.U == 0 or s.V == 0:
        a = int_nu(s.U, ctx.p) if s.U else None
        b = int_nu(s.V, ctx.p) if s.V else None
        return SolutionClass(SolutionCase.ZERO_COORDINATE, a, b)

    a, b = int_nu(s.U, ctx.p), int_nu(s.V, ctx.p)
    if a == 0 and b == 0 and s.N == 0:
        case = SolutionCase.CASE_I
    elif a > 0 and b == 0 and s.N == ctx.nu_h:
        case = SolutionCase.CASE_II
    elif a == 0 and b > 0 and s.N == ctx.nu_k:
        case = SolutionCase.CASE_III
    elif a == 0 and b == 0 and s.N > 0 and not ctx.divides_m:
        case = SolutionCase.CASE_IV
    else:
        logger.error(f"Unclassifiable solution {s.as_tuple()} for m = {ctx.field.m}, p = {ctx.p}")
        raise ClassificationGap(
            f"(a, b, N) = ({a}, {b}, {s.N}) for {s.as_tuple()} matches no case"
        )
    return SolutionClass(case, a, b)


def solution_family(s: PrimitiveSolution, p: int, e: int) -> Tuple[int, int, int]:
    """The member (p^e U, p^e V, N + 3e) of the family generated by s."""
    if e < 0:
        raise InputError(f"e = {e} must be non-negative")
    scale = p ** e
    return (scale * s.U, scale * s.V, s.N + 3 * e)


def orders_from_solution(
    s: PrimitiveSolution,
    ctx: PrimeContext,
    n: int,
    orders: Optional[List[OrderTriple]] = None,
) -> List[Tuple[OrderTriple, int, int]]:
    """
    Orders of index p^n that are monogenic through the family of s.

    With e = (n - N) / 3, an order (i, j, beta) qualifies when
    y = p^(e-j) V and x = p^-i (p^e U - beta y) are integers; (x, y) is then a
    witness. Empty unless n >= N and n = N (mod 3).

    Args:
        orders: Orders of index p^n to test; enumerated when omitted.
    """
    if n < s.N or (n - s.N) % 3:
        return []
    e = (n - s.N) // 3
    U, V, _ = solution_family(s, ctx.p, e)
    candidates = enumerate_orders(ctx, n, "fast") if orders is None else orders

    found = []
    for t in candidates:
        y = Fraction(V, t.p_j)
        if y.denominator != 1:
            continue
        x = Fraction(U - t.beta * y.numerator, t.p_i)
        if x.denominator != 1:
            continue
        value = index_form_order(t).evaluate(x.numerator, y.numerator)
        if abs(value) != 1:
            raise CrossCheckMismatch(
                f"solution {s.as_tuple()} gives I({x}, {y}) = {value} on order {t.as_tuple()}"
            )
        found.append((t, x.numerator, y.numerator))
    return found


def link_witness(t: OrderTriple, witness: Witness) -> Tuple[PrimitiveSolution, int]:
    """
    The primitive solution behind a witness, and the exponent e with n = N + 3e.

    Raises:
        CrossCheckMismatch: gcd(U, V) is not a power of p, or the stripped pair
            does not solve the equation with N = n - 3e.
    """
    ctx = t.context
    x, y = witness
    U, V = t.p_i * x + t.beta * y, t.p_j * y
    g = gcd(U, V)
    if g == 0:
        raise CrossCheckMismatch(f"witness {witness} maps to (0, 0) on {t.as_tuple()}")
    e = int_nu(g, ctx.p)
    if ctx.p ** e != g:
        raise CrossCheckMismatch(f"gcd({U}, {V}) = {g} is not a power of {ctx.p}")
    U, V = U // g, V // g
    if V < 0 or (V == 0 and U < 0):
        U, V = -U, -V

    N = t.n - 3 * e
    shape = _as_prime_power(ctx, _form_value(ctx, U, V))
    if N < 0 or shape is None or shape[0] != N:
        raise CrossCheckMismatch(
            f"witness {witness} on {t.as_tuple()} strips to ({U}, {V}), "
            f"which does not solve the equation with N = {N}"
        )
    return PrimitiveSolution(U, V, N, shape[1]), e


def _search_order(task: Tuple[OrderTriple, int]) -> Optional[Witness]:
    t, H = task
    return is_monogenic_bounded(t, H).witness


@dataclass
class CensusSummary:
    """Census rows plus the solution counts the per-n bound is checked against."""
    rows: List[MonogenicCensus]
    solutions: List[PrimitiveSolution]
    g_found: int
    linked: List[PrimitiveSolution]
    threshold_N: Optional[int]

    def metadata(self) -> Dict[str, Any]:
        return {
            "g_found": self.g_found,
            "distinct_linked_solutions": len(self.linked),
            "threshold_N": self.threshold_N,
        }


def run_census(
    ctx: PrimeContext,
    n_max: int,
    H_search: Optional[int] = None,
    H_tm: Optional[int] = None,
    N_max: Optional[int] = None,
    workers: Optional[int] = None,
) -> CensusSummary:
    """
    Monogenic census for n = 0..n_max with the linkage and multiplicity checks.

    ``g_found`` counts primitive solutions found with height <= H_tm and
    N <= N_max; it is a lower bound for the true number of primitive solutions.

    Raises:
        MultiplicityViolation: a (primitive solution, n) pair links to three or
            more orders, or some n beyond ``threshold_N`` has more than twice as
            many monogenic orders as there are linked solutions.
    """
    if n_max < 0:
        raise InputError(f"n_max = {n_max} must be non-negative")
    H_search = settings.SEARCH_BOUND if H_search is None else H_search
    solutions = find_primitive_solutions(ctx, H_tm, N_max, workers)
    known = set(solutions)

    rows: List[MonogenicCensus] = []
    linked_all: Dict[PrimitiveSolution, None] = {}
    cumulative_A = cumulative_B = 0
    for n in range(n_max + 1):
        orders = enumerate_orders(ctx, n, "fast")
        witnesses = map_ordered(_search_order, [(t, H_search) for t in orders], workers)
        found = [(t, w) for t, w in zip(orders, witnesses) if w is not None]

        links = []
        multiplicity: Counter = Counter()
        for t, witness in found:
            solution, e = link_witness(t, witness)
            if solution not in known:
                logger.debug(f"Linked solution {solution.as_tuple()} lies outside the searched box")
            multiplicity[solution] += 1
            linked_all.setdefault(solution, None)
            links.append(LinkedOrder(t, witness, solution, e))

        for solution, count in multiplicity.items():
            if count > MAX_LINKED_ORDERS:
                logger.error(f"{count} orders of index {ctx.p}^{n} link to {solution.as_tuple()}")
                raise MultiplicityViolation(
                    f"solution {solution.as_tuple()} links to {count} orders of index {ctx.p}^{n}"
                )

        cumulative_A += len(orders)
        cumulative_B += len(found)
        rows.append(MonogenicCensus(
            n=n,
            count_orders=len(orders),
            orders_found=found,
            linked_solutions={link.order: link.solution for link in links},
            cumulative_A=cumulative_A,
            cumulative_B=cumulative_B,
            links=links,
        ))
        logger.info(f"n = {n}: {len(found)} of {len(orders)} orders monogenic within H = {H_search}")

    linked = sorted(linked_all, key=lambda s: s.sort_key)
    threshold_N = max((s.N for s in linked), default=None)
    if threshold_N is not None:
        for row in rows:
            if row.n > threshold_N and row.count_monogenic_found > 2 * len(linked):
                raise MultiplicityViolation(
                    f"n = {row.n}: {row.count_monogenic_found} monogenic orders "
                    f"exceed 2 x {len(linked)} linked solutions"
                )

    return CensusSummary(
        rows=rows,
        solutions=solutions,
        g_found=len(solutions),
        linked=linked,
        threshold_N=threshold_N,
    )


def monogenic_census(
    ctx: PrimeContext,
    n_max: int,
    H_search: Optional[int] = None,
    H_tm: Optional[int] = None,
    N_max: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[MonogenicCensus]:
    """Per-n census rows; see :func:`run_census` for the checks performed."""
    return run_census(ctx, n_max, H_search, H_tm, N_max, workers).rows
