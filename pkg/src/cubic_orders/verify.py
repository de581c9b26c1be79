"""
Cross-verification harness.

Runs every order classifier on every lattice of a grid of (m, p, n) and checks
the results against one another, the closed-form count, the index-form
identities and the cube-root count.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .exceptions import CubicOrdersError, InputError, NotAnOrder
from .field_core import PrimeContext, make_field, make_prime_context
from .index_form import index_form_maximal, index_form_order
from .order_enum import (
    CLASSIFIERS,
    SCAN_CHUNK,
    SCAN_METHODS,
    count_orders_formula,
    enumerate_orders,
    make_triple,
)
from .padic import count_cube_roots, count_cube_roots_exhaustive
from .workers import map_ordered

logger = logging.getLogger(__name__)

DEFAULT_MS = (2, 3, 5, 6, 7, 11, 12)
DEFAULT_PS = (5, 7, 11)
DEFAULT_N_MAX = 3
# |x|, |y| bound for the index-form identity
DEFAULT_IDENTITY_BOX = 20


@dataclass(frozen=True)
class VerificationGrid:
    ms: Tuple[int, ...] = DEFAULT_MS
    ps: Tuple[int, ...] = DEFAULT_PS
    n_max: int = DEFAULT_N_MAX
    identity_box: int = DEFAULT_IDENTITY_BOX

    @property
    def is_empty(self) -> bool:
        return not self.ms or not self.ps or self.n_max < 0


@dataclass
class PropertyResult:
    """Outcome of one checked property over the whole grid."""
    name: str
    passed: bool = True
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def detail(self) -> str:
        if self.passed:
            return f"{self.cases} cases"
        shown = "; ".join(self.failures[:5])
        more = f" (+{len(self.failures) - 5} more)" if len(self.failures) > 5 else ""
        return f"{len(self.failures)} of {self.cases} cases failed: {shown}{more}"

    def record(self, ok: bool, message: str = "") -> None:
        self.cases += 1
        if not ok:
            self.passed = False
            self.failures.append(message)

    def to_dict(self) -> Dict[str, Any]:
        return {"property": self.name, "passed": "PASS" if self.passed else "FAIL", "detail": self.detail}


def _verdict_chunk(task: Tuple[PrimeContext, int, int, int, int]) -> Dict[str, List[int]]:
    ctx, i, j, start, stop = task
    accepted: Dict[str, List[int]] = {name: [] for name in SCAN_METHODS}
    for beta in range(start, stop):
        for name in SCAN_METHODS:
            if CLASSIFIERS[name](ctx, i, j, beta):
                accepted[name].append(beta)
    return accepted


def _scan_all(ctx: PrimeContext, n: int, workers: Optional[int]) -> Dict[str, List[Tuple[int, int, int]]]:
    """Accepted (i, j, beta) per classifier, every lattice of index p^n visited once."""
    tasks = []
    for i in range(n + 1):
        width = ctx.p ** i
        for start in range(0, width, SCAN_CHUNK):
            tasks.append((ctx, i, n - i, start, min(start + SCAN_CHUNK, width)))
    merged: Dict[str, List[Tuple[int, int, int]]] = {name: [] for name in SCAN_METHODS}
    for task, accepted in zip(tasks, map_ordered(_verdict_chunk, tasks, workers)):
        _, i, j, _, _ = task
        for name, betas in accepted.items():
            merged[name].extend((i, j, beta) for beta in betas)
    return merged


def _contexts(grid: VerificationGrid) -> Iterable[PrimeContext]:
    for m in grid.ms:
        try:
            field_ = make_field(m)
        except InputError as exc:
            logger.warning(f"Skipping m = {m}: {exc}")
            continue
        for p in grid.ps:
            try:
                yield make_prime_context(field_, p)
            except InputError as exc:
                logger.warning(f"Skipping p = {p}: {exc}")


def _check_index_forms(ctx: PrimeContext, orders: Sequence[Tuple[int, int, int]],
                       identity: PropertyResult, integrality: PropertyResult, bound: int) -> None:
    maximal = index_form_maximal(ctx.field)
    box = range(-bound, bound + 1)
    for i, j, beta in orders:
        t = make_triple(ctx, i, j, beta)
        try:
            form = index_form_order(t)
        except NotAnOrder as exc:
            integrality.record(False, str(exc))
            continue
        d_ok = (ctx.field.k * beta ** 3 - ctx.field.h * t.p_j ** 3) % t.index == 0
        integrality.record(d_ok, f"D not integral for {t.as_tuple()}")
        bad = [
            (x, y) for x in box for y in box
            if t.index * form.evaluate(x, y) != maximal.evaluate(t.p_i * x + beta * y, t.p_j * y)
        ]
        identity.record(not bad, f"m = {ctx.field.m}, p = {ctx.p}, {t.as_tuple()} at {bad[:1]}")


def run_verification(grid: Optional[VerificationGrid] = None, workers: Optional[int] = None) -> List[PropertyResult]:
    """
    Check every property over the grid; an empty grid gives an empty list.

    Properties:
        classifier_equivalence: oracle, valuation and closed-form accept the same lattices.
        formula_vs_enumeration: each method finds exactly count_orders_formula orders,
            and the fast enumerator returns the oracle's list.
        count_bounds: p^floor(n/3) <= A_{K,p,n} <= p^n.
        index_form_identity: p^n I_order(x, y) = I_max(p^i x + beta y, p^j y)
            for |x|, |y| <= grid.identity_box.
        index_form_integrality: every accepted lattice has an integral index form.
        cube_root_count: r_p by formula equals the exhaustive count.
    """
    grid = grid or VerificationGrid()
    if grid.is_empty:
        logger.warning("Verification grid is empty: no cases")
        return []

    equivalence = PropertyResult("classifier_equivalence")
    counts = PropertyResult("formula_vs_enumeration")
    bounds = PropertyResult("count_bounds")
    identity = PropertyResult("index_form_identity")
    integrality = PropertyResult("index_form_integrality")
    cube_roots = PropertyResult("cube_root_count")

    for ctx in _contexts(grid):
        m, p = ctx.field.m, ctx.p
        cube_roots.record(
            count_cube_roots(m, p) == count_cube_roots_exhaustive(m, p),
            f"r_{p}({m}) differs from exhaustive count",
        )
        cumulative = 0
        for n in range(grid.n_max + 1):
            label = f"m = {m}, p = {p}, n = {n}"
            try:
                accepted = _scan_all(ctx, n, workers)
                fast = [t.as_tuple() for t in enumerate_orders(ctx, n, "fast", workers)]
                formula = count_orders_formula(ctx, n)
            except CubicOrdersError as exc:
                counts.record(False, f"{label}: {type(exc).__name__}: {exc}")
                continue

            reference = accepted["oracle"]
            equivalence.record(
                all(accepted[name] == reference for name in SCAN_METHODS),
                f"{label}: " + ", ".join(f"{name} {len(accepted[name])}" for name in SCAN_METHODS),
            )
            sizes = {name: len(accepted[name]) for name in SCAN_METHODS}
            sizes["fast"] = len(fast)
            counts.record(
                all(size == formula for size in sizes.values()) and fast == reference,
                f"{label}: formula {formula}, " + ", ".join(f"{k} {v}" for k, v in sizes.items()),
            )
            cumulative += formula
            bounds.record(
                p ** (n // 3) <= cumulative <= p ** n,
                f"{label}: A = {cumulative} outside [{p ** (n // 3)}, {p ** n}]",
            )
            _check_index_forms(ctx, reference, identity, integrality, grid.identity_box)

    results = [equivalence, counts, bounds, identity, integrality, cube_roots]
    for result in results:
        level = logging.INFO if result.passed else logging.ERROR
        logger.log(level, f"{result.name}: {'PASS' if result.passed else 'FAIL'} ({result.detail})")
    return results
