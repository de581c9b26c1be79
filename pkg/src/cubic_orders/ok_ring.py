"""
Exact arithmetic in the ring of integers Z[1, X, Y] of a pure cubic field.

Multiplication table (X = theta, Y = theta^2 / k, m = h k^2):
X^2 = k Y, X Y = Y X = h k, Y^2 = h X.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .exceptions import CrossCheckMismatch, NotFullRank
from .field_core import PureCubicField

if TYPE_CHECKING:
    from .order_enum import OrderTriple

logger = logging.getLogger(__name__)

Row = Tuple[int, int, int]


@dataclass(frozen=True)
class RingElement:
    """c0 + c1 X + c2 Y with arbitrary-precision integer coordinates."""
    c0: int
    c1: int
    c2: int

    def as_tuple(self) -> Row:
        return (self.c0, self.c1, self.c2)


ONE = RingElement(1, 0, 0)
X = RingElement(0, 1, 0)
Y = RingElement(0, 0, 1)


def mul(a: RingElement, b: RingElement, field: PureCubicField) -> RingElement:
    """Product of two elements of the ring of integers of ``field``."""
    h, k = field.h, field.k
    return RingElement(
        a.c0 * b.c0 + h * k * (a.c1 * b.c2 + a.c2 * b.c1),
        a.c0 * b.c1 + a.c1 * b.c0 + h * a.c2 * b.c2,
        a.c0 * b.c2 + a.c2 * b.c0 + k * a.c1 * b.c1,
    )


def in_order_lattice(elem: RingElement, triple: "OrderTriple") -> bool:
    """
    Membership in the lattice spanned by 1, p^i X and beta X + p^j Y.

    The rational coordinate is unconstrained because 1 belongs to the lattice.
    """
    pi, pj = triple.p_i, triple.p_j
    if elem.c2 % pj:
        return False
    return (elem.c1 - (elem.c2 // pj) * triple.beta) % pi == 0


@dataclass(frozen=True)
class OrderHNF:
    """
    Lower-triangular Hermite normal form of a full-rank lattice in Z^3.

    Rows span the lattice; diagonal entries are positive and every entry below
    the diagonal lies in [0, diagonal entry of its column).
    """
    rows: Tuple[Row, Row, Row]

    @property
    def index(self) -> int:
        return self.rows[0][0] * self.rows[1][1] * self.rows[2][2]

    @property
    def diagonal(self) -> Row:
        return (self.rows[0][0], self.rows[1][1], self.rows[2][2])


def generator_index(xi: RingElement, field: PureCubicField) -> int:
    """
    Module index [O_K : Z[xi]], i.e. |det(1, xi, xi^2)|.

    Raises:
        NotFullRank: xi is rational.
    """
    square = mul(xi, xi, field)
    index = abs(xi.c1 * square.c2 - xi.c2 * square.c1)
    if index == 0:
        raise NotFullRank(f"1, xi, xi^2 are dependent for xi = {xi.as_tuple()}")
    return index


def hnf_of_rows(rows) -> OrderHNF:
    """Hermite normal form of the lattice spanned by three integer rows."""
    # sympy reduces column lattices to upper-triangular form; transpose both ways
    reduced = hermite_normal_form(Matrix(rows).T)
    if reduced.shape != (3, 3):
        raise NotFullRank(f"rows {rows} do not span a rank-3 lattice")
    hnf = OrderHNF(rows=tuple(
        tuple(int(reduced[r, c]) for r in range(3)) for c in range(3)
    ))
    _check_hnf_shape(hnf)
    return hnf


def _check_hnf_shape(hnf: OrderHNF) -> None:
    rows = hnf.rows
    for r in range(3):
        if rows[r][r] <= 0 or any(rows[r][c] for c in range(r + 1, 3)):
            raise CrossCheckMismatch(f"not lower triangular: {rows}")
        for c in range(r):
            if not 0 <= rows[r][c] < rows[c][c]:
                raise CrossCheckMismatch(f"entry ({r},{c}) not reduced: {rows}")


def order_from_generator(xi: RingElement, field: PureCubicField) -> OrderHNF:
    """
    Hermite normal form of Z[xi] = span{1, xi, xi^2}.

    The index is |det| and does not depend on the rational coordinate of xi.

    Raises:
        NotFullRank: xi is rational.
    """
    index = generator_index(xi, field)
    square = mul(xi, xi, field)
    hnf = hnf_of_rows([ONE.as_tuple(), xi.as_tuple(), square.as_tuple()])
    if hnf.index != index:
        raise CrossCheckMismatch(
            f"HNF determinant {hnf.index} differs from generator index {index}"
        )
    logger.debug(f"Z[{xi.as_tuple()}] has index {index} and HNF {hnf.rows}")
    return hnf
