"""Exact min-plus (tropical) arithmetic.

Scalars are exact rationals (fractions.Fraction) together with a single
tagged infinity INF, the additive identity of the semiring
(R u {inf}, min, +). INF is a distinguished object, never a numeric
sentinel: it absorbs under + and loses every min.

Matrices are immutable. kleene_star computes C* = (I (+) C)^(n-1) by
repeated squaring and raises NegativeCycleError when the input has a
negative cycle, detected by a negative diagonal entry of (I (+) C)^n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union


class _Infinity:
    """Tropical infinity. A singleton; compare and add like +infinity."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("polytropes-INF")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object):
        return self

    def __radd__(self, other: object):
        return self

    def __reduce__(self):  # pickle to the singleton
        return (_get_inf, ())


INF = _Infinity()


def _get_inf() -> _Infinity:
    return INF


TropVal = Union[Fraction, _Infinity]


def is_finite(x: TropVal) -> bool:
    return x is not INF


def coerce(x) -> TropVal:
    """Coerce ints, strings ('p/q' or 'inf'), and Fractions to a TropVal."""
    if x is INF:
        return INF
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if s in ("inf", "Inf", "INF", "∞"):
            return INF
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a tropical scalar")


def format_scalar(x: TropVal) -> str:
    return "inf" if x is INF else str(x)


class NegativeCycleError(ValueError):
    """The weighted digraph of the matrix contains a negative cycle."""


@dataclass(frozen=True)
class TropMatrix:
    """Immutable rectangular matrix over the min-plus semiring."""

    entries: tuple[tuple[TropVal, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("matrix must have at least one row")
        width = len(self.entries[0])
        if width == 0 or any(len(row) != width for row in self.entries):
            raise ValueError("rows must be nonempty and of equal length")

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "TropMatrix":
        return TropMatrix(tuple(tuple(coerce(x) for x in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "TropMatrix":
        """Tropical identity: 0 on the diagonal, INF off it."""
        return TropMatrix(
            tuple(
                tuple(Fraction(0) if i == j else INF for j in range(n))
                for i in range(n)
            )
        )

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, key: tuple[int, int]) -> TropVal:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[TropVal, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[TropVal, ...]:
        return tuple(row[j] for row in self.entries)

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_scalar(x) for x in row) for row in self.entries
        )
        return f"TropMatrix[{body}]"


def mat_add(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Entrywise tropical sum (entrywise min)."""
    if (a.n_rows, a.n_cols) != (b.n_rows, b.n_cols):
        raise ValueError("dimension mismatch in tropical matrix sum")
    return TropMatrix(
        tuple(
            tuple(min(x, y) for x, y in zip(ra, rb))
            for ra, rb in zip(a.entries, b.entries)
        )
    )


def mat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Tropical matrix product: (A (.) B)_ij = min_k (a_ik + b_kj)."""
    if a.n_cols != b.n_rows:
        raise ValueError("dimension mismatch in tropical matrix product")
    bt = [b.col(j) for j in range(b.n_cols)]
    out = []
    for row in a.entries:
        out.append(
            tuple(min(x + y for x, y in zip(row, col)) for col in bt)
        )
    return TropMatrix(tuple(out))


def trop_apply(a: TropMatrix, x: Sequence[TropVal]) -> tuple[TropVal, ...]:
    """Tropical matrix-vector product A (.) x."""
    if a.n_cols != len(x):
        raise ValueError("dimension mismatch in tropical matrix-vector product")
    return tuple(min(c + v for c, v in zip(row, x)) for row in a.entries)


def kleene_star(c: TropMatrix) -> TropMatrix:
    """Kleene star C* = I (+) C (+) C^2 (+) ... = (I (+) C)^(n-1).

    Computed by repeated squaring. Raises NegativeCycleError when the
    weighted digraph of C has a negative-weight cycle, in which case the
    star diverges; detection checks the diagonal of (I (+) C)^n.
    """
    if not c.is_square():
        raise ValueError("kleene_star requires a square matrix")
    n = c.n_rows
    b = mat_add(TropMatrix.identity(n), c)
    power = b
    exponent = 1
    while exponent < n - 1:
        power = mat_mul(power, power)
        exponent *= 2
    check = mat_mul(power, power)  # exponent >= n for n >= 2, and 2 for n = 1
    for i in range(n):
        if check[i, i] < 0:
            raise NegativeCycleError("matrix has a negative cycle")
    return power if n > 1 else check  # n = 1: star is [[min(0, c_00, ...)]] = [[0]]


def is_kleene(c: TropMatrix) -> bool:
    """Whether C equals its own Kleene star.

    Checks the three characterizing conditions: zero diagonal, the triangle
    inequality c_ij <= c_ik + c_kj for all i, j, k, and idempotence
    C (.) C = C. The first two imply the third; all are checked anyway.
    """
    if not c.is_square():
        return False
    n = c.n_rows
    for i in range(n):
        if c[i, i] != 0:
            return False
    for i in range(n):
        for j in range(n):
            cij = c[i, j]
            for k in range(n):
                if c[i, k] + c[k, j] < cij:
                    return False
    return mat_mul(c, c) == c
