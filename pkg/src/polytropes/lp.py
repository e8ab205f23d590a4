"""Exact linear programming over the rationals.

A dense two-phase simplex with Bland's rule, used for regularity witnesses,
cell realizability, and simplex-intersection tests. All coefficients are
fractions.Fraction; termination is guaranteed by Bland's rule. The LPs in
this package have tens of variables, so a tableau implementation is plenty.

Variables passed to solve_lp are free (unrestricted sign); the conversion to
standard form happens internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _simplex(tab: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Minimize the cost row of a tableau in place. Bland's rule.

    tab has R constraint rows [A | b] with b >= 0 followed by one cost row
    [c | -z]. basis[i] is the basic column of row i. Returns OPTIMAL or
    UNBOUNDED.
    """
    nrows = len(tab) - 1
    while True:
        cost = tab[nrows]  # _pivot rebinds rows, so re-read each round
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best: Fraction | None = None
        for i in range(nrows):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][ncols] / coef
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tab, leave, enter, ncols)
        basis[leave] = enter


def _pivot(tab: list[list[Fraction]], row: int, col: int, ncols: int) -> None:
    inv = tab[row][col]
    tab[row] = [x / inv for x in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [a - f * b for a, b in zip(r, prow)]


def solve_standard(
    a: list[list[Fraction]], b: list[Fraction], c: list[Fraction]
) -> LPResult:
    """min c.y s.t. A y = b, y >= 0."""
    nrows = len(a)
    ncols = len(c)
    # make rhs nonnegative
    rows = []
    rhs = []
    for i in range(nrows):
        if b[i] < 0:
            rows.append([-x for x in a[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(a[i]))
            rhs.append(b[i])

    # phase 1: artificial variables
    total = ncols + nrows
    tab = [rows[i] + [Fraction(0)] * nrows + [rhs[i]] for i in range(nrows)]
    for i in range(nrows):
        tab[i][ncols + i] = Fraction(1)
    basis = [ncols + i for i in range(nrows)]
    phase1 = [Fraction(0)] * (total + 1)
    for i in range(nrows):  # reduced costs of min(sum of artificials)
        for j in range(total + 1):
            phase1[j] -= tab[i][j]
    for i in range(nrows):
        phase1[ncols + i] = Fraction(0)
    tab.append(phase1)
    status = _simplex(tab, basis, total)
    assert status == OPTIMAL  # phase 1 is bounded below by 0
    if -tab[nrows][total] > 0:
        return LPResult(INFEASIBLE)
    # drive leftover artificials out of the basis
    drop_rows: list[int] = []
    for i in range(nrows):
        if basis[i] >= ncols:
            col = next((j for j in range(ncols) if tab[i][j] != 0), None)
            if col is None:
                drop_rows.append(i)
            else:
                _pivot(tab, i, col, total)
                basis[i] = col
    if drop_rows:
        tab = [r for i, r in enumerate(tab[:nrows]) if i not in drop_rows]
        basis = [bv for i, bv in enumerate(basis) if i not in drop_rows]
        nrows = len(tab)
    else:
        tab = tab[:nrows]
    # strip artificial columns, install phase-2 costs
    tab = [row[:ncols] + [row[total]] for row in tab]
    cost = list(c) + [Fraction(0)]
    for i in range(nrows):  # reduce over the current basis
        if cost[basis[i]] != 0:
            f = cost[basis[i]]
            cost = [a - f * bb for a, bb in zip(cost, tab[i])]
    tab.append(cost)
    status = _simplex(tab, basis, ncols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    y = [Fraction(0)] * ncols
    for i in range(nrows):
        y[basis[i]] = tab[i][ncols]
    value = sum((ci * yi for ci, yi in zip(c, y)), Fraction(0))
    return LPResult(OPTIMAL, value, tuple(y))


def solve_lp(
    c: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    a_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    maximize: bool = False,
) -> LPResult:
    """Optimize c.x subject to a_eq x = b_eq and a_ub x <= b_ub, x free.

    Returns an LPResult whose value and x are in terms of the original free
    variables. status is "optimal", "infeasible", or "unbounded".
    """
    nvars = len(c)
    c = [Fraction(v) for v in c]
    if maximize:
        c = [-v for v in c]

    # x = u - v with u, v >= 0, one slack per inequality
    nslack = len(a_ub)
    width = 2 * nvars + nslack
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for row, bv in zip(a_eq, b_eq):
        r = [Fraction(x) for x in row]
        rows.append(r + [-x for x in r] + [Fraction(0)] * nslack)
        rhs.append(Fraction(bv))
    for k, (row, bv) in enumerate(zip(a_ub, b_ub)):
        r = [Fraction(x) for x in row]
        slack = [Fraction(0)] * nslack
        slack[k] = Fraction(1)
        rows.append(r + [-x for x in r] + slack)
        rhs.append(Fraction(bv))
    cc = c + [-v for v in c] + [Fraction(0)] * nslack
    res = solve_standard(rows, rhs, cc)
    if res.status != OPTIMAL:
        return res
    y = res.x
    x = tuple(y[j] - y[nvars + j] for j in range(nvars))
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    if maximize:
        value = -value
    return LPResult(OPTIMAL, value, x)
