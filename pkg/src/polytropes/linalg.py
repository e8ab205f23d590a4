"""Exact dense linear algebra over the rationals.

Small routines shared by the geometry modules. Matrices are lists of rows of
fractions.Fraction; nothing here ever touches floating point. Problem sizes
in this package are tiny, so the implementations favour clarity.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vector = Sequence[Fraction]


def _copy_rows(rows: Sequence[Vector]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Vector]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a matrix.

    Returns (reduced rows, pivot column indices).
    """
    m = _copy_rows(rows)
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _scaled_int_rows(
    rows: Sequence[Vector],
) -> tuple[list[list[int]], list[int]] | None:
    """Rows rescaled to integers by clearing per-row denominators.

    Returns (scaled rows, per-row scales), or None when an entry is neither
    an int nor a Fraction. Positive row scalings preserve rank and multiply
    the determinant by each scale, so those computations may run over plain
    integers, which is much cheaper than Fraction arithmetic.
    """
    out: list[list[int]] = []
    scales: list[int] = []
    for row in rows:
        nums: list[int] = []
        dens: list[int] = []
        for x in row:
            if isinstance(x, int):
                nums.append(x)
                dens.append(1)
            elif isinstance(x, Fraction):
                nums.append(x.numerator)
                dens.append(x.denominator)
            else:
                return None
        scale = 1
        for d in dens:
            scale = scale * d // math.gcd(scale, d)
        out.append([v * (scale // d) for v, d in zip(nums, dens)])
        scales.append(scale)
    return out, scales


def _int_rank(m: list[list[int]]) -> int:
    """Rank by fraction-free (Bareiss) elimination; m is consumed."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        prow = m[r]
        pv = prow[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            # Bareiss step: entries stay (r+2)-minors, division is exact
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = pv
        r += 1
    return r


def rank(rows: Sequence[Vector]) -> int:
    scaled = _scaled_int_rows(rows)
    if scaled is not None:
        return _int_rank(scaled[0])
    return len(rref(rows)[1])


def solve(a_rows: Sequence[Vector], b: Vector) -> list[Fraction] | None:
    """One solution of A x = b, or None if inconsistent.

    Free variables are set to zero, so the solution is deterministic.
    """
    if not a_rows:
        return []
    ncols = len(a_rows[0])
    aug = [list(row) + [bv] for row, bv in zip(a_rows, b)]
    reduced, pivots = rref(aug)
    for row in reduced:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None  # pivot in the augmented column: inconsistent
        x[c] = reduced[r][ncols]
    return x


def _int_det(m: list[list[int]]) -> int:
    """Determinant by Bareiss elimination; m is consumed."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        pivot_row = next((i for i in range(c, n) if m[i][c]), None)
        if pivot_row is None:
            return 0
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        prow = m[c]
        pv = prow[c]
        for i in range(c + 1, n):
            row = m[i]
            f = row[c]
            for j in range(c + 1, n):
                row[j] = (pv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = pv
    return sign * m[n - 1][n - 1]


def det(rows: Sequence[Vector]) -> Fraction:
    """Determinant of a square matrix by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant requires a square matrix")
    scaled = _scaled_int_rows(rows)
    if scaled is not None:
        ints, scales = scaled
        denom = 1
        for s in scales:
            denom *= s
        return Fraction(_int_det(ints), denom)
    m = _copy_rows(rows)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        result *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * result


def affine_basis_indices(points: Sequence[Vector]) -> list[int]:
    """Indices of an affinely independent subset spanning the affine hull.

    The first returned index is the base point; the difference vectors of the
    remaining indices against it are linearly independent. Greedy and
    deterministic: earliest usable index wins.
    """
    if not points:
        raise ValueError("need at least one point")
    base = 0
    chosen = [base]
    dirs: list[list[Fraction]] = []
    for k in range(1, len(points)):
        cand = [Fraction(a) - Fraction(b) for a, b in zip(points[k], points[base])]
        if rank(dirs + [cand]) > len(dirs):
            dirs.append(cand)
            chosen.append(k)
    return chosen


def affine_coordinates(
    points: Sequence[Vector],
) -> tuple[list[list[Fraction]], list[int]]:
    """Coordinates of points in a basis of their own affine span.

    Returns (coords, basis): basis = affine_basis_indices(points), and
    coords[k] is the unique vector y with
    points[k] = points[basis[0]] + sum_j y_j * (points[basis[j+1]] - points[basis[0]]).
    The points become full-dimensional in R^D, D = len(basis) - 1.
    """
    basis = affine_basis_indices(points)
    base = points[basis[0]]
    dirs = [
        [Fraction(a) - Fraction(b) for a, b in zip(points[i], base)]
        for i in basis[1:]
    ]
    # transpose once: solve dirs^T y = p - base for each point p
    if dirs:
        at_rows = [[d[r] for d in dirs] for r in range(len(base))]
    coords: list[list[Fraction]] = []
    for p in points:
        rhs = [Fraction(a) - Fraction(b) for a, b in zip(p, base)]
        if not dirs:
            coords.append([])
            continue
        y = solve(at_rows, rhs)
        if y is None:
            raise ValueError("point outside the affine span of the basis")
        coords.append(y)
    return coords, basis


def barycentric(
    simplex: Sequence[Vector], p: Vector
) -> list[Fraction] | None:
    """Affine-combination coefficients of p w.r.t. the given points.

    Solves sum_i lam_i v_i = p with sum_i lam_i = 1. Returns None when p is
    not in the affine hull. Unique when the points are affinely independent.
    """
    dim = len(p)
    rows = [[Fraction(v[r]) for v in simplex] for r in range(dim)]
    rows.append([Fraction(1)] * len(simplex))
    rhs = [Fraction(x) for x in p] + [Fraction(1)]
    return solve(rows, rhs)


def is_affinely_independent(points: Sequence[Vector]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    dirs = [
        [Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]
    ]
    return rank(dirs) == len(dirs)
