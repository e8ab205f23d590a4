"""Regular subdivisions of point configurations, exactly.

A PointList is an ordered list of labeled rational points. Heights lift the
points one dimension up; the maximal cells of the induced subdivision are
the full contact sets of the lower facets of the lifted hull. Everything is
computed in exact rational arithmetic inside the affine span of the
configuration, so degenerate heights (ties, affine pieces) are handled
exactly rather than by perturbation.

The fundamental polytope of a weighted DAG lifts with heights (0, w): the
origin at height zero and each root e_i - e_j at the weight of its edge.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg
from .dag import WeightedDag
from .lp import OPTIMAL, solve_lp, solve_standard
from .semiring import is_finite

Point = tuple[Fraction, ...]
Cell = tuple[int, ...]


@dataclass(frozen=True)
class PointList:
    """Labeled rational points, all distinct, all of one dimension."""

    points: tuple[Point, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("need at least one point")
        if len(self.points) != len(self.labels):
            raise ValueError("points and labels must align")
        width = len(self.points[0])
        if any(len(p) != width for p in self.points):
            raise ValueError("points must share a dimension")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be distinct")

    @staticmethod
    def build(items: Iterable[tuple[Sequence, str]]) -> "PointList":
        pts = []
        labels = []
        for coords, label in items:
            pts.append(tuple(Fraction(x) for x in coords))
            labels.append(label)
        return PointList(tuple(pts), tuple(labels))

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, coords: Sequence) -> int:
        target = tuple(Fraction(x) for x in coords)
        return self.points.index(target)

    def origin_index(self) -> int:
        """Index of the all-zero point; raises ValueError when absent."""
        zero = tuple([Fraction(0)] * len(self.points[0]))
        try:
            return self.points.index(zero)
        except ValueError:
            raise ValueError("configuration has no origin point") from None


@dataclass(frozen=True)
class Subdivision:
    """Maximal cells of a polyhedral subdivision of a point configuration.

    Cells are sorted tuples of point indices; only full-dimensional maximal
    cells are listed. heights, when present, are the lift that induced the
    subdivision.
    """

    point_list: PointList
    cells: tuple[Cell, ...]
    heights: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        m = len(self.point_list)
        for cell in self.cells:
            if tuple(sorted(set(cell))) != cell:
                raise ValueError("cells must be sorted index tuples")
            if any(not 0 <= k < m for k in cell):
                raise ValueError("cell index out of range")
        if self.cells != tuple(sorted(self.cells)):
            raise ValueError("cells must be listed in sorted order")
        if self.heights is not None and len(self.heights) != m:
            raise ValueError("heights must align with points")


def fundamental_polytope(g: WeightedDag) -> PointList:
    """Origin plus the root e_i - e_j for every edge j -> i, in edge order."""
    items: list[tuple[list[Fraction], str]] = [
        ([Fraction(0)] * g.n, "0")
    ]
    for j, i in g.edges:
        v = [Fraction(0)] * g.n
        v[i - 1] = Fraction(1)
        v[j - 1] = Fraction(-1)
        items.append((v, f"e{i}-e{j}"))
    return PointList.build(items)


def weight_heights(g: WeightedDag) -> tuple[Fraction, ...]:
    """Heights (0, w) aligned with fundamental_polytope(g)."""
    return (Fraction(0),) + g.edge_weights


def root_polytope(config) -> PointList:
    """Vertices (e_j, e_i) in Z^(n+d) for the finite entries of a d x n matrix.

    Point j of the configuration contributes one vertex per finite
    coordinate i, in column-major order. Accepts a TropMatrix or anything
    carrying one as a `matrix` attribute.
    """
    m = getattr(config, "matrix", config)
    d, n = m.n_rows, m.n_cols
    items: list[tuple[list[Fraction], str]] = []
    for j in range(1, n + 1):
        for i in range(1, d + 1):
            if not is_finite(m[i - 1, j - 1]):
                continue
            vec = [Fraction(0)] * (n + d)
            vec[j - 1] = Fraction(1)
            vec[n + i - 1] = Fraction(1)
            items.append((vec, f"(e{j},e{i})"))
    return PointList.build(items)


def root_heights(config) -> tuple[Fraction, ...]:
    """The finite entries v_ij aligned with root_polytope(config)."""
    m = getattr(config, "matrix", config)
    return tuple(
        m[i, j]
        for j in range(m.n_cols)
        for i in range(m.n_rows)
        if is_finite(m[i, j])
    )


def _span_coords(points: Sequence[Point]) -> tuple[list[list[Fraction]], int]:
    coords, basis = linalg.affine_coordinates(points)
    return coords, len(basis) - 1


def regular_subdivision(
    pl: PointList, heights: Sequence
) -> Subdivision:
    """Lower-facet subdivision of the lifted configuration.

    Each maximal cell is the full set of points on one lower supporting
    hyperplane of the lift. When the heights are affine the result is the
    trivial subdivision with a single cell.
    """
    hs = tuple(Fraction(h) for h in heights)
    if len(hs) != len(pl):
        raise ValueError("heights must align with points")
    m = len(pl)
    if m == 1:
        return Subdivision(pl, ((0,),), hs)
    coords, dim = _span_coords(pl.points)
    cells: set[Cell] = set()
    for subset in itertools.combinations(range(m), dim + 1):
        rows = [list(coords[k]) + [Fraction(1)] for k in subset]
        if linalg.rank(rows) < dim + 1:
            continue  # affinely dependent projection
        sol = linalg.solve(rows, [hs[k] for k in subset])
        grad, offset = sol[:dim], sol[dim]
        values = [
            sum(g * x for g, x in zip(grad, coords[k])) + offset
            for k in range(m)
        ]
        if all(v <= h for v, h in zip(values, hs)):
            cells.add(tuple(k for k in range(m) if values[k] == hs[k]))
    return Subdivision(pl, tuple(sorted(cells)), hs)


def _cell_dim(coords: Sequence[Sequence[Fraction]], cell: Cell) -> int:
    pts = [coords[k] for k in cell]
    base = pts[0]
    dirs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    return linalg.rank(dirs)


def _simplex_volume(
    coords: Sequence[Sequence[Fraction]], cell: Cell
) -> Fraction:
    """|det| of the difference vectors; a dimension-consistent volume unit."""
    base = coords[cell[0]]
    rows = [[a - b for a, b in zip(coords[k], base)] for k in cell[1:]]
    return abs(linalg.det(rows))


def _generic_triangulation(
    coords: Sequence[Sequence[Fraction]], dim: int
) -> list[Cell]:
    """Some triangulation of the configuration, via a placing-style lift."""
    m = len(coords)
    if m == 1:
        return [(0,)]
    scale = Fraction(max(m, 2))
    while True:
        hs = [scale**k for k in range(m)]
        cells: set[Cell] = set()
        for subset in itertools.combinations(range(m), dim + 1):
            rows = [list(coords[k]) + [Fraction(1)] for k in subset]
            if linalg.rank(rows) < dim + 1:
                continue
            sol = linalg.solve(rows, [hs[k] for k in subset])
            grad, offset = sol[:dim], sol[dim]
            values = [
                sum(g * x for g, x in zip(grad, coords[k])) + offset
                for k in range(m)
            ]
            if all(v <= h for v, h in zip(values, hs)):
                cells.add(tuple(k for k in range(m) if values[k] == hs[k]))
        if all(len(c) == dim + 1 for c in cells):
            return sorted(cells)
        scale *= scale  # not yet generic; push harder


def _config_volume(coords: Sequence[Sequence[Fraction]], dim: int) -> Fraction:
    return sum(
        (_simplex_volume(coords, c) for c in _generic_triangulation(coords, dim)),
        Fraction(0),
    )


def _polytope_volume(
    coords: Sequence[Sequence[Fraction]], cell: Cell, dim: int
) -> Fraction:
    sub = [coords[k] for k in cell]
    return sum(
        (
            _simplex_volume(sub, c)
            for c in _generic_triangulation(sub, dim)
        ),
        Fraction(0),
    )


def _cells_compatible(
    coords: Sequence[Sequence[Fraction]], a: Cell, b: Cell
) -> bool:
    """Whether conv(a) and conv(b) meet in the common face conv(a & b).

    LP formulation: over points x in conv(a) & conv(b), maximize the total
    convex-combination mass placed outside the shared index set. The cells
    meet face-to-face exactly when the intersection is empty or the optimum
    is zero (faces of a polytope are extreme sets).
    """
    shared = set(a) & set(b)
    dim = len(coords[0])
    na, nb = len(a), len(b)
    rows = []
    rhs = []
    for r in range(dim):
        rows.append(
            [coords[k][r] for k in a] + [-coords[k][r] for k in b]
        )
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * na + [Fraction(0)] * nb)
    rhs.append(Fraction(1))
    rows.append([Fraction(0)] * na + [Fraction(1)] * nb)
    rhs.append(Fraction(1))
    cost = [
        Fraction(0) if k in shared else Fraction(-1) for k in a
    ] + [Fraction(0) if k in shared else Fraction(-1) for k in b]
    res = solve_standard(rows, rhs, cost)
    if res.status != OPTIMAL:
        return True  # disjoint cells share the empty face
    return res.value == 0


def _point_in_hull(
    coords: Sequence[Sequence[Fraction]], cell: Cell, k: int
) -> bool:
    dim = len(coords[0])
    rows = [[coords[c][r] for c in cell] for r in range(dim)]
    rows.append([Fraction(1)] * len(cell))
    rhs = [coords[k][r] for r in range(dim)] + [Fraction(1)]
    res = solve_standard(rows, rhs, [Fraction(0)] * len(cell))
    return res.status == OPTIMAL


def validate_subdivision(pl: PointList, cells: Sequence[Cell]) -> None:
    """Raise ValueError unless the cells form a subdivision of the points.

    Checks: at least one cell, every cell full-dimensional in the affine
    span, pairwise face-to-face intersections, saturation (a cell contains
    every configuration point inside its hull), and total volume equal to
    the hull volume (which, with disjoint interiors, is equivalent to
    covering).
    """
    cells = [tuple(c) for c in cells]
    if not cells:
        raise ValueError("subdivision must have at least one cell")
    m = len(pl)
    coords, dim = _span_coords(pl.points)
    for c in cells:
        if not c or any(not 0 <= k < m for k in c):
            raise ValueError("cell index out of range")
        if _cell_dim(coords, c) != dim:
            raise ValueError(f"cell {c} is not full-dimensional")
    for a, b in itertools.combinations(cells, 2):
        if not _cells_compatible(coords, a, b):
            raise ValueError(f"cells {a} and {b} do not meet face-to-face")
    for c in cells:
        inside = set(c)
        for k in range(m):
            if k not in inside and _point_in_hull(coords, c, k):
                raise ValueError(
                    f"cell {c} omits point {k} inside its hull"
                )
    if dim > 0:
        total = sum(
            (_polytope_volume(coords, c, dim) for c in cells), Fraction(0)
        )
        if total != _config_volume(coords, dim):
            raise ValueError("cells do not cover the configuration")


def is_central(sub: Subdivision) -> bool:
    """Whether the origin is a vertex of every maximal cell."""
    pl = sub.point_list
    o = pl.origin_index()
    coords, _ = _span_coords(pl.points)
    for cell in sub.cells:
        if o not in cell:
            return False
        others = tuple(k for k in cell if k != o)
        if others and _point_in_hull(coords, others, o):
            return False  # origin inside the hull of the rest: not a vertex
    return True


def is_triangulation(sub: Subdivision) -> bool:
    """Whether every maximal cell is a simplex of the span dimension."""
    coords, dim = _span_coords(sub.point_list.points)
    return all(
        len(cell) == dim + 1 and _cell_dim(coords, cell) == dim
        for cell in sub.cells
    )


def is_regular(
    pl: PointList, cells: Sequence[Cell], validate: bool = True
) -> Optional[tuple[Fraction, ...]]:
    """A height function inducing exactly these cells, or None.

    The witness is found by exact linear programming: per-cell affine
    supports with equality on the cell and a maximized uniform slack off it;
    the subdivision is regular exactly when the optimal slack is positive.
    The returned heights are normalized to zero at the origin point when one
    exists. With validate=True the input is first checked to be a genuine
    subdivision (ValueError otherwise).
    """
    cells = [tuple(sorted(c)) for c in cells]
    if validate:
        validate_subdivision(pl, cells)
    m = len(pl)
    coords, dim = _span_coords(pl.points)
    if len(cells) == 1 and set(cells[0]) == set(range(m)):
        return tuple([Fraction(0)] * m)  # trivial subdivision: flat lift

    # Variables: h_0..h_{m-1}, eps. For each cell pick an affine basis B;
    # every other point p gets barycentric coordinates gamma over B, giving
    # the support value l(p) = sum gamma_b h_b as a linear form in h.
    nvars = m + 1
    a_eq: list[list[Fraction]] = []
    b_eq: list[Fraction] = []
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    for cell in cells:
        basis_local = linalg.affine_basis_indices([coords[k] for k in cell])
        basis = [cell[t] for t in basis_local]
        bpts = [coords[k] for k in basis]
        for k in range(m):
            if k in basis:
                continue
            gamma = linalg.barycentric(bpts, coords[k])
            row = [Fraction(0)] * nvars
            for g, b in zip(gamma, basis):
                row[b] += g
            row[k] -= 1
            if k in cell:  # on the support: equality
                a_eq.append(row)
                b_eq.append(Fraction(0))
            else:  # strictly above the support, by at least eps
                row[m] += 1
                a_ub.append(row)
                b_ub.append(Fraction(0))
    bound = [Fraction(0)] * nvars
    bound[m] = Fraction(1)
    a_ub.append(bound)  # eps <= 1: the LP is otherwise scale-free
    b_ub.append(Fraction(1))
    objective = [Fraction(0)] * m + [Fraction(1)]
    res = solve_lp(objective, a_eq, b_eq, a_ub, b_ub, maximize=True)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    hs = list(res.x[:m])
    try:
        o = pl.origin_index()
        hs = [h - hs[o] for h in hs]
    except ValueError:
        pass
    witness = tuple(hs)
    induced = regular_subdivision(pl, witness)
    assert set(induced.cells) == set(cells), "witness failed to reproduce input"
    return witness


def subdivision_equal(s1: Subdivision, s2: Subdivision) -> bool:
    """Equality as cell sets, with points matched by coordinates."""
    pts1, pts2 = s1.point_list.points, s2.point_list.points
    if set(pts1) != set(pts2):
        return False
    remap = {k: pts1.index(p) for k, p in enumerate(pts2)}
    cells2 = {tuple(sorted(remap[k] for k in c)) for c in s2.cells}
    return set(s1.cells) == cells2
