"""Max-tropical hyperplane arrangements and their covector decompositions.

A point configuration is a d x n min-plus matrix V whose columns are n
points of d-dimensional tropical affine space; column j induces the
max-tropical hyperplane with apex v^(j). A point x lies in sector i of that
hyperplane when x_i - v_ij attains max_l (x_l - v_lj). The affine covector
of x records every (point j, sector i) incidence as a bipartite edge set.

The common refinement of all the hyperplane fans is computed dually: the
regular subdivision of the root polytope (vertices (e_j, e_i) for finite
v_ij, lifted to height v_ij) has its faces in bijection with the cells of
the decomposition, a face's vertex set read as the cell's covector. Only
faces whose covector touches every point index j correspond to cells.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg
from .semiring import TropMatrix, TropVal, is_finite
from .subdivision import (
    regular_subdivision,
    root_heights,
    root_polytope,
)

Edge = tuple[int, int]  # (point index j, coordinate index i), both 1-based


def _compact_block(js: Sequence[int]) -> str:
    return "".join(str(j) for j in js) if js else "-"


@dataclass(frozen=True)
class Covector:
    """Bipartite edge set between point indices [n] and coordinates [d]."""

    n: int
    d: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.edges != tuple(sorted(set(self.edges))):
            raise ValueError("edges must be sorted and duplicate-free")
        for j, i in self.edges:
            if not (1 <= j <= self.n and 1 <= i <= self.d):
                raise ValueError(f"edge ({j},{i}) out of range")

    @staticmethod
    def from_edges(n: int, d: int, edges: Iterable[Edge]) -> "Covector":
        return Covector(n, d, tuple(sorted(set((j, i) for j, i in edges))))

    def predecessors(self, i: int) -> tuple[int, ...]:
        """L_i: the point indices whose sector i contains the cell."""
        return tuple(j for j, t in self.edges if t == i)

    def compact(self) -> str:
        """(L_1,...,L_d) in digit-string form, '-' for an empty block."""
        blocks = [self.predecessors(i) for i in range(1, self.d + 1)]
        return "(" + ",".join(_compact_block(b) for b in blocks) + ")"

    def is_chamber(self) -> bool:
        """One sector per point: the covector of a full-dimensional cell."""
        counts = [0] * self.n
        for j, _ in self.edges:
            counts[j - 1] += 1
        return all(c == 1 for c in counts)

    def covers_points(self) -> bool:
        return {j for j, _ in self.edges} == set(range(1, self.n + 1))

    def covers_coordinates(self) -> bool:
        return {i for _, i in self.edges} == set(range(1, self.d + 1))

    def __repr__(self) -> str:
        return f"Covector{self.compact()}"


def coarse_type(cov: Covector) -> tuple[int, ...]:
    """(#L_1, ..., #L_d): the exponent vector of the dual monomial."""
    counts = [0] * cov.d
    for _, i in cov.edges:
        counts[i - 1] += 1
    return tuple(counts)


@dataclass(frozen=True)
class PointConfig:
    """n labeled points in tropical affine d-space, as a d x n matrix.

    Rows are coordinates, columns are points. Doubly R-astic: every row and
    every column has at least one finite entry, so sectors and covectors are
    well defined.
    """

    matrix: TropMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        for i in range(m.n_rows):
            if not any(is_finite(x) for x in m.row(i)):
                raise ValueError(f"row {i + 1} has no finite entry")
        for j in range(m.n_cols):
            if not any(is_finite(x) for x in m.col(j)):
                raise ValueError(f"column {j + 1} has no finite entry")

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "PointConfig":
        return PointConfig(TropMatrix.from_rows(rows))

    @property
    def d(self) -> int:
        return self.matrix.n_rows

    @property
    def n(self) -> int:
        return self.matrix.n_cols

    def entry(self, i: int, j: int) -> TropVal:
        """v_ij = coordinate i of point j (1-based)."""
        return self.matrix[i - 1, j - 1]

    def point(self, j: int) -> tuple[TropVal, ...]:
        return self.matrix.col(j - 1)


@dataclass(frozen=True)
class CovectorPoset:
    """Covectors of the nonempty cells, ordered by edge-set inclusion.

    Closed-cell containment is the reverse of covector containment, so the
    inclusion order carries the full combinatorics. Chambers are exactly the
    inclusion-minimal elements (the poset's atoms): one sector per point.
    """

    covectors: tuple[Covector, ...]

    def __post_init__(self) -> None:
        if len({(c.n, c.d) for c in self.covectors}) > 1:
            raise ValueError("covectors must share one shape (n, d)")
        key = [(len(c.edges), c.edges) for c in self.covectors]
        if key != sorted(key):
            raise ValueError("covectors must be sorted by (size, edges)")

    @staticmethod
    def build(covs: Iterable[Covector]) -> "CovectorPoset":
        return CovectorPoset(
            tuple(sorted(set(covs), key=lambda c: (len(c.edges), c.edges)))
        )

    def __len__(self) -> int:
        return len(self.covectors)

    def __contains__(self, cov: Covector) -> bool:
        return cov in set(self.covectors)

    def chambers(self) -> tuple[Covector, ...]:
        return tuple(c for c in self.covectors if c.is_chamber())

    def atoms(self) -> tuple[Covector, ...]:
        """Inclusion-minimal covectors; coincides with chambers()."""
        result = []
        for c in self.covectors:
            ce = set(c.edges)
            if not any(
                o is not c and set(o.edges) < ce for o in self.covectors
            ):
                result.append(c)
        return tuple(result)

    def hasse_edges(self) -> tuple[tuple[Covector, Covector], ...]:
        """Covering pairs (a, b) with a's edge set properly below b's."""
        sets = [(c, frozenset(c.edges)) for c in self.covectors]
        pairs = []
        for (a, ea), (b, eb) in itertools.permutations(sets, 2):
            if ea < eb and not any(
                ea < ec < eb for _, ec in sets if ec not in (ea, eb)
            ):
                pairs.append((a, b))
        return tuple(sorted(pairs, key=lambda p: (p[0].edges, p[1].edges)))


def affine_covector(x: Sequence, cfg: PointConfig) -> Covector:
    """Covector of a finite point: all (j, i) with x in sector i of point j."""
    xs = [Fraction(v) for v in x]
    if len(xs) != cfg.d:
        raise ValueError("point dimension must match the configuration")
    edges: list[Edge] = []
    for j in range(1, cfg.n + 1):
        best = None
        arg: list[int] = []
        for i in range(1, cfg.d + 1):
            v = cfg.entry(i, j)
            if not is_finite(v):
                continue
            val = xs[i - 1] - v
            if best is None or val > best:
                best, arg = val, [i]
            elif val == best:
                arg.append(i)
        edges.extend((j, i) for i in arg)
    return Covector.from_edges(cfg.n, cfg.d, edges)


def _cell_faces(
    coords: Sequence[Sequence[Fraction]], cell: tuple[int, ...], dim: int
) -> set[frozenset[int]]:
    """All faces of one maximal cell, as index sets.

    Facet contact sets come from supporting hyperplanes spanned by cell
    points; lower faces are intersections of facets. Includes the cell
    itself.
    """
    facets: set[frozenset[int]] = set()
    for subset in itertools.combinations(cell, dim):
        pts = [coords[k] for k in subset]
        base = pts[0]
        dirs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
        if linalg.rank(dirs) != dim - 1:
            continue
        # normal (a, b) with a.p + b = 0 on the subset, unique up to scale
        rows = [list(coords[k]) + [Fraction(1)] for k in subset]
        reduced, pivots = linalg.rref(rows)
        free = [c for c in range(dim + 1) if c not in pivots]
        if len(free) != 1:
            continue
        normal = [Fraction(0)] * (dim + 1)
        normal[free[0]] = Fraction(1)
        for r, c in enumerate(pivots):
            normal[c] = -reduced[r][free[0]]
        vals = {
            k: sum(a * v for a, v in zip(normal[:dim], coords[k])) + normal[dim]
            for k in cell
        }
        if all(v >= 0 for v in vals.values()) or all(
            v <= 0 for v in vals.values()
        ):
            facets.add(frozenset(k for k, v in vals.items() if v == 0))
    faces: set[frozenset[int]] = {frozenset(cell)} | facets
    frontier = set(facets)
    while frontier:
        fresh: set[frozenset[int]] = set()
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in faces:
                    fresh.add(h)
        faces |= fresh
        frontier = fresh
    return faces


def covector_decomposition(cfg: PointConfig) -> CovectorPoset:
    """Poset of the covectors of all nonempty cells of the arrangement.

    Computed through the dual regular subdivision of the root polytope; a
    subdivision face with vertex set {(e_j, e_i)} is a cell exactly when
    every point index j occurs, and its covector is the edge set {(j, i)}.
    """
    pl = root_polytope(cfg)
    sub = regular_subdivision(pl, root_heights(cfg))
    coords, basis = linalg.affine_coordinates(pl.points)
    dim = len(basis) - 1
    faces: set[frozenset[int]] = set()
    for cell in sub.cells:
        if dim == 0:
            faces.add(frozenset(cell))
        else:
            faces |= _cell_faces(coords, cell, dim)
    index_edge = []
    for label in pl.labels:
        j, i = label[2:-1].split(",e")
        index_edge.append((int(j), int(i)))
    covs = []
    for face in faces:
        edges = [index_edge[k] for k in face]
        if {j for j, _ in edges} == set(range(1, cfg.n + 1)):
            covs.append(Covector.from_edges(cfg.n, cfg.d, edges))
    return CovectorPoset.build(covs)


def tconv_cells(poset: CovectorPoset) -> CovectorPoset:
    """Subposet of cells lying in the tropical convex hull of the points.

    A cell belongs to tconv exactly when its covector has no isolated node:
    every coordinate index has an incoming edge and every point index an
    outgoing one.
    """
    return CovectorPoset.build(
        c
        for c in poset.covectors
        if c.covers_coordinates() and c.covers_points()
    )


def polytrope_cell(c: TropMatrix) -> Covector:
    """The matching covector {(j, j)}: the cell of the polytrope tconv(C*).

    Requires a square, zero-diagonal, DAG-supported weight matrix, i.e. the
    finite off-diagonal support must be acyclic.
    """
    if not c.is_square():
        raise ValueError("need a square matrix")
    n = c.n_rows
    for i in range(n):
        if c[i, i] != 0:
            raise ValueError("diagonal must be zero")
    from .dag import from_matrix  # validates acyclicity

    from_matrix(c)
    return Covector.from_edges(n, n, [(j, j) for j in range(1, n + 1)])


def tropically_equivalent(
    v: PointConfig, w: PointConfig
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """A permutation pair identifying the two covector posets, or None.

    Searches for (tau on point indices, sigma on coordinates) mapping the
    covector set of v onto that of w; since the poset order is edge-set
    inclusion, equality of relabeled covector sets is already a poset
    isomorphism. Returns (tau, sigma) as 1-based images, or None.
    """
    if (v.n, v.d) != (w.n, w.d):
        return None
    cov_v = {frozenset(c.edges) for c in covector_decomposition(v).covectors}
    cov_w = {frozenset(c.edges) for c in covector_decomposition(w).covectors}
    if len(cov_v) != len(cov_w):
        return None
    for tau in itertools.permutations(range(1, v.n + 1)):
        for sigma in itertools.permutations(range(1, v.d + 1)):
            mapped = {
                frozenset((tau[j - 1], sigma[i - 1]) for j, i in f)
                for f in cov_v
            }
            if mapped == cov_w:
                return tau, sigma
    return None
