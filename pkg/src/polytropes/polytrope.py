"""Weighted digraph polyhedra Q(C) and their minimal descriptions.

Q(C) is the ordinarily convex set {x : x_i - x_j <= c_ij, i != j} in
tropical affine space; an INF entry imposes no constraint. Q(C) only
depends on the Kleene star of C, so equality of polyhedra is decided by
comparing stars, and the facet-defining inequalities are exactly the edges
surviving the weighted transitive reduction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arrangement import PointConfig
from .dag import WeightedDag, weighted_transitive_reduction
from .semiring import TropMatrix, is_finite, kleene_star, trop_apply


def q_membership(x: Sequence, c: TropMatrix) -> bool:
    """Whether x satisfies x_i - x_j <= c_ij for all i != j."""
    if not c.is_square():
        raise ValueError("need a square matrix")
    n = c.n_rows
    xs = [Fraction(v) for v in x]
    if len(xs) != n:
        raise ValueError("point dimension must match the matrix")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            bound = c[i, j]
            if is_finite(bound) and xs[i] - xs[j] > bound:
                return False
    return True


def tconv_membership(x: Sequence, cfg: PointConfig) -> bool:
    """Whether x lies in the tropical convex hull of the configuration.

    Projects x onto tconv via residuation: with lambda_j the largest shift
    keeping column j below x, the combination V (.) lambda dominates x and
    equals it exactly when x is already in the hull. Both sides shift
    together under adding a constant to x, so the test is projectively
    sound.
    """
    xs = [Fraction(v) for v in x]
    if len(xs) != cfg.d:
        raise ValueError("point dimension must match the configuration")
    lam = []
    for j in range(1, cfg.n + 1):
        col = cfg.point(j)
        lam.append(
            max(xs[i] - col[i] for i in range(cfg.d) if is_finite(col[i]))
        )
    return list(trop_apply(cfg.matrix, lam)) == xs


def polytrope_equal(c1: TropMatrix, c2: TropMatrix) -> bool:
    """Whether Q(c1) = Q(c2), decided by comparing Kleene stars."""
    if not (c1.is_square() and c2.is_square()):
        raise ValueError("need square matrices")
    if c1.n_rows != c2.n_rows:
        return False
    return kleene_star(c1) == kleene_star(c2)


@dataclass(frozen=True)
class FacetDescription:
    """The irredundant inequality system x_i - x_j <= bound for Q.

    Edges (j, i) are the facet-defining pairs; every other inequality of
    the closure is implied by these.
    """

    edges: tuple[tuple[int, int], ...]
    bounds: Mapping[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        if self.edges != tuple(sorted(self.edges)):
            raise ValueError("edges must be sorted")
        if set(self.edges) != set(self.bounds):
            raise ValueError("bounds must cover exactly the edges")


def facet_description(g: WeightedDag) -> FacetDescription:
    """Facet-defining edges and bounds of the polyhedron of a weighted DAG.

    An edge survives exactly when its weight beats every alternative path,
    which is the weighted transitive reduction; closure edges never beat
    the path that created them, so reducing g itself already yields the
    minimal system.
    """
    flat = weighted_transitive_reduction(g)
    return FacetDescription(edges=flat.edges, bounds=dict(flat.weight))
