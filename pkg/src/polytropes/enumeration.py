"""Enumeration of DAG classes and central triangulations of their polytopes.

DAG isomorphism classes come from labeled enumeration over a fixed
topological labeling plus canonical-form deduplication. For each class the
regular central triangulations of the fundamental polytope are found by
exact backtracking over full-dimensional simplices that have the origin as
a vertex: compatibility is checked pairwise, coverage by an exact volume
count, and regularity by the height-witness linear program. Counts are
reported raw, as orbits under the symmetry group of the graph acting on
the points, and as generic types, which merge orbits whose witness
polytropes are combinatorially the same up to relabeling and transpose.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg
from .arrangement import PointConfig, covector_decomposition, tconv_cells
from .dag import (
    WeightedDag,
    anti_automorphisms,
    automorphisms,
    canonical_form,
    to_matrix,
    transitive_closure,
)
from .semiring import kleene_star
from .subdivision import (
    PointList,
    Subdivision,
    _cells_compatible,
    _config_volume,
    _point_in_hull,
    _polytope_volume,
    _simplex_volume,
    _span_coords,
    fundamental_polytope,
    is_regular,
)

Edge = tuple[int, int]


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration runs past its time budget."""


def _check(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceededError("enumeration budget exceeded")


def _unit_dag(n: int, edges: Iterable[Edge]) -> WeightedDag:
    es = tuple(sorted(edges))
    return WeightedDag(n, es, tuple(Fraction(1) for _ in es))


def enumerate_dags(n: int, deadline: Optional[float] = None) -> list[WeightedDag]:
    """One unit-weight representative per DAG isomorphism class.

    Every class has a topological labeling, so ranging over edge subsets of
    {(j, i) : j < i} reaches each class at least once; canonical forms
    remove the duplicates. Enumeration order is fixed, hence so is the
    choice of representative.
    """
    if not 1 <= n <= 6:
        raise ValueError("supported for 1 <= n <= 6")
    pairs = [(j, i) for j in range(1, n + 1) for i in range(j + 1, n + 1)]
    seen: set[str] = set()
    reps: list[WeightedDag] = []
    for bits in range(1 << len(pairs)):
        _check(deadline)
        g = _unit_dag(n, (p for k, p in enumerate(pairs) if bits >> k & 1))
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            reps.append(g)
    return reps


def enumerate_transitive_dags(
    n: int, deadline: Optional[float] = None
) -> list[WeightedDag]:
    """Representatives of the classes with E = E*, i.e. transitively closed."""
    return [
        g
        for g in enumerate_dags(n, deadline)
        if transitive_closure(g).edges == g.edges
    ]


def _candidate_simplices(
    coords: Sequence[Sequence[Fraction]], m: int, dim: int
) -> list[tuple[tuple[int, ...], Fraction]]:
    """Full-dimensional simplices on the points that keep 0 as a vertex."""
    cands = []
    for subset in itertools.combinations(range(1, m), dim):
        cell = (0,) + subset
        vol = _simplex_volume(coords, cell)
        if vol > 0:
            cands.append((cell, vol))
    return cands


def _cover_search(
    coords: Sequence[Sequence[Fraction]],
    cands: Sequence[tuple[tuple[int, ...], Fraction]],
    m: int,
    total: Fraction,
    deadline: Optional[float],
) -> list[tuple[tuple[int, ...], ...]]:
    """All pairwise-compatible candidate sets of exact total volume.

    Compatible cells have disjoint interiors, so the volume target makes
    every hit a genuine subdivision. Candidates are taken in ascending
    index order, which makes each set appear once.
    """
    suffix = [Fraction(0)] * (len(cands) + 1)
    for k in range(len(cands) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + cands[k][1]
    last_with = [-1] * m
    for k, (cell, _) in enumerate(cands):
        for p in cell:
            last_with[p] = k
    compat: dict[tuple[int, int], bool] = {}

    def ok(a: int, b: int) -> bool:
        key = (a, b)
        if key not in compat:
            compat[key] = _cells_compatible(coords, cands[a][0], cands[b][0])
        return compat[key]

    hits: list[tuple[tuple[int, ...], ...]] = []
    chosen: list[int] = []

    def covered() -> set[int]:
        return {p for k in chosen for p in cands[k][0]}

    def walk(start: int, vol: Fraction) -> None:
        _check(deadline)
        if vol == total:
            hits.append(tuple(sorted(cands[k][0] for k in chosen)))
            return
        have = covered()
        if any(
            last_with[p] < start for p in range(m) if p not in have
        ):
            return
        for k in range(start, len(cands)):
            if vol + suffix[k] < total:
                break
            cvol = cands[k][1]
            if vol + cvol > total:
                continue
            if all(ok(j, k) for j in chosen):
                chosen.append(k)
                walk(k + 1, vol + cvol)
                chosen.pop()

    walk(0, Fraction(0))
    return hits


def enumerate_central_triangulations(
    g: WeightedDag, deadline: Optional[float] = None
) -> list[Subdivision]:
    """All regular central triangulations of the fundamental polytope of g.

    Each result carries its regularity witness as heights. Listed in
    lexicographic cell order; counts here are raw (not yet grouped into
    automorphism orbits).
    """
    pl = fundamental_polytope(g)
    m = len(pl)
    coords, dim = _span_coords(pl.points)
    if dim == 0:
        return [Subdivision(pl, ((0,),), heights=(Fraction(0),))]
    total = _config_volume(coords, dim)
    cands = _candidate_simplices(coords, m, dim)
    out = []
    for cells in _cover_search(coords, cands, m, total, deadline):
        _check(deadline)
        witness = is_regular(pl, cells, validate=False)
        if witness is not None:
            out.append(Subdivision(pl, cells, heights=witness))
    out.sort(key=lambda s: s.cells)
    return out


def enumerate_central_subdivisions(
    g: WeightedDag, deadline: Optional[float] = None
) -> list[Subdivision]:
    """All regular central subdivisions, simplicial or not; n <= 3 only.

    Unoptimized variant: candidate cells are all saturated full-dimensional
    subsets keeping the origin as a vertex, searched the same way as the
    triangulation enumerator.
    """
    if g.n > 3:
        raise ValueError("supported for n <= 3")
    pl = fundamental_polytope(g)
    m = len(pl)
    coords, dim = _span_coords(pl.points)
    if dim == 0:
        return [Subdivision(pl, ((0,),), heights=(Fraction(0),))]
    total = _config_volume(coords, dim)
    cands = []
    for r in range(dim + 1, m + 1):
        for subset in itertools.combinations(range(1, m), r - 1):
            cell = (0,) + subset
            sub_coords = [coords[k] for k in cell]
            if linalg.rank(
                [
                    [a - b for a, b in zip(p, sub_coords[0])]
                    for p in sub_coords[1:]
                ]
            ) != dim:
                continue
            rest = [k for k in range(m) if k not in cell]
            if any(_point_in_hull(coords, cell, k) for k in rest):
                continue  # not saturated
            if _point_in_hull(coords, cell[1:], 0):
                continue  # origin not a vertex
            vol = _polytope_volume(coords, cell, dim)
            cands.append((cell, vol))
    cands.sort()
    out = []
    for cells in _cover_search(coords, cands, m, total, deadline):
        witness = is_regular(pl, cells, validate=False)
        if witness is not None:
            out.append(Subdivision(pl, cells, heights=witness))
    out.sort(key=lambda s: s.cells)
    return out


def _point_permutation(
    pl: PointList, node_map: dict[int, int], reverse: bool = False
) -> list[int]:
    """Index permutation on the points induced by a node relabeling.

    With reverse=True the relabeling is applied to the reversed edge, the
    action of negating the root.
    """
    where = {label: k for k, label in enumerate(pl.labels)}
    perm = []
    for label in pl.labels:
        if label == "0":
            perm.append(where["0"])
        else:
            i, j = label[1:].split("-e")
            a, b = node_map[int(i)], node_map[int(j)]
            if reverse:
                a, b = b, a
            perm.append(where[f"e{a}-e{b}"])
    return perm


def configuration_symmetries(g: WeightedDag, pl: PointList) -> list[list[int]]:
    """Point permutations of the fundamental polytope fixing the origin.

    The group is generated by the graph's automorphisms together with its
    edge-reversal relabelings, which act by negating every root. This is
    the symmetry group the triangulation counts are reduced by.
    """
    perms = [_point_permutation(pl, a) for a in automorphisms(g)]
    perms += [
        _point_permutation(pl, a, reverse=True) for a in anti_automorphisms(g)
    ]
    return perms


def triangulation_orbits(
    g: WeightedDag, subs: Sequence[Subdivision]
) -> list[list[Subdivision]]:
    """Group subdivisions into orbits under the configuration symmetries.

    Orbits are listed by their lexicographically least member, so the
    partition is deterministic.
    """
    if not subs:
        return []
    perms = configuration_symmetries(g, subs[0].point_list)
    index = {s.cells: k for k, s in enumerate(subs)}
    unseen = set(range(len(subs)))
    orbits = []
    for k, s in enumerate(subs):
        if k not in unseen:
            continue
        orbit = set()
        for perm in perms:
            image = tuple(
                sorted(tuple(sorted(perm[p] for p in cell)) for cell in s.cells)
            )
            orbit.add(index[image])
        unseen -= orbit
        orbits.append([subs[j] for j in sorted(orbit)])
    return orbits


CovectorFamily = frozenset[frozenset[tuple[int, int]]]


def _witness_family(g: WeightedDag, sub: Subdivision) -> CovectorFamily:
    """Bounded covector family of the polytrope at the witness weights.

    The regularity witness is interior to the triangulation's cone of
    heights, so re-weighting g by it yields a polytrope whose subdivision is
    exactly this triangulation. The covectors of the bounded cells of its
    decomposition form a finite combinatorial fingerprint of the type.
    """
    h = sub.heights
    assert h is not None
    w = tuple(h[k + 1] - h[0] for k in range(len(g.edges)))
    star = kleene_star(to_matrix(WeightedDag(g.n, g.edges, w)))
    poset = tconv_cells(covector_decomposition(PointConfig(star)))
    return frozenset(frozenset(c.edges) for c in poset.covectors)


def _family_invariants(
    fam: CovectorFamily, n: int
) -> tuple[dict[int, tuple], dict[int, tuple]]:
    """Relabeling-invariant profiles of each point and coordinate label.

    For every covector, a label contributes (covector size, its own degree
    there). Sorted profiles are preserved by any relabeling, so they prune
    the search for one.
    """
    pt: dict[int, list] = {j: [] for j in range(1, n + 1)}
    co: dict[int, list] = {i: [] for i in range(1, n + 1)}
    for cov in fam:
        for j in {a for a, _ in cov}:
            pt[j].append((len(cov), sum(1 for a, _ in cov if a == j)))
        for i in {b for _, b in cov}:
            co[i].append((len(cov), sum(1 for _, b in cov if b == i)))
    return (
        {j: tuple(sorted(v)) for j, v in pt.items()},
        {i: tuple(sorted(v)) for i, v in co.items()},
    )


def _relabeling_exists(f1: CovectorFamily, f2: CovectorFamily, n: int) -> bool:
    """Whether some point and coordinate relabeling carries f1 onto f2."""
    p1, c1 = _family_invariants(f1, n)
    p2, c2 = _family_invariants(f2, n)
    tau_cand = {j: [k for k in p2 if p2[k] == p1[j]] for j in p1}
    sig_cand = {i: [k for k in c2 if c2[k] == c1[i]] for i in c1}
    if any(not v for v in tau_cand.values()) or any(
        not v for v in sig_cand.values()
    ):
        return False
    for tau in itertools.product(*(tau_cand[j] for j in range(1, n + 1))):
        if len(set(tau)) != n:
            continue
        for sig in itertools.product(*(sig_cand[i] for i in range(1, n + 1))):
            if len(set(sig)) != n:
                continue
            image = frozenset(
                frozenset((tau[j - 1], sig[i - 1]) for j, i in cov)
                for cov in f1
            )
            if image == f2:
                return True
    return False


def _families_equivalent(
    f1: CovectorFamily, f2: CovectorFamily, n: int
) -> bool:
    """Equality of bounded covector families up to relabeling and transpose.

    The transpose swaps the roles of points and coordinates; on the bounded
    cells it matches the polytrope of the transposed matrix, which is the
    weight matrix of the edge-reversed graph. Including it makes the test
    blind to the orientation convention.
    """
    if len(f1) != len(f2) or sorted(map(len, f1)) != sorted(map(len, f2)):
        return False
    if _relabeling_exists(f1, f2, n):
        return True
    f1t = frozenset(frozenset((i, j) for j, i in cov) for cov in f1)
    return _relabeling_exists(f1t, f2, n)


def triangulation_types(
    g: WeightedDag,
    subs: Sequence[Subdivision],
    deadline: Optional[float] = None,
) -> list[list[Subdivision]]:
    """Group triangulations into generic polytrope types.

    Coarsens the symmetry orbits: orbits whose witness polytropes have
    equivalent bounded covector families are one type. A graph with a
    single orbit has a single type, so families are only computed when a
    graph has several orbits. Classes are listed by their lexicographically
    least member.
    """
    orbits = triangulation_orbits(g, subs)
    if len(orbits) <= 1:
        return orbits
    fams = []
    for orbit in orbits:
        _check(deadline)
        fams.append(_witness_family(g, orbit[0]))
    classes: list[list[int]] = []
    for k, fam in enumerate(fams):
        _check(deadline)
        hit = next(
            (
                cl
                for cl in classes
                if _families_equivalent(fams[cl[0]], fam, g.n)
            ),
            None,
        )
        if hit is not None:
            hit.append(k)
        else:
            classes.append([k])
    out = [
        sorted(
            (sub for j in cl for sub in orbits[j]), key=lambda s: s.cells
        )
        for cl in classes
    ]
    out.sort(key=lambda members: members[0].cells)
    return out


@dataclass(frozen=True)
class GraphCount:
    """Per-class triangulation counts for one DAG representative."""

    edges: tuple[Edge, ...]
    transitive: bool
    raw: int
    orbits: int
    types: int


def _graph_counts(args: tuple[int, tuple[Edge, ...], Optional[float]]) -> GraphCount:
    n, edges, budget = args
    deadline = time.monotonic() + budget if budget is not None else None
    g = _unit_dag(n, edges)
    subs = enumerate_central_triangulations(g, deadline)
    return GraphCount(
        edges=edges,
        transitive=transitive_closure(g).edges == g.edges,
        raw=len(subs),
        orbits=len(triangulation_orbits(g, subs)),
        types=len(triangulation_types(g, subs, deadline)),
    )


def table_report(
    n: int,
    budget: Optional[float] = None,
    workers: int = 1,
) -> dict:
    """Per-class counts plus the totals behind count_generic_types.

    The type total is the headline aggregation; the raw total counts
    labeled triangulations, and orbits sit in between. With several workers
    the classes are processed in parallel and merged in enumeration order;
    the budget is then checked between classes and inside each worker
    against its remaining share.
    """
    deadline = time.monotonic() + budget if budget is not None else None
    reps = enumerate_dags(n, deadline)
    remaining = (
        None if deadline is None else max(deadline - time.monotonic(), 0.0)
    )
    jobs = [(n, g.edges, remaining) for g in reps]
    counts: list[GraphCount] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for got in pool.map(_graph_counts, jobs):
                counts.append(got)
                if deadline is not None and time.monotonic() > deadline:
                    raise BudgetExceededError("enumeration budget exceeded")
    else:
        for job in jobs:
            counts.append(_graph_counts((job[0], job[1], None)))
            _check(deadline)
    return {
        "n": n,
        "classes": counts,
        "triangulations": sum(c.types for c in counts),
        "triangulations_raw": sum(c.raw for c in counts),
        "dags": len(counts),
        "transitive": sum(1 for c in counts if c.transitive),
    }


def count_generic_types(
    n: int, budget: Optional[float] = None, workers: int = 1
) -> tuple[int, int, int]:
    """(#triangulation types, #DAG classes, #transitive classes) for one n.

    Triangulations are counted as generic types within each DAG class,
    summed over all classes: symmetry orbits, merged further whenever two
    orbits carry equivalent bounded covector families.
    """
    report = table_report(n, budget=budget, workers=workers)
    return report["triangulations"], report["dags"], report["transitive"]
