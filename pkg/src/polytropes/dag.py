"""Weighted acyclic digraphs and their canonical reductions.

Nodes are labeled 1..n. An edge (j, i) points j -> i and carries an exact
rational weight. The matrix bridge places w(j -> i) at row i, column j, so
matrix entry c_ij bounds x_i - x_j <= c_ij in the associated polyhedron.

Graphs are immutable values; every operation returns a new graph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .semiring import INF, TropMatrix, TropVal, is_finite, kleene_star

Edge = tuple[int, int]


@dataclass(frozen=True)
class WeightedDag:
    """Edge-weighted DAG on nodes 1..n. Edges are (tail, head) pairs."""

    n: int
    edges: tuple[Edge, ...]
    edge_weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one node")
        if len(self.edges) != len(self.edge_weights):
            raise ValueError("edges and weights must align")
        seen = set()
        for j, i in self.edges:
            if not (1 <= j <= self.n and 1 <= i <= self.n):
                raise ValueError(f"edge ({j},{i}) out of range for n={self.n}")
            if j == i:
                raise ValueError("self-loops are not allowed")
            if (j, i) in seen:
                raise ValueError(f"duplicate edge ({j},{i})")
            seen.add((j, i))
        if self.edges != tuple(sorted(self.edges)):
            raise ValueError("edges must be sorted; use from_edges")
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        indeg = {v: 0 for v in range(1, self.n + 1)}
        out: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for j, i in self.edges:
            indeg[i] += 1
            out[j].append(i)
        queue = [v for v in indeg if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for u in out[v]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    queue.append(u)
        if seen != self.n:
            raise ValueError("graph has a directed cycle")

    @staticmethod
    def from_edges(n: int, items: Iterable[tuple[int, int, object]]) -> "WeightedDag":
        """Build from (tail, head, weight) triples; weight may be int/str/Fraction."""
        triples = sorted((int(j), int(i), Fraction(w)) for j, i, w in items)
        edges = tuple((j, i) for j, i, _ in triples)
        weights = tuple(w for _, _, w in triples)
        return WeightedDag(n, edges, weights)

    @property
    def weight(self) -> Mapping[Edge, Fraction]:
        try:
            return self.__dict__["_weight"]
        except KeyError:
            w = dict(zip(self.edges, self.edge_weights))
            self.__dict__["_weight"] = w
            return w

    def successors(self, v: int) -> list[int]:
        return [i for j, i in self.edges if j == v]

    def __repr__(self) -> str:
        body = ", ".join(
            f"{j}->{i}:{w}" for (j, i), w in zip(self.edges, self.edge_weights)
        )
        return f"WeightedDag(n={self.n}, {body})"


@dataclass(frozen=True)
class SPTree:
    """A shortest-path tree at a source, on the subgraph reachable from it.

    parents maps each non-source reachable node to its tree parent; dist
    holds the shortest-path distance of every reachable node.
    """

    source: int
    parents: tuple[tuple[int, int], ...]  # (node, parent), sorted by node
    dist: tuple[tuple[int, Fraction], ...]  # (node, distance), sorted by node

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((p, v) for v, p in self.parents))

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.dist)


@dataclass(frozen=True)
class ModificationCone:
    """All weight matrices describing the same polyhedron as a given DAG.

    The cone lives in R^(E*) for the transitive closure edge set: its apex is
    the Kleene weight vector w*, and its rays are the unit vectors of the
    closure edges absent from the weighted transitive reduction. Any apex +
    nonnegative combination of rays has the same Kleene star.
    """

    closure_edges: tuple[Edge, ...]
    apex: tuple[Fraction, ...]
    ray_edges: tuple[Edge, ...]

    def element(self, coefficients: Mapping[Edge, Fraction]) -> "WeightedDag":
        """The weighted DAG at apex + sum coeff_e * e over the given rays."""
        bump = dict.fromkeys(self.closure_edges, Fraction(0))
        for e, c in coefficients.items():
            if e not in self.ray_edges:
                raise ValueError(f"{e} is not a ray of the cone")
            if Fraction(c) < 0:
                raise ValueError("ray coefficients must be nonnegative")
            bump[e] = Fraction(c)
        n = max((i for e in self.closure_edges for i in e), default=1)
        return WeightedDag.from_edges(
            n,
            [
                (j, i, w + bump[(j, i)])
                for (j, i), w in zip(self.closure_edges, self.apex)
            ],
        )


def to_matrix(g: WeightedDag) -> TropMatrix:
    """Square min-plus matrix with entry (i, j) = w(j -> i), zero diagonal."""
    rows = [[INF] * g.n for _ in range(g.n)]
    for v in range(g.n):
        rows[v][v] = Fraction(0)
    for (j, i), w in zip(g.edges, g.edge_weights):
        rows[i - 1][j - 1] = w
    return TropMatrix(tuple(tuple(r) for r in rows))


def from_matrix(c: TropMatrix) -> WeightedDag:
    """Inverse of to_matrix; off-diagonal finite entries become edges."""
    if not c.is_square():
        raise ValueError("need a square matrix")
    n = c.n_rows
    items = []
    for i in range(n):
        for j in range(n):
            if i != j and is_finite(c[i, j]):
                items.append((j + 1, i + 1, c[i, j]))
    return WeightedDag.from_edges(n, items)


def path_weights(g: WeightedDag) -> TropMatrix:
    """Shortest-path weight between every ordered node pair (Kleene star)."""
    return kleene_star(to_matrix(g))


def transitive_closure(g: WeightedDag) -> WeightedDag:
    """Closure G* with w*(j -> i) = weight of the shortest j -> i path."""
    k = path_weights(g)
    items = []
    for i in range(g.n):
        for j in range(g.n):
            if i != j and is_finite(k[i, j]):
                items.append((j + 1, i + 1, k[i, j]))
    return WeightedDag.from_edges(g.n, items)


def _reach_sets(n: int, edges: Sequence[Edge]) -> dict[int, set[int]]:
    """reach[v] = nodes reachable from v by a path of length >= 1."""
    out: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for j, i in edges:
        out[j].add(i)
    reach: dict[int, set[int]] = {}

    def visit(v: int) -> set[int]:
        if v in reach:
            return reach[v]
        reach[v] = set()  # acyclic, so no back-edges into an open visit
        acc = set(out[v])
        for u in out[v]:
            acc |= visit(u)
        reach[v] = acc
        return acc

    for v in range(1, n + 1):
        visit(v)
    return reach


def transitive_reduction(g: WeightedDag) -> tuple[Edge, ...]:
    """Unweighted transitive reduction: the covering relations of reachability.

    An edge j -> i survives iff there is no other j -> i path of length >= 2.
    Unique for DAGs.
    """
    reach = _reach_sets(g.n, g.edges)
    out: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for j, i in g.edges:
        out[j].append(i)
    kept = []
    for j, i in g.edges:
        if not any(k != i and i in reach[k] for k in out[j]):
            kept.append((j, i))
    return tuple(kept)


def weighted_transitive_reduction(g: WeightedDag) -> WeightedDag:
    """Drop every edge that is not the unique shortest path between its ends.

    An edge j -> i survives iff its weight is strictly below the weight of
    every other j -> i path; a tie with an alternative path drops the edge.
    Idempotent, and the result describes the same polyhedron as g.
    """
    kept = []
    for idx, (j, i) in enumerate(g.edges):
        w = g.edge_weights[idx]
        rows = [list(r) for r in to_matrix(g).entries]
        rows[i - 1][j - 1] = INF
        alt = kleene_star(TropMatrix(tuple(tuple(r) for r in rows)))[i - 1, j - 1]
        if w < alt:
            kept.append((j, i, w))
    return WeightedDag.from_edges(g.n, kept)


def in_open_region(g: WeightedDag) -> bool:
    """Whether g equals its own weighted transitive reduction."""
    return weighted_transitive_reduction(g).edges == g.edges


def modification_cone(g: WeightedDag) -> ModificationCone:
    closure = transitive_closure(g)
    reduced = weighted_transitive_reduction(g)
    reduced_edges = set(reduced.edges)
    rays = tuple(e for e in closure.edges if e not in reduced_edges)
    return ModificationCone(closure.edges, closure.edge_weights, rays)


def shortest_path_trees(g: WeightedDag, source: int) -> list[SPTree]:
    """All shortest-path trees at the source, on its reachable subgraph.

    Every non-source reachable node picks an incoming edge that is tight for
    the shortest-path distances; each combination of choices is a tree.
    """
    if not (1 <= source <= g.n):
        raise ValueError("source out of range")
    k = path_weights(g)
    dist = {
        v: k[v - 1, source - 1]
        for v in range(1, g.n + 1)
        if is_finite(k[v - 1, source - 1])
    }
    others = sorted(v for v in dist if v != source)
    choices: list[list[int]] = []
    for v in others:
        tight = [
            j
            for (j, i), w in zip(g.edges, g.edge_weights)
            if i == v and j in dist and dist[j] + w == dist[v]
        ]
        choices.append(tight)
    dist_items = tuple(sorted(dist.items()))
    trees = []
    for combo in itertools.product(*choices):
        parents = tuple(zip(others, combo))
        trees.append(SPTree(source, parents, dist_items))
    return trees


def _degree_colors(n: int, edges: Sequence[Edge], rounds: int = 2) -> list[tuple]:
    """Iso-invariant node colors by iterated degree refinement."""
    colors: list[tuple] = [() for _ in range(n + 1)]
    for v in range(1, n + 1):
        outd = sum(1 for j, _ in edges if j == v)
        ind = sum(1 for _, i in edges if i == v)
        colors[v] = (outd, ind)
    for _ in range(rounds):
        new = list(colors)
        for v in range(1, n + 1):
            succ = sorted(colors[i] for j, i in edges if j == v)
            pred = sorted(colors[j] for j, i in edges if i == v)
            new[v] = (colors[v], tuple(succ), tuple(pred))
        colors = new
    return colors


def _color_respecting_permutations(n: int, edges: Sequence[Edge]):
    """Yield candidate relabelings pi (as dicts) grouped by canonical color order.

    Nodes of equal refined color may land in any order inside their color
    block; blocks are ordered by color signature. The minimum encoding over
    these relabelings is a canonical form because the colors are
    isomorphism-invariant.
    """
    colors = _degree_colors(n, edges)
    by_color: dict[tuple, list[int]] = {}
    for v in range(1, n + 1):
        by_color.setdefault(colors[v], []).append(v)
    blocks = [by_color[c] for c in sorted(by_color)]
    starts = []
    pos = 1
    for b in blocks:
        starts.append(pos)
        pos += len(b)
    for arrangement in itertools.product(
        *(itertools.permutations(b) for b in blocks)
    ):
        pi: dict[int, int] = {}
        for block_nodes, start in zip(arrangement, starts):
            for offset, v in enumerate(block_nodes):
                pi[v] = start + offset
        yield pi


def canonical_form(g: WeightedDag, weighted: bool = False) -> str:
    """Lexicographically minimal adjacency encoding over admissible relabelings.

    Admissible relabelings respect the iso-invariant degree-refinement colors,
    which prunes the permutation search without changing the outcome: two
    DAGs are isomorphic exactly when their canonical forms are equal. With
    weighted=True the encoding includes edge weights, so isomorphism must
    also preserve weights.
    """
    best = None
    for pi in _color_respecting_permutations(g.n, g.edges):
        if weighted:
            enc = tuple(
                sorted(
                    (pi[j], pi[i], w)
                    for (j, i), w in zip(g.edges, g.edge_weights)
                )
            )
        else:
            enc = tuple(sorted((pi[j], pi[i]) for j, i in g.edges))
        if best is None or enc < best:
            best = enc
    if weighted:
        body = ";".join(f"{j}>{i}:{w}" for j, i, w in best)
    else:
        body = ";".join(f"{j}>{i}" for j, i in best)
    return f"n={g.n}|{body}"


def automorphisms(g: WeightedDag) -> list[dict[int, int]]:
    """All node relabelings that fix the (unweighted) edge set."""
    edge_set = set(g.edges)
    result = []
    for perm in itertools.permutations(range(1, g.n + 1)):
        pi = {v: perm[v - 1] for v in range(1, g.n + 1)}
        if all((pi[j], pi[i]) in edge_set for j, i in g.edges):
            result.append(pi)
    return result


def anti_automorphisms(g: WeightedDag) -> list[dict[int, int]]:
    """All node relabelings mapping the edge set onto its reversal.

    These realize the negation symmetry of the root configuration: under
    such a relabeling, e_i - e_j maps to the root of another edge with the
    roles of head and tail exchanged. Empty when the graph is not
    isomorphic to its reverse.
    """
    edge_set = set(g.edges)
    result = []
    for perm in itertools.permutations(range(1, g.n + 1)):
        pi = {v: perm[v - 1] for v in range(1, g.n + 1)}
        if all((pi[i], pi[j]) in edge_set for j, i in g.edges):
            result.append(pi)
    return result
