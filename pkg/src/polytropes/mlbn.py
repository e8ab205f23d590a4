"""Sampling from max-linear Bayesian networks and weight recovery.

In min-plus coordinates an observation is x = C* (.) z with independent
innovations z, so every sample lies in the polyhedron of C* and the pairwise
differences x_i - x_j are bounded by the Kleene entries. The sup-estimator
takes the largest observed difference per pair; it can only ever approach
the Kleene star, so exactly the weights surviving the transitive reduction
are recoverable.

Innovations are drawn as floats and converted to exact rationals before any
min-plus arithmetic, keeping the deterministic bound estimate <= C* exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dag import WeightedDag, to_matrix, weighted_transitive_reduction
from .semiring import TropMatrix, TropVal, kleene_star, trop_apply


@dataclass(frozen=True)
class NoiseSpec:
    """Innovation distribution in min-plus coordinates.

    kinds: "exponential" (rate,), "uniform" (low, high), "constant"
    (value,). The default corresponds to unit-Frechet innovations on the
    original max-times scale.
    """

    kind: str = "exponential"
    params: tuple[float, ...] = (1.0,)

    def __post_init__(self) -> None:
        arity = {"exponential": 1, "uniform": 2, "constant": 1}
        if self.kind not in arity:
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if len(self.params) != arity[self.kind]:
            raise ValueError(f"{self.kind} noise takes {arity[self.kind]} parameter(s)")

    def draw(self, rng: random.Random) -> Fraction:
        if self.kind == "exponential":
            return Fraction(rng.expovariate(self.params[0]))
        if self.kind == "uniform":
            return Fraction(rng.uniform(self.params[0], self.params[1]))
        return Fraction(self.params[0])


@dataclass(frozen=True)
class SampleBatch:
    """Observations of a max-linear network, one row per draw."""

    n: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("rows must have length n")


def sample(
    g: WeightedDag, noise: NoiseSpec, count: int, seed: int
) -> SampleBatch:
    """Draw count observations x = C* (.) z; deterministic given the seed.

    Innovations are drawn row by row in node order from a Mersenne twister
    seeded once, so prefixes of a batch coincide across different counts.
    """
    if count < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    star = kleene_star(to_matrix(g))
    rows = []
    for _ in range(count):
        z = [noise.draw(rng) for _ in range(g.n)]
        rows.append(tuple(trop_apply(star, z)))
    return SampleBatch(g.n, tuple(rows))


def estimate_kleene(batch: SampleBatch) -> TropMatrix:
    """Entrywise sup-estimator: largest observed difference x_i - x_j.

    Dominated by the true Kleene star entry for entry, with equality
    approached on the identifiable part.
    """
    if not batch.rows:
        raise ValueError("need at least one sample")
    n = batch.n
    entries = []
    for i in range(n):
        row: list[TropVal] = []
        for j in range(n):
            if i == j:
                row.append(Fraction(0))
            else:
                row.append(max(r[i] - r[j] for r in batch.rows))
        entries.append(row)
    return TropMatrix.from_rows(entries)


@dataclass(frozen=True)
class EdgeFinding:
    """Recovery verdict for one edge j -> i of the generating graph."""

    edge: tuple[int, int]
    weight: Fraction
    star_weight: Fraction
    estimate: TropVal
    identifiable: bool


@dataclass(frozen=True)
class IdentifiabilityReport:
    """Per-edge recovery verdicts; identifiable edges target their weight."""

    findings: tuple[EdgeFinding, ...]

    def __iter__(self):
        return iter(self.findings)

    def __len__(self) -> int:
        return len(self.findings)


def identifiability_report(
    g: WeightedDag, estimate: TropMatrix
) -> IdentifiabilityReport:
    """Mark each edge of g identifiable iff it survives the reduction.

    The sup-estimator converges to the Kleene star, so an edge's weight is
    recoverable exactly when the edge is facet-defining; for the others the
    estimate targets the shortest path, not the original weight.
    """
    star = kleene_star(to_matrix(g))
    flat = set(weighted_transitive_reduction(g).edges)
    findings = []
    for j, i in g.edges:
        findings.append(
            EdgeFinding(
                edge=(j, i),
                weight=g.weight[(j, i)],
                star_weight=star[i - 1, j - 1],
                estimate=estimate[i - 1, j - 1],
                identifiable=(j, i) in flat,
            )
        )
    return IdentifiabilityReport(tuple(findings))
