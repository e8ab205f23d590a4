"""JSON, CSV, and DOT codecs for the command-line surface.

Rationals travel as exact "p/q" strings (plain "p" when integral) and the
tropical infinity as "inf"; nodes and coordinates stay 1-based. Decoders
validate shape and raise ValueError with a message naming the offence.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Sequence

from .arrangement import Covector, CovectorPoset
from .dag import WeightedDag
from .mlbn import IdentifiabilityReport, SampleBatch
from .polytrope import FacetDescription
from .semiring import TropMatrix, coerce, format_scalar
from .subdivision import Subdivision


def _expect_dict(obj, what: str) -> dict:
    if not isinstance(obj, dict):
        raise ValueError(f"{what} must be a JSON object")
    return obj


def _expect_int(obj, what: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ValueError(f"{what} must be an integer")
    return obj


def _scalar(obj, what: str):
    if not isinstance(obj, (str, int)):
        raise ValueError(f"{what} must be a 'p/q' string, 'inf', or an integer")
    try:
        return coerce(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{what}: {exc}") from None


def matrix_to_json(m: TropMatrix) -> dict:
    return {
        "n": m.n_cols,
        "entries": [[format_scalar(x) for x in row] for row in m.entries],
    }


def matrix_from_json(obj) -> TropMatrix:
    obj = _expect_dict(obj, "matrix")
    n = _expect_int(obj.get("n"), "matrix n")
    entries = obj.get("entries")
    if not isinstance(entries, list) or not entries:
        raise ValueError("matrix entries must be a nonempty list of rows")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"matrix row {i} must be a list of length n={n}")
        rows.append([_scalar(x, f"matrix entry ({i},{k})") for k, x in enumerate(row)])
    return TropMatrix.from_rows(rows)


def dag_to_json(g: WeightedDag) -> dict:
    return {
        "n": g.n,
        "edges": [
            {"from": j, "to": i, "w": str(w)}
            for (j, i), w in zip(g.edges, g.edge_weights)
        ],
    }


def dag_from_json(obj) -> WeightedDag:
    obj = _expect_dict(obj, "dag")
    n = _expect_int(obj.get("n"), "dag n")
    edges = obj.get("edges")
    if not isinstance(edges, list):
        raise ValueError("dag edges must be a list")
    triples = []
    for k, e in enumerate(edges):
        e = _expect_dict(e, f"dag edge {k}")
        j = _expect_int(e.get("from"), f"edge {k} 'from'")
        i = _expect_int(e.get("to"), f"edge {k} 'to'")
        w = _scalar(e.get("w"), f"edge {k} weight")
        if not isinstance(w, Fraction):
            raise ValueError(f"edge {k} weight must be finite")
        triples.append((j, i, w))
    return WeightedDag.from_edges(n, triples)


def dag_to_dot(g: WeightedDag) -> str:
    lines = ["digraph {"]
    for v in range(1, g.n + 1):
        lines.append(f"  {v};")
    for (j, i), w in zip(g.edges, g.edge_weights):
        lines.append(f'  {j} -> {i} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def covector_to_json(cov: Covector) -> dict:
    return {"d": cov.d, "n": cov.n, "edges": [list(e) for e in cov.edges]}


def poset_to_json(poset: CovectorPoset) -> dict:
    """Covectors in poset order plus Hasse adjacency (lower index, upper index)."""
    covs = poset.covectors
    if not covs:
        return {"covectors": [], "hasse": []}
    pos = {c: k for k, c in enumerate(covs)}
    return {
        "d": covs[0].d,
        "n": covs[0].n,
        "covectors": [[list(e) for e in c.edges] for c in covs],
        "hasse": sorted([pos[a], pos[b]] for a, b in poset.hasse_edges()),
    }


def facets_to_json(fd: FacetDescription) -> dict:
    return {
        "edges": [
            {"from": j, "to": i, "bound": str(fd.bounds[(j, i)])}
            for j, i in fd.edges
        ]
    }


def subdivision_to_json(sub: Subdivision) -> dict:
    return {
        "points": [[str(x) for x in p] for p in sub.point_list.points],
        "cells": [list(c) for c in sub.cells],
        "heights": None
        if sub.heights is None
        else [str(h) for h in sub.heights],
    }


def batch_to_json(batch: SampleBatch) -> dict:
    return {
        "n": batch.n,
        "count": len(batch.rows),
        "rows": [[str(x) for x in r] for r in batch.rows],
    }


def batch_to_csv(batch: SampleBatch) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"x{i}" for i in range(1, batch.n + 1)])
    for row in batch.rows:
        writer.writerow([str(x) for x in row])
    return out.getvalue()


def batch_from_csv(text: str) -> SampleBatch:
    """One observation per row; a leading x1,...,xn header is tolerated."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise ValueError("batch is empty")
    if rows[0] and rows[0][0].strip().startswith("x"):
        rows = rows[1:]
    if not rows:
        raise ValueError("batch has a header but no observations")
    parsed = []
    for k, row in enumerate(rows):
        try:
            parsed.append(tuple(Fraction(f.strip()) for f in row))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"batch row {k}: {exc}") from None
    return SampleBatch(len(parsed[0]), tuple(parsed))


def report_to_json(report: IdentifiabilityReport) -> dict:
    return {
        "edges": [
            {
                "from": f.edge[0],
                "to": f.edge[1],
                "w": str(f.weight),
                "star_w": format_scalar(f.star_weight),
                "estimate": format_scalar(f.estimate),
                "identifiable": f.identifiable,
            }
            for f in report.findings
        ]
    }
