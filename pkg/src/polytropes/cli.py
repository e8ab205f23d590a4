"""Command-line surface: exact min-plus computations with JSON output.

Every subcommand reads JSON files, writes one JSON document to stdout, and
exits 0 on success, 2 on validation errors, 3 when an enumeration budget is
exceeded. The only non-JSON outputs are opt-in: CSV sample batches, DOT
graphs, and SVG arrangement pictures. Output is byte-stable for fixed
inputs and seeds.

A TOML config file (--config, else $POLYTROPES_CONFIG) may set enumeration
defaults: budget (seconds) and workers (process count). Flags override it.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - 3.10 fallback
    import tomli as tomllib

from .arrangement import (
    PointConfig,
    covector_decomposition,
    polytrope_cell,
    tconv_cells,
    tropically_equivalent,
)
from .dag import modification_cone, weighted_transitive_reduction
from .enumeration import BudgetExceededError, table_report
from .jsonio import (
    batch_from_csv,
    batch_to_csv,
    batch_to_json,
    covector_to_json,
    dag_from_json,
    dag_to_dot,
    dag_to_json,
    facets_to_json,
    matrix_from_json,
    matrix_to_json,
    poset_to_json,
    report_to_json,
    subdivision_to_json,
)
from .mlbn import NoiseSpec, estimate_kleene, identifiability_report, sample
from .polytrope import facet_description, polytrope_equal
from .semiring import kleene_star
from .subdivision import (
    fundamental_polytope,
    is_central,
    is_regular,
    is_triangulation,
    regular_subdivision,
    weight_heights,
)
from .svg import render_arrangement

_NOISE_DEFAULTS = {
    "exponential": (1.0,),
    "uniform": (0.0, 1.0),
    "constant": (0.0,),
}


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        path = os.environ.get("POLYTROPES_CONFIG")
        if path is None:
            return {}
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    unknown = sorted(set(data) - {"budget", "workers"})
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    out = {}
    if "budget" in data:
        if not isinstance(data["budget"], (int, float)) or data["budget"] <= 0:
            raise ValueError("config budget must be a positive number")
        out["budget"] = float(data["budget"])
    if "workers" in data:
        if not isinstance(data["workers"], int) or data["workers"] < 1:
            raise ValueError("config workers must be a positive integer")
        out["workers"] = data["workers"]
    return out


def _noise_from_args(args) -> NoiseSpec:
    if args.params is None:
        params = _NOISE_DEFAULTS[args.noise]
    else:
        try:
            params = tuple(float(t) for t in args.params.split(","))
        except ValueError:
            raise ValueError("--params must be comma-separated numbers") from None
    return NoiseSpec(args.noise, params)


def _cmd_kleene(args, config) -> str:
    m = matrix_from_json(_read_json(args.matrix))
    if not m.is_square():
        raise ValueError("kleene needs a square matrix")
    return _dump(matrix_to_json(kleene_star(m)))


def _cmd_reduce(args, config) -> str:
    g = dag_from_json(_read_json(args.dag))
    reduced = weighted_transitive_reduction(g)
    if args.dot:
        return dag_to_dot(reduced)
    cone = modification_cone(g)
    return _dump(
        {
            "reduction": dag_to_json(reduced),
            "cone": {
                "closure_edges": [list(e) for e in cone.closure_edges],
                "apex": [str(w) for w in cone.apex],
                "rays": [list(e) for e in cone.ray_edges],
            },
        }
    )


def _cmd_facets(args, config) -> str:
    g = dag_from_json(_read_json(args.dag))
    return _dump(facets_to_json(facet_description(g)))


def _cmd_covectors(args, config) -> str:
    m = matrix_from_json(_read_json(args.matrix))
    cfg = PointConfig(m)
    poset = covector_decomposition(cfg)
    try:
        cell = covector_to_json(polytrope_cell(m))
    except ValueError:
        cell = None
    return _dump(
        {
            "decomposition": poset_to_json(poset),
            "atoms": len(poset.atoms()),
            "tconv": poset_to_json(tconv_cells(poset)),
            "cell": cell,
        }
    )


def _cmd_subdivide(args, config) -> str:
    g = dag_from_json(_read_json(args.dag))
    pl = fundamental_polytope(g)
    sub = regular_subdivision(pl, weight_heights(g))
    out = subdivision_to_json(sub)
    out["central"] = is_central(sub)
    out["triangulation"] = is_triangulation(sub)
    out["regular"] = is_regular(pl, sub.cells, validate=False) is not None
    return _dump(out)


def _cmd_enumerate(args, config) -> str:
    budget = args.budget if args.budget is not None else config.get("budget")
    workers = args.workers if args.workers is not None else config.get("workers", 1)
    report = table_report(args.n, budget=budget, workers=workers)
    out = {
        "triangulations": report["triangulations"],
        "dags": report["dags"],
        "transitive": report["transitive"],
    }
    if args.per_graph:
        out["triangulations_raw"] = report["triangulations_raw"]
        out["classes"] = [
            {
                "edges": [list(e) for e in c.edges],
                "transitive": c.transitive,
                "types": c.types,
                "orbits": c.orbits,
                "raw": c.raw,
            }
            for c in report["classes"]
        ]
    return _dump(out)


def _cmd_equal(args, config) -> str:
    m1 = matrix_from_json(_read_json(args.first))
    m2 = matrix_from_json(_read_json(args.second))
    return _dump({"equal": polytrope_equal(m1, m2)})


def _cmd_equivalent(args, config) -> str:
    v = PointConfig(matrix_from_json(_read_json(args.first)))
    w = PointConfig(matrix_from_json(_read_json(args.second)))
    witness = tropically_equivalent(v, w)
    return _dump(
        {
            "equivalent": witness is not None,
            "tau": list(witness[0]) if witness else None,
            "sigma": list(witness[1]) if witness else None,
        }
    )


def _cmd_sample(args, config) -> str:
    g = dag_from_json(_read_json(args.dag))
    batch = sample(g, _noise_from_args(args), args.count, args.seed)
    if args.format == "csv":
        return batch_to_csv(batch)
    body = batch_to_json(batch)
    return _dump(
        {
            "n": body["n"],
            "count": body["count"],
            "seed": args.seed,
            "rows": body["rows"],
        }
    )


def _cmd_identify(args, config) -> str:
    g = dag_from_json(_read_json(args.dag))
    if args.batch is not None:
        with open(args.batch, "r", encoding="utf-8") as fh:
            batch = batch_from_csv(fh.read())
        if batch.n != g.n:
            raise ValueError(
                f"batch has {batch.n} coordinates but the graph has {g.n} nodes"
            )
    else:
        if args.count is None or args.seed is None:
            raise ValueError("identify needs --batch, or --count with --seed")
        batch = sample(g, _noise_from_args(args), args.count, args.seed)
    est = estimate_kleene(batch)
    report = identifiability_report(g, est)
    return _dump(
        {
            "estimate": matrix_to_json(est),
            "edges": report_to_json(report)["edges"],
        }
    )


def _cmd_render(args, config) -> Optional[str]:
    cfg = PointConfig(matrix_from_json(_read_json(args.matrix)))
    text = render_arrangement(cfg, size=args.size, grid=args.grid)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return None
    return text


def _add_noise_options(sp) -> None:
    sp.add_argument(
        "--noise",
        choices=sorted(_NOISE_DEFAULTS),
        default="exponential",
        help="innovation distribution (default: exponential)",
    )
    sp.add_argument(
        "--params",
        help="comma-separated distribution parameters "
        "(defaults: exponential 1; uniform 0,1; constant 0)",
    )


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polytropes",
        description="Exact min-plus computations on weighted DAGs: Kleene "
        "stars, facet descriptions, covector decompositions, subdivisions "
        "of fundamental polytopes, type enumeration, and max-linear "
        "network sampling.",
    )
    p.add_argument("--config", help="TOML config path (default: $POLYTROPES_CONFIG)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("kleene", help="Kleene star of a square matrix")
    sp.add_argument("matrix")
    sp.set_defaults(func=_cmd_kleene)

    sp = sub.add_parser(
        "reduce", help="weighted transitive reduction and modification cone"
    )
    sp.add_argument("dag")
    sp.add_argument("--dot", action="store_true", help="emit the reduction as DOT")
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("facets", help="irredundant facet description")
    sp.add_argument("dag")
    sp.set_defaults(func=_cmd_facets)

    sp = sub.add_parser(
        "covectors",
        help="covector decomposition, hull cells, and the polytrope cell",
    )
    sp.add_argument("matrix")
    sp.set_defaults(func=_cmd_covectors)

    sp = sub.add_parser(
        "subdivide", help="central regular subdivision of the fundamental polytope"
    )
    sp.add_argument("dag")
    sp.set_defaults(func=_cmd_subdivide)

    sp = sub.add_parser("enumerate", help="combinatorial type counts for one n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--per-graph", action="store_true", help="include per-class counts")
    sp.add_argument("--budget", type=float, help="time budget in seconds")
    sp.add_argument("--workers", type=int, help="process pool size")
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("equal", help="whether two matrices cut out the same polyhedron")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=_cmd_equal)

    sp = sub.add_parser(
        "equivalent", help="tropical equivalence of two configurations, with witness"
    )
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=_cmd_equivalent)

    sp = sub.add_parser("sample", help="draw observations of a max-linear network")
    sp.add_argument("dag")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    _add_noise_options(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_sample)

    sp = sub.add_parser(
        "identify", help="sup-estimator and per-edge identifiability report"
    )
    sp.add_argument("dag")
    sp.add_argument("--batch", help="CSV batch file (one observation per row)")
    sp.add_argument("--count", type=int)
    sp.add_argument("--seed", type=int)
    _add_noise_options(sp)
    sp.set_defaults(func=_cmd_identify)

    sp = sub.add_parser("render", help="SVG picture of a 3x3 arrangement")
    sp.add_argument("matrix")
    sp.add_argument("--size", type=int, default=480)
    sp.add_argument("--grid", type=int, default=48, help="label sampling density")
    sp.add_argument("--out", help="write the SVG here instead of stdout")
    sp.set_defaults(func=_cmd_render)

    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
        out = args.func(args, config)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if out is not None:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
