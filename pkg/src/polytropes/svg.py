"""Static SVG pictures of plane max-type arrangements (n = d = 3 only).

Coordinates are normalized to x1 = 0 and drawn in the (x2 - x1, x3 - x1)
plane. Each point with a full column contributes three rays from its apex
(down, left, and up the main diagonal); a column with exactly two finite
entries degenerates to a single line, and with fewer it draws nothing.
Chambers are labeled with compact covectors located by grid sampling.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import PointConfig, affine_covector
from .semiring import is_finite

_PALETTE = ("#c0392b", "#2471a3", "#1e8449")

# (direction, ray) pieces keyed by the pair of sectors meeting there, for a
# full column with apex a: 1|2 drops down, 1|3 runs left, 2|3 climbs the
# diagonal.
_RAY_DIRS = ((0.0, -1.0), (-1.0, 0.0), (1.0, 1.0))


def _apex(col: Sequence) -> Optional[tuple[float, float]]:
    if not all(is_finite(x) for x in col):
        return None
    return (float(col[1] - col[0]), float(col[2] - col[0]))


def _clip(
    px: float, py: float, dx: float, dy: float,
    lo: float, hi: float, box: tuple[float, float, float, float],
) -> Optional[tuple[float, float, float, float]]:
    """Intersect the parametric piece p + t*d, t in [lo, hi], with the box."""
    xmin, ymin, xmax, ymax = box
    for coord, d, mn, mx in ((px, dx, xmin, xmax), (py, dy, ymin, ymax)):
        if d == 0:
            if not mn <= coord <= mx:
                return None
            continue
        t0, t1 = (mn - coord) / d, (mx - coord) / d
        if t0 > t1:
            t0, t1 = t1, t0
        lo, hi = max(lo, t0), min(hi, t1)
    if lo >= hi:
        return None
    return (px + lo * dx, py + lo * dy, px + hi * dx, py + hi * dy)


def _column_pieces(
    col: Sequence, box: tuple[float, float, float, float]
) -> list[tuple[float, float, float, float]]:
    big = 4 * max(abs(v) for v in box) + 4
    apex = _apex(col)
    if apex is not None:
        ax, ay = apex
        pieces = [
            _clip(ax, ay, dx, dy, 0.0, big, box) for dx, dy in _RAY_DIRS
        ]
        return [p for p in pieces if p]
    fin = [i for i, x in enumerate(col) if is_finite(x)]
    if len(fin) < 2:
        return []
    p, q = fin
    # boundary x_p - v_p = x_q - v_q as a full line in the u-plane
    u = [0.0, 0.0, 0.0]
    d = [0.0, 0.0, 0.0]
    if p == 0:
        u[q] = float(col[q] - col[p])
        d[3 - q] = 1.0
    else:
        diff = float(col[2] - col[1])
        u[1], u[2], d[1], d[2] = 0.0, diff, 1.0, 1.0
    piece = _clip(u[1], u[2], d[1], d[2], -big, big, box)
    return [piece] if piece else []


def _chamber_labels(
    cfg: PointConfig, box: tuple[float, float, float, float], grid: int
) -> list[tuple[float, float, str]]:
    xmin, ymin, xmax, ymax = box
    buckets: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for a in range(1, grid):
        for b in range(1, grid):
            u1 = Fraction(xmin) + Fraction(a, grid) * Fraction(xmax - xmin)
            u2 = Fraction(ymin) + Fraction(b, grid) * Fraction(ymax - ymin)
            cov = affine_covector((Fraction(0), u1, u2), cfg)
            if cov.is_chamber():
                buckets.setdefault(cov.compact(), []).append((u1, u2))
    labels = []
    for text in sorted(buckets):
        pts = buckets[text]
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        labels.append((float(cx), float(cy), text))
    return labels


def render_arrangement(cfg: PointConfig, size: int = 480, grid: int = 48) -> str:
    """SVG text for the arrangement of a 3x3 configuration."""
    if cfg.d != 3 or cfg.n != 3:
        raise ValueError("rendering needs n = d = 3")
    cols = [cfg.point(j) for j in range(1, 4)]
    apexes = [a for a in (_apex(c) for c in cols) if a]
    xs = [a[0] for a in apexes] or [0.0]
    ys = [a[1] for a in apexes] or [0.0]
    pad = max(3.0, 0.6 * max(max(xs) - min(xs), max(ys) - min(ys)))
    box = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
    xmin, ymin, xmax, ymax = box
    span_x, span_y = xmax - xmin, ymax - ymin

    def sx(u: float) -> float:
        return (u - xmin) / span_x * size

    def sy(v: float) -> float:
        return size - (v - ymin) / span_y * size

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for j, col in enumerate(cols):
        color = _PALETTE[j]
        for x0, y0, x1, y1 in _column_pieces(col, box):
            parts.append(
                f'<line x1="{sx(x0):.2f}" y1="{sy(y0):.2f}" '
                f'x2="{sx(x1):.2f}" y2="{sy(y1):.2f}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
        apex = _apex(col)
        if apex is not None:
            parts.append(
                f'<circle cx="{sx(apex[0]):.2f}" cy="{sy(apex[1]):.2f}" '
                f'r="4" fill="{color}"/>'
            )
            parts.append(
                f'<text x="{sx(apex[0]) + 7:.2f}" y="{sy(apex[1]) - 7:.2f}" '
                f'font-family="sans-serif" font-size="13" '
                f'fill="{color}">v{j + 1}</text>'
            )
    for cx, cy, text in _chamber_labels(cfg, box, grid):
        parts.append(
            f'<text x="{sx(cx):.2f}" y="{sy(cy):.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" fill="#333">'
            f"{text}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
