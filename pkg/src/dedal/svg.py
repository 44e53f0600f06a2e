"""Standalone SVG figures: a filled table, stroked overlay polygons, and
orbit points as dots, with optional vertex labels.

Coordinates are emitted y-flipped so that counterclockwise in the plane
renders counterclockwise on screen.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional, Union

from .billiard import OrbitTrace
from .polygon import Polygon

_TABLE_FILL = "#d7e6f5"
_TABLE_STROKE = "#27496d"
_OVERLAY_COLORS = ("#c0392b", "#1e8449", "#7d3c98", "#b9770e")
_DOT_COLOR = "#1c2833"

Overlay = Union[Polygon, OrbitTrace]


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _collect_points(table: Polygon, overlays: Iterable[Overlay]) -> list[complex]:
    pts = list(table.vertices)
    for item in overlays:
        if isinstance(item, OrbitTrace):
            pts.extend(item.points)
        else:
            pts.extend(item.vertices)
    return pts


def _polygon_element(poly: Polygon, fill: str, stroke: str, width: float) -> str:
    coords = " ".join(f"{_fmt(v.real)},{_fmt(-v.imag)}" for v in poly.vertices)
    return (
        f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" '
        f'stroke-width="{_fmt(width)}" stroke-linejoin="round"/>'
    )


def _labels(poly: Polygon, prefix: str, offset: float, font: float, color: str) -> list[str]:
    out = []
    for i, v in enumerate(poly.vertices, start=1):
        out.append(
            f'<text x="{_fmt(v.real + offset)}" y="{_fmt(-v.imag - offset)}" '
            f'font-size="{_fmt(font)}" fill="{color}">{prefix}{i}</text>'
        )
    return out


def render_svg(
    table: Polygon,
    overlays: Iterable[Overlay] = (),
    path: Optional[str] = None,
    width: int = 640,
    label_vertices: bool = True,
) -> str:
    """Build the SVG document; write it to ``path`` when given."""
    overlays = list(overlays)
    pts = _collect_points(table, overlays)
    xs = [p.real for p in pts]
    ys = [-p.imag for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    pad = 0.1 * span
    x0, y0 = min(xs) - pad, min(ys) - pad
    w = (max(xs) - min(xs)) + 2 * pad
    h = (max(ys) - min(ys)) + 2 * pad

    stroke_w = 0.004 * span
    dot_r = 0.008 * span
    font = 0.04 * span
    offset = 0.015 * span

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{_fmt(width * h / w)}" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
        _polygon_element(table, _TABLE_FILL, _TABLE_STROKE, stroke_w),
    ]
    if label_vertices:
        parts.extend(_labels(table, "z", offset, font, _TABLE_STROKE))

    first_polygon_overlay = True
    for i, item in enumerate(overlays):
        color = _OVERLAY_COLORS[i % len(_OVERLAY_COLORS)]
        if isinstance(item, OrbitTrace):
            for p in item.points:
                parts.append(
                    f'<circle cx="{_fmt(p.real)}" cy="{_fmt(-p.imag)}" '
                    f'r="{_fmt(dot_r)}" fill="{_DOT_COLOR}"/>'
                )
        else:
            parts.append(_polygon_element(item, "none", color, stroke_w))
            if label_vertices and first_polygon_overlay:
                parts.extend(_labels(item, "w", offset, font, color))
                first_polygon_overlay = False
    parts.append("</svg>")
    doc = "\n".join(parts) + "\n"
    if path is not None:
        Path(path).write_text(doc, encoding="utf-8")
    return doc
