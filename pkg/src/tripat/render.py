"""Static SVG rendering of patterns, supertiles, and catalog sheets.

Unit triangles have side 1 and height sqrt(3)/2; filled cells are black,
unfilled cells white with an outline, cut cells are omitted.  Output is
byte-deterministic: fixed float formatting, row-major element order.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

from .grid import Orientation, Pattern, cell_orientation, row_span
from .substitution import SuperTile

__all__ = ["render_svg", "render_catalog_svg"]

_H = math.sqrt(3.0) / 2.0
_STROKE = 0.03


def _f(x: float) -> str:
    return f"{x:.4f}"


def _cell_points(
    region: Orientation, n: int, r: int, c: int
) -> tuple[tuple[float, float], tuple[float, float], tuple[float, float]]:
    """Vertices of cell (r, c); apex listed last."""
    up = cell_orientation(region, r, c) is Orientation.UP
    if region is Orientation.UP:
        if up:
            x0 = (n - 1 - r) / 2 + c / 2
            return ((x0, (r + 1) * _H), (x0 + 1, (r + 1) * _H), (x0 + 0.5, r * _H))
        x0 = (n - r) / 2 + (c - 1) / 2
        return ((x0, r * _H), (x0 + 1, r * _H), (x0 + 0.5, (r + 1) * _H))
    if up:
        x0 = (r + c) / 2
        return ((x0, (r + 1) * _H), (x0 + 1, (r + 1) * _H), (x0 + 0.5, r * _H))
    x0 = (r + c) / 2
    return ((x0, r * _H), (x0 + 1, r * _H), (x0 + 0.5, (r + 1) * _H))


def _pattern_polygons(p: Pattern) -> list[str]:
    orient = p.kind.orientation
    cuts = p.kind.cut_corners(p.size)
    polys = []
    for r in range(p.size):
        for c in range(row_span(orient, p.size, r)):
            if (r, c) in cuts:
                continue
            pts = _cell_points(orient, p.size, r, c)
            fill = "#000000" if p.filled(r, c) else "#ffffff"
            points = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
            polys.append(
                f'<polygon points="{points}" fill="{fill}" '
                f'stroke="#000000" stroke-width="{_STROKE}"/>'
            )
    return polys


def _body(obj: Union[Pattern, SuperTile]) -> Pattern:
    return obj.body if isinstance(obj, SuperTile) else obj


def render_svg(obj: Union[Pattern, SuperTile], scale: float = 40.0) -> str:
    """Render one pattern (or supertile body) as a standalone SVG document."""
    p = _body(obj)
    w, h = p.size, p.size * _H
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(w * scale)}" height="{_f(h * scale)}" '
        f'viewBox="{_f(-_STROKE)} {_f(-_STROKE)} {_f(w + 2 * _STROKE)} {_f(h + 2 * _STROKE)}">',
    ]
    parts.extend(_pattern_polygons(p))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_catalog_svg(
    patterns: Iterable[Pattern], columns: int | None = None, scale: float = 40.0
) -> str:
    """Render a sheet of sub-figures, one <g> per pattern, in catalog order."""
    pats = list(patterns)
    if not pats:
        raise ValueError("no patterns to render")
    n = max(p.size for p in pats)
    if columns is None:
        columns = max(1, math.ceil(math.sqrt(len(pats))))
    pad = 0.5
    cell_w, cell_h = n + pad, n * _H + pad
    rows = (len(pats) + columns - 1) // columns
    w, h = columns * cell_w + pad, rows * cell_h + pad
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(w * scale)}" height="{_f(h * scale)}" '
        f'viewBox="0 0 {_f(w)} {_f(h)}">',
    ]
    for i, p in enumerate(pats):
        tx = pad + (i % columns) * cell_w
        ty = pad + (i // columns) * cell_h
        parts.append(f'<g class="pattern" transform="translate({_f(tx)} {_f(ty)})">')
        parts.extend(_pattern_polygons(p))
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
