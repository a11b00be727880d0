"""Subpattern windows: anchor arithmetic, extraction, and anchor enumeration.

A window is placed in a parent region by an anchor ``(r0, c0)``: the parent
row of the window's top row and the parent column its top-left cell maps to.
Same-orientation windows sit at even ``c0``, opposite-orientation windows at
odd ``c0``.  Cut corners of a window kind are not part of the window, so they
may fall outside the parent; every other cell must be present.
"""

from __future__ import annotations

from typing import NamedTuple, Union

from .errors import WindowError
from .grid import (
    Orientation,
    Pattern,
    PatternKind,
    is_valid_cell,
    row_span,
    up_cells,
)
from .substitution import RawRegion, SuperTile

__all__ = ["Anchor", "map_local_to_parent", "extract", "anchors", "window_cells"]

Parent = Union[Pattern, RawRegion, SuperTile]


class Anchor(NamedTuple):
    r0: int
    c0: int


def map_local_to_parent(
    parent_orientation: Orientation,
    window_orientation: Orientation,
    anchor: Anchor,
    local: tuple[int, int],
) -> tuple[int, int]:
    """Parent coordinates of the window cell ``local``.

    Same-orientation windows translate rigidly; a DOWN window in an UP parent
    shifts two columns right per row, an UP window in a DOWN parent two
    columns left per row.
    """
    r, c = local
    if r < 0 or c < 0:
        raise WindowError(f"negative local index ({r}, {c})")
    r0, c0 = anchor
    if parent_orientation is window_orientation:
        return (r0 + r, c0 + c)
    if parent_orientation is Orientation.UP:
        return (r0 + r, c0 + 2 * r + c)
    return (r0 + r, c0 - 2 * r + c)


def window_cells(kind: PatternKind, n: int) -> tuple[tuple[int, int], ...]:
    """All cells of a size-``n`` window of ``kind`` (cut corners excluded)."""
    cuts = kind.cut_corners(n)
    orient = kind.orientation
    return tuple(
        (r, c)
        for r in range(n)
        for c in range(row_span(orient, n, r))
        if (r, c) not in cuts
    )


def _parent_views(parent: Parent):
    """Return ``(orientation, size, present, filled)`` accessors for a parent."""
    if isinstance(parent, SuperTile):
        parent = parent.body
    if isinstance(parent, RawRegion):
        return parent.orientation, parent.size, parent.present, parent.filled_at
    if isinstance(parent, Pattern):
        kind, size = parent.kind, parent.size

        def present(r: int, c: int) -> bool:
            return is_valid_cell(kind, size, r, c)

        def filled(r: int, c: int) -> bool:
            return parent.filled(r, c)

        return kind.orientation, size, present, filled
    raise TypeError(f"cannot extract from {type(parent).__name__}")


def extract(parent: Parent, kind: PatternKind, anchor: Anchor, n: int) -> Pattern:
    """Copy the ``(kind, n)`` window at ``anchor`` out of ``parent``.

    Pure read; raises :class:`WindowError` if any required cell is missing.
    """
    anchor = Anchor(*anchor)
    p_orient, _, present, filled_at = _parent_views(parent)
    w_orient = kind.orientation
    if (anchor.c0 - (0 if p_orient is w_orient else 1)) % 2:
        raise WindowError(
            f"anchor column {anchor.c0} has the wrong parity for a "
            f"{kind.value} window in a {p_orient.value} parent"
        )
    filled = []
    fillable = set(up_cells(kind, n))
    for cell in window_cells(kind, n):
        pr, pc = map_local_to_parent(p_orient, w_orient, anchor, cell)
        if pr < 0 or pc < 0 or not present(pr, pc):
            raise WindowError(
                f"window cell {cell} maps to absent parent cell ({pr}, {pc})"
            )
        if cell in fillable and filled_at(pr, pc):
            filled.append(cell)
    return Pattern.from_cells(kind, n, filled)


def _window_fits(parent: Parent, kind: PatternKind, anchor: Anchor, n: int) -> bool:
    p_orient, _, present, _ = _parent_views(parent)
    for cell in window_cells(kind, n):
        pr, pc = map_local_to_parent(p_orient, kind.orientation, anchor, cell)
        if pr < 0 or pc < 0 or not present(pr, pc):
            return False
    return True


def anchors(parent: Parent, kind: PatternKind, n: int) -> list[Anchor]:
    """All anchors at which a ``(kind, n)`` window can be extracted.

    Exhaustive scan in ``(r0, c0)`` lexicographic order.  Candidates one step
    outside the parent are included so that windows whose only missing cells
    are cut corners still count.
    """
    p_orient, size, _, _ = _parent_views(parent)
    parity = 0 if p_orient is kind.orientation else 1
    found = []
    max_col = 2 * size + 2
    for r0 in range(-1, size + 1):
        for c0 in range(-2 + parity, max_col, 2):
            a = Anchor(r0, c0)
            if _window_fits(parent, kind, a, n):
                found.append(a)
    return found
