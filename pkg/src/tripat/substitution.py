"""The doubling substitution, its supertiles, and an arithmetic fill oracle.

The substitution maps every unit cell of a region to a 2x2-cell block of the
doubled region.  In an UP-oriented parent, up-cell ``(r, c)`` maps to the
up-block ``{(2r, 2c), (2r+1, 2c), (2r+1, 2c+1), (2r+1, 2c+2)}`` and down-cell
``(r, c)`` to the down-block ``{(2r, 2c-1), (2r, 2c), (2r, 2c+1),
(2r+1, 2c+1)}``; DOWN-oriented parents use the vertically mirrored mapping.
A filled up-cell fills the three up-cells of its block, everything else stays
unfilled, so no down cell is ever filled.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSizeError, ResourceCapError
from .grid import Orientation, Pattern, PatternKind

__all__ = [
    "EnumerationLimits",
    "RawRegion",
    "SuperTile",
    "apply_mu",
    "block_cells",
    "fill_oracle",
    "supertile",
    "validate_fill_oracle",
    "DEFAULT_LIMITS",
]


@dataclass(frozen=True)
class EnumerationLimits:
    """Caps protecting supertile generation and enumeration loops."""

    max_level: int = 12
    max_lattice_bytes: int = 1 << 31

    def check_level(self, k: int) -> None:
        if k > self.max_level:
            raise ResourceCapError(f"level {k} exceeds max_level {self.max_level}")
        if (1 << (2 * k)) > self.max_lattice_bytes:
            raise ResourceCapError(
                f"level {k} lattice needs {1 << (2 * k)} bytes, cap is {self.max_lattice_bytes}"
            )


DEFAULT_LIMITS = EnumerationLimits()


def block_cells(
    parent_orientation: Orientation, r: int, c: int
) -> tuple[tuple[int, int], ...]:
    """Cells of the doubled region covered by the image of cell ``(r, c)``.

    The first three entries are the cells sharing the parent cell's
    orientation (the ones a filled up-cell fills); the last is the inverted
    cell of the block.
    """
    cell_up = (c % 2 == 0) == (parent_orientation is Orientation.UP)
    if parent_orientation is Orientation.UP:
        if cell_up:
            return ((2 * r, 2 * c), (2 * r + 1, 2 * c), (2 * r + 1, 2 * c + 2), (2 * r + 1, 2 * c + 1))
        return ((2 * r, 2 * c - 1), (2 * r, 2 * c + 1), (2 * r + 1, 2 * c + 1), (2 * r, 2 * c))
    # DOWN parent: mirror rows within the block (top row of the parent cell's
    # band maps to the wider row of the block).
    if cell_up:
        return ((2 * r, 2 * c + 1), (2 * r + 1, 2 * c - 1), (2 * r + 1, 2 * c + 1), (2 * r + 1, 2 * c))
    return ((2 * r, 2 * c), (2 * r, 2 * c + 2), (2 * r + 1, 2 * c), (2 * r, 2 * c + 1))


@dataclass(frozen=True)
class RawRegion:
    """A doubled region whose cut corners became absent 2x2-cell blocks.

    Produced by :func:`apply_mu` on cut-kind patterns; not one of the five
    window kinds, so it is kept out of catalogs and canonical keys.
    """

    orientation: Orientation
    size: int
    absent: frozenset[tuple[int, int]]
    filled: frozenset[tuple[int, int]]

    def present(self, r: int, c: int) -> bool:
        from .grid import row_span

        if r < 0 or c < 0 or r >= self.size or c >= row_span(self.orientation, self.size, r):
            return False
        return (r, c) not in self.absent

    def filled_at(self, r: int, c: int) -> bool:
        return (r, c) in self.filled


def apply_mu(x: Pattern) -> "Pattern | RawRegion":
    """Apply the substitution to a pattern.

    Uncut kinds double to the same kind; cut kinds double to a
    :class:`RawRegion` with the scaled corner blocks absent.
    """
    n = x.size
    orient = x.kind.orientation
    filled: set[tuple[int, int]] = set()
    for (r, c) in x.filled_cells():
        filled.update(block_cells(orient, r, c)[:3])
    if not x.kind.is_cut:
        kind = PatternKind.UP if orient is Orientation.UP else PatternKind.DOWN
        return Pattern.from_cells(kind, 2 * n, filled)
    absent: set[tuple[int, int]] = set()
    for (r, c) in x.kind.cut_corners(n):
        absent.update(block_cells(orient, r, c))
    return RawRegion(orient, 2 * n, frozenset(absent), frozenset(filled))


# --------------------------------------------------------------------------
# Supertiles
# --------------------------------------------------------------------------

_lattice_cache: dict[int, np.ndarray] = {}
_lattice_lock = threading.Lock()


def lattice(k: int, limits: EnumerationLimits = DEFAULT_LIMITS) -> np.ndarray:
    """Up-cell fill lattice of the level-``k`` supertile.

    Shape ``(2^k, 2^k)`` bool; entry ``[r, i]`` is the fill of up-cell
    ``(r, 2i)``, valid for ``i <= r``.  Read-only and cached.
    """
    if k < 0:
        raise InvalidSizeError("supertile level must be >= 0")
    limits.check_level(k)
    with _lattice_lock:
        got = _lattice_cache.get(k)
    if got is not None:
        return got
    if k == 0:
        arr = np.ones((1, 1), dtype=bool)
    else:
        prev = lattice(k - 1, limits)
        n = prev.shape[0]
        arr = np.zeros((2 * n, 2 * n), dtype=bool)
        arr[0::2, 0::2] = prev
        arr[1::2, 0::2] = prev
        arr[1::2, 1::2] = prev
    arr.flags.writeable = False
    with _lattice_lock:
        _lattice_cache.setdefault(k, arr)
    return arr


def _pattern_from_lattice(arr: np.ndarray) -> Pattern:
    n = arr.shape[0]
    bits = arr[np.tril_indices(n)]
    packed = np.packbits(bits)
    return Pattern(PatternKind.UP, n, packed.tobytes())


@dataclass(frozen=True, eq=False)
class SuperTile:
    """The level-``k`` iterate of the substitution on a filled unit cell."""

    level: int
    body: Pattern
    _lattice: np.ndarray = field(repr=False)

    def filled_count(self) -> int:
        return int(self._lattice.sum())


def supertile(k: int, limits: EnumerationLimits = DEFAULT_LIMITS) -> SuperTile:
    """Build (or fetch) the level-``k`` supertile; size ``2^k``, ``3^k`` filled."""
    arr = lattice(k, limits)
    return SuperTile(level=k, body=_pattern_from_lattice(arr), _lattice=arr)


# --------------------------------------------------------------------------
# Arithmetic fill oracle
# --------------------------------------------------------------------------


def fill_oracle(r: int, c: int) -> bool:
    """Fill state of up-cell ``(r, c)`` in every supertile containing it.

    Independent of the doubling construction: the up-cell column index
    ``i = c/2`` is filled iff the binomial coefficient ``C(r, i)`` is odd,
    i.e. iff the binary digits of ``i`` are a submask of those of ``r``.
    """
    if c % 2:
        raise ValueError(f"({r}, {c}) is a down cell, not an up cell")
    if r < 0 or c < 0 or c > 2 * r:
        raise IndexError(f"({r}, {c}) out of range")
    return (c // 2) & ~r == 0


def validate_fill_oracle(max_level: int = 8, limits: EnumerationLimits = DEFAULT_LIMITS) -> None:
    """Compare the oracle with generated supertiles cell by cell.

    Raises ``AssertionError`` on the first disagreement.  Meant to run before
    the oracle is trusted in any verification.
    """
    for k in range(max_level + 1):
        arr = lattice(k, limits)
        n = arr.shape[0]
        rows, cols = np.tril_indices(n)
        expected = (cols & ~rows) == 0
        got = arr[rows, cols]
        if not np.array_equal(got, expected):
            bad = np.nonzero(got != expected)[0][0]
            raise AssertionError(
                f"fill oracle disagrees with level {k} at cell "
                f"({rows[bad]}, {2 * cols[bad]})"
            )


