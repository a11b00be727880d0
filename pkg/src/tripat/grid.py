"""Triangular-cell coordinate system, pattern kinds, and the Pattern value type.

Cells of a triangular region are addressed by ``(r, c)`` where ``r`` is the
row counted from the top (0-based) and ``c`` the column counted from the left
(0-based).  In an UP-oriented region of size ``n`` row ``r`` holds columns
``0..2r``; in a DOWN-oriented region it holds columns ``0..2(n-1-r)``.  Cells
at even columns share the region's orientation, cells at odd columns are
inverted.  Only UP-oriented unit cells carry a fill bit; DOWN cells are never
filled, so they are not represented in the bit map.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidSizeError

__all__ = [
    "Orientation",
    "PatternKind",
    "Pattern",
    "cell_count",
    "cell_orientation",
    "is_valid_cell",
    "up_cells",
    "make_blank",
    "canonical_key",
    "pattern_from_key",
]


class Orientation(enum.Enum):
    UP = "up"
    DOWN = "down"

    @property
    def flipped(self) -> "Orientation":
        return Orientation.DOWN if self is Orientation.UP else Orientation.UP


class PatternKind(enum.Enum):
    """The five window shapes: full triangles and corner-cut variants."""

    UP = "up"
    UP_CUT_TOP = "up-cut-top"
    UP_CUT_BOTTOM = "up-cut-bottom"
    UP_CUT_ALL = "up-cut-all"
    DOWN = "down"

    @property
    def orientation(self) -> Orientation:
        return Orientation.DOWN if self is PatternKind.DOWN else Orientation.UP

    @property
    def min_size(self) -> int:
        # A size-1 region cannot lose a corner and stay meaningful.
        return 2 if self.is_cut else 1

    @property
    def is_cut(self) -> bool:
        return self in (
            PatternKind.UP_CUT_TOP,
            PatternKind.UP_CUT_BOTTOM,
            PatternKind.UP_CUT_ALL,
        )

    def cut_corners(self, n: int) -> frozenset[tuple[int, int]]:
        """Cells removed from a size-``n`` region of this kind."""
        cells: list[tuple[int, int]] = []
        if self in (PatternKind.UP_CUT_TOP, PatternKind.UP_CUT_ALL):
            cells.append((0, 0))
        if self in (PatternKind.UP_CUT_BOTTOM, PatternKind.UP_CUT_ALL):
            cells.append((n - 1, 0))
            cells.append((n - 1, 2 * (n - 1)))
        return frozenset(cells)

    @property
    def code(self) -> int:
        return _KIND_CODE[self]

    @classmethod
    def from_name(cls, name: str) -> "PatternKind":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown pattern kind {name!r}") from None


_KIND_CODE = {k: i for i, k in enumerate(PatternKind)}
_KIND_FROM_CODE = {i: k for i, k in enumerate(PatternKind)}


def _check_size(kind: PatternKind, n: int) -> None:
    if n < kind.min_size:
        raise InvalidSizeError(f"{kind.value} requires size >= {kind.min_size}, got {n}")


def row_span(orientation: Orientation, n: int, r: int) -> int:
    """Number of columns in row ``r`` of a size-``n`` region (0 if out of range)."""
    if r < 0 or r >= n:
        return 0
    return 2 * r + 1 if orientation is Orientation.UP else 2 * (n - 1 - r) + 1


def cell_orientation(region_orientation: Orientation, r: int, c: int) -> Orientation:
    """Orientation of cell ``(r, c)`` in a region of the given orientation.

    Even columns share the region orientation, odd columns are inverted.  The
    row bound of DOWN regions depends on the size, which this signature does
    not carry; only the checks independent of size are enforced here.
    """
    if r < 0 or c < 0:
        raise IndexError(f"negative cell index ({r}, {c})")
    if region_orientation is Orientation.UP and c > 2 * r:
        raise IndexError(f"column {c} out of range for row {r} of an up region")
    if c % 2 == 0:
        return region_orientation
    return region_orientation.flipped


def is_valid_cell(kind: PatternKind, n: int, r: int, c: int) -> bool:
    """True iff ``(r, c)`` lies in a size-``n`` region of ``kind`` and is not cut."""
    if r < 0 or c < 0 or r >= n:
        return False
    if c >= row_span(kind.orientation, n, r):
        return False
    return (r, c) not in kind.cut_corners(n)


def cell_count(kind: PatternKind, n: int) -> tuple[int, int]:
    """Return ``(total_cells, up_cells)`` for a size-``n`` region of ``kind``."""
    _check_size(kind, n)
    cuts = len(kind.cut_corners(n))
    if kind is PatternKind.DOWN:
        return n * n, n * (n - 1) // 2
    return n * n - cuts, n * (n + 1) // 2 - cuts


@lru_cache(maxsize=None)
def up_cells(kind: PatternKind, n: int) -> tuple[tuple[int, int], ...]:
    """The fillable (UP-oriented) cells of a size-``n`` region, row-major.

    This order defines the bit layout of :class:`Pattern` and of canonical
    keys.
    """
    _check_size(kind, n)
    cuts = kind.cut_corners(n)
    cells: list[tuple[int, int]] = []
    if kind is PatternKind.DOWN:
        for r in range(n):
            for c in range(1, 2 * (n - 1 - r) + 1, 2):
                cells.append((r, c))
    else:
        for r in range(n):
            for c in range(0, 2 * r + 1, 2):
                if (r, c) not in cuts:
                    cells.append((r, c))
    return tuple(cells)


@lru_cache(maxsize=None)
def _up_cell_index(kind: PatternKind, n: int) -> dict[tuple[int, int], int]:
    return {cell: i for i, cell in enumerate(up_cells(kind, n))}


def _pack(bits: list[bool]) -> bytes:
    out = bytearray((len(bits) + 7) // 8)
    for i, b in enumerate(bits):
        if b:
            out[i >> 3] |= 0x80 >> (i & 7)
    return bytes(out)


@dataclass(frozen=True)
class Pattern:
    """A finite triangular region with per-up-cell fill bits.

    ``bits`` packs the fill map over :func:`up_cells` order, most significant
    bit first; pad bits in the final byte are zero.  Instances are immutable
    and safe to share.
    """

    kind: PatternKind
    size: int
    bits: bytes

    def __post_init__(self) -> None:
        _check_size(self.kind, self.size)
        count = len(up_cells(self.kind, self.size))
        if len(self.bits) != (count + 7) // 8:
            raise ValueError(
                f"bit map has {len(self.bits)} bytes, expected {(count + 7) // 8}"
            )
        if count % 8 and self.bits and self.bits[-1] & ((1 << (8 - count % 8)) - 1):
            raise ValueError("pad bits in the final byte must be zero")

    @classmethod
    def from_cells(
        cls, kind: PatternKind, size: int, filled: "list[tuple[int, int]] | set[tuple[int, int]]" = ()
    ) -> "Pattern":
        index = _up_cell_index(kind, size)
        bits = [False] * len(index)
        for cell in filled:
            try:
                bits[index[cell]] = True
            except KeyError:
                raise ValueError(f"{cell} is not a fillable cell of {kind.value} size {size}") from None
        return cls(kind, size, _pack(bits))

    @property
    def up_cell_count(self) -> int:
        return len(up_cells(self.kind, self.size))

    def bit(self, i: int) -> bool:
        return bool(self.bits[i >> 3] & (0x80 >> (i & 7)))

    def filled(self, r: int, c: int) -> bool:
        """Fill state of cell ``(r, c)``; DOWN cells are always unfilled."""
        if not is_valid_cell(self.kind, self.size, r, c):
            raise IndexError(f"({r}, {c}) is not a cell of {self.kind.value} size {self.size}")
        idx = _up_cell_index(self.kind, self.size).get((r, c))
        if idx is None:
            return False
        return self.bit(idx)

    def filled_cells(self) -> tuple[tuple[int, int], ...]:
        cells = up_cells(self.kind, self.size)
        return tuple(cells[i] for i in range(len(cells)) if self.bit(i))

    def filled_count(self) -> int:
        return sum(bin(b).count("1") for b in self.bits)

    # -- canonical serialization ------------------------------------------

    def key(self) -> bytes:
        return canonical_key(self)

    # -- text format -------------------------------------------------------
    #
    # First line "<kind> <n>"; then one line per row (cut rows included) with
    # one char per column: '1' filled up-cell, '0' unfilled up-cell,
    # '-' down cell, 'x' cut cell.

    def to_text(self) -> str:
        lines = [f"{self.kind.value} {self.size}"]
        cuts = self.kind.cut_corners(self.size)
        index = _up_cell_index(self.kind, self.size)
        orient = self.kind.orientation
        for r in range(self.size):
            chars = []
            for c in range(row_span(orient, self.size, r)):
                if (r, c) in cuts:
                    chars.append("x")
                elif (r, c) in index:
                    chars.append("1" if self.bit(index[(r, c)]) else "0")
                else:
                    chars.append("-")
            lines.append("".join(chars))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Pattern":
        lines = [ln for ln in text.splitlines()]
        if not lines:
            raise ValueError("empty pattern text")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError(f"bad header line {lines[0]!r}")
        kind = PatternKind.from_name(head[0])
        size = int(head[1])
        _check_size(kind, size)
        body = lines[1:]
        if len(body) != size:
            raise ValueError(f"expected {size} rows, got {len(body)}")
        cuts = kind.cut_corners(size)
        orient = kind.orientation
        filled = []
        for r, line in enumerate(body):
            span = row_span(orient, size, r)
            if len(line) != span:
                raise ValueError(f"row {r} has {len(line)} chars, expected {span}")
            for c, ch in enumerate(line):
                expect_cut = (r, c) in cuts
                if ch == "x":
                    if not expect_cut:
                        raise ValueError(f"unexpected cut marker at ({r}, {c})")
                    continue
                if expect_cut:
                    raise ValueError(f"cell ({r}, {c}) must be marked 'x'")
                is_up = cell_orientation(orient, r, c) is Orientation.UP
                if ch == "-":
                    if is_up:
                        raise ValueError(f"up cell ({r}, {c}) marked as down")
                elif ch in "01":
                    if not is_up:
                        raise ValueError(f"down cell ({r}, {c}) carries a fill bit")
                    if ch == "1":
                        filled.append((r, c))
                else:
                    raise ValueError(f"bad character {ch!r} at ({r}, {c})")
        return cls.from_cells(kind, size, filled)


def make_blank(kind: PatternKind, n: int) -> Pattern:
    """The all-unfilled pattern of the given kind and size."""
    _check_size(kind, n)
    return Pattern(kind, n, bytes((len(up_cells(kind, n)) + 7) // 8))


def canonical_key(p: Pattern) -> bytes:
    """Deterministic byte key: kind code, 4-byte size, packed fill bits.

    Keys are equal iff patterns are structurally equal; lexicographic order
    on keys is the catalog order (the blank pattern sorts first within a
    kind/size class).
    """
    return bytes([p.kind.code]) + p.size.to_bytes(4, "big") + p.bits


def pattern_from_key(key: bytes) -> Pattern:
    """Inverse of :func:`canonical_key`."""
    if len(key) < 5:
        raise ValueError("canonical key too short")
    kind = _KIND_FROM_CODE.get(key[0])
    if kind is None:
        raise ValueError(f"bad kind code {key[0]}")
    size = int.from_bytes(key[1:5], "big")
    return Pattern(kind, size, key[5:])
