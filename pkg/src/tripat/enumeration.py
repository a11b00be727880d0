"""Saturation enumeration: exact pattern sets of each size over supertiles.

The level-``k`` supertile is scanned with a vectorized sliding-window gather
over its bit lattice; distinct windows are deduplicated by canonical key.
Pattern sets grow monotonically with the level, and once two consecutive
levels agree (and a third confirms) the set is complete, so each count is
exact, not a sample.
"""

from __future__ import annotations

import hashlib
import json
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import InvalidSizeError, SaturationError, TripatError
from .grid import Pattern, PatternKind, pattern_from_key, up_cells
from .report import VerificationReport
from .substitution import DEFAULT_LIMITS, EnumerationLimits, lattice

__all__ = [
    "PatternSet",
    "SaturationResult",
    "EnumerationCache",
    "pattern_set",
    "saturate",
    "count",
    "catalog",
    "verify_saturation",
    "write_catalog",
]

# Residue labels of occurrence anchors: (row parity, normalized column
# residue in {0, 2}).  Shared with the residue module.
LABELS = ((0, 0), (0, 2), (1, 0), (1, 2))

_CHUNK_ELEMS = 1 << 25


def _key_prefix(kind: PatternKind, n: int) -> bytes:
    return bytes([kind.code]) + n.to_bytes(4, "big")


def _offsets(kind: PatternKind, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Lattice offsets (row, up-column) of a window's fillable cells.

    Ordered like :func:`tripat.grid.up_cells`, so gathered bit rows pack into
    canonical keys directly.
    """
    cells = up_cells(kind, n)
    if kind is PatternKind.DOWN:
        # local (r, c), c odd; anchor (r0, c0=2q+1) maps it to parent column
        # c0 + 2r + c, i.e. up-column index q + r + (c + 1)/2.
        dj = [r for r, c in cells]
        di = [r + (c + 1) // 2 for r, c in cells]
    else:
        dj = [r for r, c in cells]
        di = [c // 2 for r, c in cells]
    return np.asarray(dj, dtype=np.int64), np.asarray(di, dtype=np.int64)


def _anchor_arrays(kind: PatternKind, n: int, N: int) -> tuple[np.ndarray, np.ndarray]:
    """All scan anchors ``(r0, q)`` in a size-``N`` supertile.

    ``q`` is the anchor column in up-column units: ``c0 = 2q`` for UP-oriented
    kinds, ``c0 = 2q + 1`` for DOWN windows.  The ranges mirror what
    :func:`tripat.extraction.anchors` finds by exhaustive search.
    """
    if kind is PatternKind.DOWN:
        lo, hi = n, N - n
        if hi < lo:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        rows = np.arange(lo, hi + 1, dtype=np.int64)
        qmax = rows - n
    else:
        hi = N - n
        if hi < 0:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        rows = np.arange(0, hi + 1, dtype=np.int64)
        qmax = rows.copy()
    counts = qmax + 1
    r0 = np.repeat(rows, counts)
    starts = np.cumsum(counts) - counts
    q0 = np.arange(counts.sum(), dtype=np.int64) - np.repeat(starts, counts)
    return r0, q0


def _scan_span(
    arr: np.ndarray,
    dj: np.ndarray,
    di: np.ndarray,
    r0: np.ndarray,
    q0: np.ndarray,
    prefix: bytes,
) -> set[bytes]:
    win = arr[r0[:, None] + dj[None, :], q0[:, None] + di[None, :]]
    packed = np.packbits(win, axis=1)
    width = packed.shape[1]
    uniq = np.unique(packed.reshape(len(r0), width).view(np.dtype((np.void, width))).ravel())
    return {prefix + item.tobytes() for item in uniq}


@dataclass(frozen=True)
class PatternSet:
    """Deduplicated pattern collection keyed by canonical encoding."""

    kind: PatternKind
    size: int
    source_level: int
    keys: frozenset[bytes]

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, item) -> bool:
        if isinstance(item, Pattern):
            return item.key() in self.keys
        return item in self.keys

    def sorted_keys(self) -> list[bytes]:
        return sorted(self.keys)

    def patterns(self) -> Iterator[Pattern]:
        for key in self.sorted_keys():
            yield pattern_from_key(key)


@dataclass(frozen=True)
class SaturationResult:
    """A confirmed plateau: the set equals the one of the infinite structure."""

    kind: PatternKind
    size: int
    plateau_level: int
    patterns: PatternSet


class EnumerationCache:
    """Memoizes per-level scans and saturation results.

    Scans release the GIL inside numpy, so ``threads > 1`` parallelizes the
    anchor stripes; results are unions of per-stripe sets and therefore
    identical for every thread count.
    """

    def __init__(self, limits: EnumerationLimits = DEFAULT_LIMITS, threads: int = 1):
        self.limits = limits
        self.threads = max(1, threads)
        self._buckets: dict[tuple, dict[tuple[int, int], frozenset[bytes]]] = {}
        self._sat: dict[tuple, SaturationResult] = {}
        self._lock = threading.Lock()
        self._pool: ThreadPoolExecutor | None = None

    # -- low-level scans ---------------------------------------------------

    def _executor(self) -> ThreadPoolExecutor | None:
        if self.threads == 1:
            return None
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.threads)
        return self._pool

    def buckets(
        self, kind: PatternKind, n: int, k: int
    ) -> dict[tuple[int, int], frozenset[bytes]]:
        """Distinct windows at level ``k`` split by anchor residue label."""
        if n < kind.min_size:
            raise InvalidSizeError(f"{kind.value} requires size >= {kind.min_size}")
        if (1 << k) < n:
            raise InvalidSizeError(f"size-{n} window does not fit level-{k} supertile")
        memo_key = (kind, n, k)
        with self._lock:
            got = self._buckets.get(memo_key)
        if got is not None:
            return got
        arr = lattice(k, self.limits)
        dj, di = _offsets(kind, n)
        r0, q0 = _anchor_arrays(kind, n, arr.shape[0])
        prefix = _key_prefix(kind, n)
        out: dict[tuple[int, int], frozenset[bytes]] = {}
        for (pr, pc) in LABELS:
            mask = ((r0 & 1) == pr) & ((q0 & 1) == (pc // 2))
            out[(pr, pc)] = self._scan_anchor_set(arr, dj, di, r0[mask], q0[mask], prefix)
        with self._lock:
            return self._buckets.setdefault(memo_key, out)

    def _scan_anchor_set(
        self,
        arr: np.ndarray,
        dj: np.ndarray,
        di: np.ndarray,
        r0: np.ndarray,
        q0: np.ndarray,
        prefix: bytes,
    ) -> frozenset[bytes]:
        total = len(r0)
        if total == 0:
            return frozenset()
        if len(dj) == 0:
            # Degenerate window with no fillable cells: one blank pattern.
            return frozenset([prefix])
        step = max(1, _CHUNK_ELEMS // len(dj))
        spans = [(i, min(i + step, total)) for i in range(0, total, step)]
        pool = self._executor()
        if pool is None or len(spans) == 1:
            found: set[bytes] = set()
            for i, j in spans:
                found |= _scan_span(arr, dj, di, r0[i:j], q0[i:j], prefix)
            return frozenset(found)
        futures = [
            pool.submit(_scan_span, arr, dj, di, r0[i:j], q0[i:j], prefix)
            for i, j in spans
        ]
        found = set()
        for fut in futures:
            found |= fut.result()
        return frozenset(found)

    def level_keys(self, kind: PatternKind, n: int, k: int) -> frozenset[bytes]:
        buckets = self.buckets(kind, n, k)
        out: set[bytes] = set()
        for s in buckets.values():
            out |= s
        return frozenset(out)

    # -- spec operations -----------------------------------------------------

    def pattern_set(self, k: int, kind: PatternKind, n: int) -> PatternSet:
        return PatternSet(kind, n, k, self.level_keys(kind, n, k))

    def saturate(self, kind: PatternKind, n: int) -> SaturationResult:
        """Find the plateau level and the complete pattern set for size ``n``.

        The loop starts at the smallest level whose supertile fits the window
        and advances until three consecutive levels agree.  Requiring the
        third level guards the one known degenerate case (size-1 up windows,
        where levels 0 and 1 agree without being complete).
        """
        with self._lock:
            got = self._sat.get((kind, n))
        if got is not None:
            return got
        if n < kind.min_size:
            raise InvalidSizeError(f"{kind.value} requires size >= {kind.min_size}")
        k = max((n - 1).bit_length(), 0)
        while True:
            if k + 2 > self.limits.max_level:
                raise SaturationError(
                    f"no plateau for ({kind.value}, {n}) below level cap "
                    f"{self.limits.max_level}"
                )
            s0 = self.level_keys(kind, n, k)
            s1 = self.level_keys(kind, n, k + 1)
            if s0 and not s0 <= s1:
                raise TripatError(
                    f"monotone chain violated for ({kind.value}, {n}) at level {k}"
                )
            if s0 and s0 == s1 and s1 == self.level_keys(kind, n, k + 2):
                result = SaturationResult(kind, n, k, PatternSet(kind, n, k, s0))
                with self._lock:
                    return self._sat.setdefault((kind, n), result)
            k += 1

    def count(self, kind: PatternKind, n: int) -> int:
        return len(self.saturate(kind, n).patterns)

    def catalog(self, kind: PatternKind, n: int) -> list[Pattern]:
        return list(self.saturate(kind, n).patterns.patterns())

    def saturations_run(self) -> list[SaturationResult]:
        with self._lock:
            return list(self._sat.values())


_default_cache = EnumerationCache()


def default_cache() -> EnumerationCache:
    return _default_cache


def pattern_set(k: int, kind: PatternKind, n: int, cache: EnumerationCache | None = None) -> PatternSet:
    return (cache or _default_cache).pattern_set(k, kind, n)


def saturate(kind: PatternKind, n: int, cache: EnumerationCache | None = None) -> SaturationResult:
    return (cache or _default_cache).saturate(kind, n)


def count(kind: PatternKind, n: int, cache: EnumerationCache | None = None) -> int:
    return (cache or _default_cache).count(kind, n)


def catalog(kind: PatternKind, n: int, cache: EnumerationCache | None = None) -> list[Pattern]:
    return (cache or _default_cache).catalog(kind, n)


def verify_saturation(max_n: int, cache: EnumerationCache | None = None) -> VerificationReport:
    """Re-check plateau persistence (level K vs K+2) for every size in range.

    Also pins the two small plateau levels that are known exactly: size 2
    saturates at level 3 and size 4 at level 4 for full up windows.
    """
    cache = cache or _default_cache
    report = VerificationReport("saturation")
    for kind in PatternKind:
        for n in range(kind.min_size, max_n + 1):
            sat = cache.saturate(kind, n)
            k = sat.plateau_level
            persist = cache.level_keys(kind, n, k + 2) == sat.patterns.keys
            report.add(
                check="plateau-persistence",
                kind=kind.value,
                n=n,
                plateau_level=k,
                **{"pass": persist},
            )
    for n, expected in ((2, 3), (4, 4)):
        if n <= max_n:
            got = cache.saturate(PatternKind.UP, n).plateau_level
            report.add(
                check="plateau-pin",
                kind=PatternKind.UP.value,
                n=n,
                expected=expected,
                actual=got,
                **{"pass": got == expected},
            )
    return report


def write_catalog(
    directory: "str | Path",
    kind: PatternKind,
    n: int,
    cache: EnumerationCache | None = None,
) -> Path:
    """Write one text file per pattern plus a manifest; returns the directory."""
    cache = cache or _default_cache
    sat = cache.saturate(kind, n)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for i, pattern in enumerate(sat.patterns.patterns()):
        digest = hashlib.sha256(pattern.key()).hexdigest()[:8]
        name = f"{i:05d}-{digest}.txt"
        (directory / name).write_text(pattern.to_text())
        names.append(name)
    manifest = {
        "kind": kind.value,
        "size": n,
        "count": len(sat.patterns),
        "plateau_level": sat.plateau_level,
        "files": names,
    }
    (directory / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    return directory
