"""Command-line front end.

Exit codes: 0 success (all checks pass), 1 a verification failed, 2 usage
error, 3 a resource cap was exceeded.  Output is deterministic for a given
command line, independent of the worker thread count.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .enumeration import EnumerationCache, verify_saturation, write_catalog
from .errors import (
    InvalidSizeError,
    InvalidSpecError,
    ResourceCapError,
    SaturationError,
    TripatError,
    WindowError,
)
from .grid import PatternKind
from .laws import (
    emit_table,
    oeis_crosscheck,
    verify_closed_forms,
    verify_identities,
    verify_recursions,
)
from .render import render_catalog_svg, render_svg
from .report import VerificationReport
from .residue import verify_additivity, verify_intersections
from .substitution import EnumerationLimits, supertile

__all__ = ["main"]

_VERIFY_SUITES = (
    "closed-forms",
    "recursions",
    "additivity",
    "intersections",
    "saturation",
    "identities",
    "oeis",
    "all",
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    parser.add_argument("--max-level", type=int, default=12, help="supertile level cap")
    parser.add_argument(
        "--memory-cap",
        type=int,
        default=1 << 31,
        help="max bytes for one supertile lattice",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripat",
        description="Enumerate, count, catalog and verify triangular subpatterns "
        "of the Sierpinski triangle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("supertile", help="generate a supertile")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--format", choices=("bits", "svg"), default="bits")
    p.add_argument("--out", type=Path)
    _add_common(p)

    p = sub.add_parser("count", help="count distinct patterns of a kind and size")
    p.add_argument("--kind", required=True)
    p.add_argument("--size", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("catalog", help="list every distinct pattern of a kind and size")
    p.add_argument("--kind", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--format", choices=("text", "svg"), default="text")
    p.add_argument("--out", type=Path, help="write a catalog directory instead of stdout")
    _add_common(p)

    p = sub.add_parser("table", help="emit the series table for n = 1..max-size")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path)
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=_VERIFY_SUITES)
    p.add_argument("--max-size", type=int, default=10)
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--out", type=Path)
    _add_common(p)

    return parser


def _parse_kind(name: str) -> PatternKind:
    try:
        return PatternKind.from_name(name)
    except ValueError as exc:
        raise InvalidSizeError(str(exc))  # mapped to usage error below


def _make_cache(args) -> EnumerationCache:
    limits = EnumerationLimits(max_level=args.max_level, max_lattice_bytes=args.memory_cap)
    return EnumerationCache(limits=limits, threads=args.threads)


def _emit(text: str, out: "Path | None") -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _intersection_sizes(kind: PatternKind, max_size: int) -> list[int]:
    start = 2 if kind is PatternKind.UP else 4
    return [n for n in range(start, max_size + 1)]


def _run_verify(args) -> int:
    cache = _make_cache(args)
    max_n = args.max_size
    if max_n < 2:
        raise InvalidSizeError("--max-size must be >= 2")
    suites = [args.suite] if args.suite != "all" else [
        "closed-forms",
        "recursions",
        "identities",
        "oeis",
        "saturation",
        "additivity",
        "intersections",
    ]
    combined = VerificationReport("all" if args.suite == "all" else args.suite)
    for suite in suites:
        if suite == "closed-forms":
            combined.extend(verify_closed_forms(max_n, cache))
        elif suite == "recursions":
            combined.extend(verify_recursions(max_n, cache))
        elif suite == "identities":
            combined.extend(verify_identities(max_n, cache))
        elif suite == "oeis":
            combined.extend(oeis_crosscheck(max_n, cache))
        elif suite == "saturation":
            combined.extend(verify_saturation(max_n, cache))
        elif suite == "additivity":
            for kind in PatternKind:
                for n in range(max(kind.min_size, 2), max_n + 1):
                    combined.extend(verify_additivity(kind, n, cache))
        elif suite == "intersections":
            for kind in PatternKind:
                for n in _intersection_sizes(kind, max_n):
                    combined.extend(verify_intersections(kind, n, cache))
    if args.json:
        _emit(combined.to_json(), args.out)
    else:
        lines = combined.lines()
        lines.append(
            f"{'OK' if combined.passed else 'FAILED'}: "
            f"{len(combined.entries) - len(combined.failures)}/{len(combined.entries)} checks passed"
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if combined.passed else 1


def _run(args) -> int:
    if args.command == "supertile":
        if args.level < 0:
            raise InvalidSizeError("--level must be >= 0")
        cache = _make_cache(args)
        tile = supertile(args.level, cache.limits)
        if args.format == "svg":
            _emit(render_svg(tile), args.out)
        else:
            _emit(tile.body.to_text(), args.out)
        return 0

    if args.command == "count":
        kind = _parse_kind(args.kind)
        cache = _make_cache(args)
        value = cache.count(kind, args.size)
        _emit(f"{value}\n", None)
        return 0

    if args.command == "catalog":
        kind = _parse_kind(args.kind)
        cache = _make_cache(args)
        if args.out is not None and args.format == "text":
            write_catalog(args.out, kind, args.size, cache)
            return 0
        patterns = cache.catalog(kind, args.size)
        if args.format == "svg":
            _emit(render_catalog_svg(patterns), args.out)
        else:
            _emit("\n".join(p.to_text() for p in patterns), args.out)
        return 0

    if args.command == "table":
        cache = _make_cache(args)
        _emit(emit_table(args.max_size, args.format, cache), args.out)
        return 0

    if args.command == "verify":
        return _run_verify(args)

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (InvalidSizeError, InvalidSpecError, WindowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceCapError, SaturationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TripatError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
