"""Machine-readable pass/fail reports shared by all verifiers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["VerificationReport"]


@dataclass
class VerificationReport:
    """An ordered list of check entries, each a JSON-ready dict with 'pass'."""

    suite: str
    entries: list[dict] = field(default_factory=list)

    def add(self, **entry) -> dict:
        if "pass" not in entry:
            raise ValueError("report entries need a 'pass' field")
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport") -> None:
        self.entries.extend(other.entries)

    @property
    def passed(self) -> bool:
        return all(e["pass"] for e in self.entries)

    @property
    def failures(self) -> list[dict]:
        return [e for e in self.entries if not e["pass"]]

    def to_json(self) -> str:
        doc = {"suite": self.suite, "pass": self.passed, "checks": self.entries}
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            tag = "PASS" if e["pass"] else "FAIL"
            detail = " ".join(
                f"{k}={_fmt(v)}" for k, v in e.items() if k not in ("pass",)
            )
            out.append(f"[{tag}] {detail}")
        return out


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)
