"""Structured results of the exhaustive checks.

A check never stops at the first counterexample: it walks its whole domain and
records every violation, so a report doubles as a counterexample list.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass
class Report:
    theorem_id: str
    n: int
    domain_size: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    note: str | None = None

    @property
    def status(self) -> str:
        if self.violations:
            return "fail"
        return "pass" if self.domain_size else "vacuous"

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, condition: bool, **detail: Any) -> bool:
        """Count one instance of the domain; record ``detail`` if it fails."""
        self.domain_size += 1
        if not condition:
            self.violations.append({k: _jsonable(v) for k, v in detail.items()})
        return condition

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "n": self.n,
            "domain_size": self.domain_size,
            "violations": self.violations,
            "status": self.status,
            "note": self.note,
        }

    def to_text(self, max_violations: int = 5) -> str:
        line = f"[{self.status.upper():7}] {self.theorem_id} (n={self.n}, domain={self.domain_size}"
        line += f", violations={len(self.violations)})"
        if self.note:
            line += f"  -- {self.note}"
        out = [line]
        for v in self.violations[:max_violations]:
            out.append("    " + ", ".join(f"{k}={val}" for k, val in v.items()))
        if len(self.violations) > max_violations:
            out.append(f"    ... {len(self.violations) - max_violations} more")
        return "\n".join(out)


def _jsonable(v: Any) -> Any:
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(a) for a in v]
    if isinstance(v, (set, frozenset)):
        return sorted(_jsonable(a) for a in v)
    if isinstance(v, numbers.Integral):
        return int(v)
    return str(v)


def all_ok(reports: Iterable[Report]) -> bool:
    return all(r.ok for r in reports)


def reports_to_json(reports: Iterable[Report]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=False)


def reports_to_text(reports: Iterable[Report]) -> str:
    return "\n".join(r.to_text() for r in reports)
