"""Structured pass/fail reports with concrete witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIP = "pass", "fail", "skip"


def jsonable(obj: Any) -> Any:
    """Convert witnesses (tuples, frozensets, nested containers) to JSON values.

    Sets become sorted lists so that output is reproducible.
    """
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


@dataclass
class Check:
    name: str
    status: str
    witnesses: list = field(default_factory=list)
    note: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIP):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError(f"failing check {self.name!r} needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "witnesses": jsonable(self.witnesses)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, witnesses=(), *, note: str = "", skip: bool = False) -> Check:
        """Record a check that passes iff ``witnesses`` is empty (unless skipped)."""
        witnesses = list(witnesses)
        if skip:
            status = SKIP
        else:
            status = FAIL if witnesses else PASS
        check = Check(name, status, witnesses, note)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witnesses, c.note))
        return self

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def status(self, name: str) -> str:
        return self[name].status

    @property
    def ok(self) -> bool:
        """True when no check failed (skipped checks do not count as failures)."""
        return all(c.status != FAIL for c in self.checks)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def to_text(self, max_witnesses: int = 5) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = []
        for c in self.checks:
            line = f"{c.name:<{width}}  {c.status.upper():<4}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
            for w in c.witnesses[:max_witnesses]:
                lines.append(" " * (width + 2) + "  - " + _short(jsonable(w)))
            if len(c.witnesses) > max_witnesses:
                lines.append(" " * (width + 2) + f"  ... {len(c.witnesses) - max_witnesses} more")
        return "\n".join(lines)


def _short(w) -> str:
    if isinstance(w, list):
        return "(" + ", ".join(_short(x) for x in w) + ")"
    if isinstance(w, dict):
        return ", ".join(f"{k}={_short(v)}" for k, v in w.items())
    return str(w)
