"""Verification reports: a list of failed identities plus free-form details."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    check: str
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **where: Any) -> None:
        self.failures.append(where)

    def expect(self, condition: bool, **where: Any) -> bool:
        if not condition:
            self.failures.append(where)
        return condition

    def absorb(self, other: "Report", **context: Any) -> "Report":
        for f in other.failures:
            self.failures.append({"in": other.check, **context, **f})
        return self

    def to_dict(self) -> dict:
        return {"check": self.check, "ok": self.ok, "failures": self.failures, "details": self.details}

    def __bool__(self) -> bool:
        return self.ok
