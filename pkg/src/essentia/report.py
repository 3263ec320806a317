"""Verification reports: named pass/fail checks over one subject."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class Report:
    subject: object  # JSON-able description of the checked object
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"module": self.subject, "checks": [c.to_json() for c in self.checks]}
