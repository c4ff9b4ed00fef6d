"""Check records and the exception raised when a verified identity fails."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class FalsificationError(Exception):
    """A structural identity failed at a concrete, re-runnable instance."""

    def __init__(self, check: str, instance: dict[str, Any], witness: Any = None):
        self.check = check
        self.instance = instance
        self.witness = witness
        detail = ", ".join(f"{k}={v}" for k, v in instance.items())
        super().__init__(f"{check} failed at {detail}" + (f": {witness}" if witness is not None else ""))


@dataclass
class CheckRecord:
    check: str
    instance: dict[str, Any]
    status: str  # "pass" | "fail" | "skip" | "info"
    witness: Any = None

    def to_json(self) -> dict:
        return {"check": self.check, "instance": self.instance,
                "status": self.status, "witness": self.witness}


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, check: str, instance: dict, ok: bool, witness: Any = None) -> None:
        self.records.append(CheckRecord(check, instance, "pass" if ok else "fail", witness))

    def note(self, check: str, instance: dict, witness: Any, status: str = "info") -> None:
        self.records.append(CheckRecord(check, instance, status, witness))

    def extend(self, other: Report) -> None:
        self.records.extend(other.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures
