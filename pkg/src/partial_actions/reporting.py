"""Itemized pass/fail reports produced by the verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    witness: Optional[str] = None

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  [{self.witness}]" if self.witness else ""
        return f"{status}  {self.name}{tail}"


@dataclass
class VerificationReport:
    """Outcome of checking a candidate against the partial-action axioms."""

    subject: str
    items: list[CheckItem] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Optional[str] = None) -> None:
        self.items.append(CheckItem(name, passed, witness))

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if not item.passed]

    def render_text(self) -> str:
        lines = [f"verification of {self.subject}:"]
        lines += ["  " + item.render() for item in self.items]
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "items": [
                {"name": i.name, "passed": i.passed, "witness": i.witness}
                for i in self.items
            ],
        }


ENVELOPE_CHECKS = ("ideal", "covers", "intersection", "equivariance")


@dataclass
class EnvelopingReport:
    """The four-item checklist for a candidate enveloping action."""

    items: dict[str, CheckItem] = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness: Optional[str] = None) -> None:
        if name not in ENVELOPE_CHECKS:
            raise ValueError(f"unknown enveloping check {name!r}")
        self.items[name] = CheckItem(name, passed, witness)

    @property
    def ok(self) -> bool:
        return len(self.items) == len(ENVELOPE_CHECKS) and all(
            item.passed for item in self.items.values()
        )

    def render_text(self) -> str:
        lines = ["enveloping-action checks:"]
        lines += ["  " + self.items[name].render() for name in ENVELOPE_CHECKS if name in self.items]
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)

    def to_dict(self) -> dict[str, bool]:
        return {name: self.items[name].passed for name in ENVELOPE_CHECKS if name in self.items}
