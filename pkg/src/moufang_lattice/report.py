"""Pass/fail records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

SOURCES = ("literature", "derived", "trivial")


@dataclass(frozen=True)
class Check:
    """One expected-vs-computed comparison.

    ``source`` says where the expected value comes from: ``literature`` for
    published values, ``derived`` for values fixed by an independent
    computation, ``trivial`` for definitional facts.  ``note`` names the
    claim, so a failure message identifies what broke.
    """

    id: str
    expected: Any
    computed: Any
    source: str = "derived"
    note: str = ""

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")

    @property
    def ok(self) -> bool:
        return bool(self.expected == self.computed)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.id}: {self.computed!r}"
        if not self.ok:
            text += f" (expected {self.expected!r}; {self.source}"
            text += f": {self.note})" if self.note else ")"
        return text


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def check(self, id: str, expected: Any, computed: Any, source: str = "derived", note: str = "") -> Check:
        c = Check(id, expected, computed, source, note)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def format(self) -> str:
        passed = sum(c.ok for c in self.checks)
        lines = [f"== {self.title} =="]
        lines += [c.line() for c in self.checks]
        lines.append(f"-- {passed}/{len(self.checks)} passed")
        return "\n".join(lines)
