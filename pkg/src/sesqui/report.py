"""Validation reports: violations are returned as data, never raised."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator


@dataclass(frozen=True)
class Finding:
    kind: str
    axiom: str
    witnesses: tuple = ()
    message: str = ""

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "axiom": self.axiom,
            "witnesses": [str(w) for w in self.witnesses],
            "message": self.message,
        }

    def __str__(self) -> str:
        wit = ", ".join(str(w) for w in self.witnesses)
        text = f"[{self.kind}] {self.axiom}: {wit}"
        return f"{text} ({self.message})" if self.message else text


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    def add(self, kind: str, axiom: str, *witnesses, message: str = "") -> None:
        self.findings.append(Finding(kind, axiom, tuple(witnesses), message))

    def extend(self, other: "ValidationReport") -> None:
        self.findings.extend(other.findings)

    @property
    def ok(self) -> bool:
        return not self.findings

    def axioms(self) -> set[str]:
        return {f.axiom for f in self.findings}

    def by_kind(self, kind: str) -> list[Finding]:
        return [f for f in self.findings if f.kind == kind]

    def __len__(self) -> int:
        return len(self.findings)

    def __iter__(self) -> Iterator[Finding]:
        return iter(self.findings)

    def __bool__(self) -> bool:
        # truthy means "has violations", mirroring a non-empty list
        return bool(self.findings)

    def json_lines(self, limit: int | None = None) -> str:
        rows = self.findings if limit is None else self.findings[:limit]
        return "\n".join(json.dumps(f.as_dict(), sort_keys=True) for f in rows)
