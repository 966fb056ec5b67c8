"""Structured pass/fail reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
INFO = "info"
SKIPPED = "skipped"


@dataclass
class Clause:
    id: str
    status: str
    witness: tuple | None = None
    scalar: str | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"id": self.id, "status": self.status}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.scalar is not None:
            out["scalar"] = self.scalar
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Certificate:
    name: str
    clauses: list[Clause] = field(default_factory=list)

    def add(self, id: str, status: str | bool, witness=None, scalar=None, detail: str = "") -> Clause:
        if isinstance(status, bool):
            status = PASS if status else FAIL
        c = Clause(id, status, tuple(witness) if witness is not None else None,
                   None if scalar is None else str(scalar), detail)
        self.clauses.append(c)
        return c

    def extend(self, other: "Certificate", prefix: str = "") -> None:
        for c in other.clauses:
            self.clauses.append(Clause(prefix + c.id, c.status, c.witness, c.scalar, c.detail))

    def clause(self, id: str) -> Clause | None:
        return next((c for c in self.clauses if c.id == id), None)

    def failed(self) -> list[str]:
        return [c.id for c in self.clauses if c.status == FAIL]

    @property
    def status(self) -> str:
        if any(c.status == FAIL for c in self.clauses):
            return FAIL
        if any(c.status == INCONCLUSIVE for c in self.clauses):
            return INCONCLUSIVE
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "clauses": [c.to_json() for c in self.clauses],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def render(self) -> str:
        lines = [f"{self.name}: {self.status.upper()}"]
        for c in self.clauses:
            extra = []
            if c.witness is not None:
                extra.append(f"witness={list(c.witness)}")
            if c.scalar is not None:
                extra.append(f"value={c.scalar}")
            if c.detail:
                extra.append(c.detail)
            tail = ("  " + "; ".join(extra)) if extra else ""
            lines.append(f"  [{c.status:>12}] {c.id}{tail}")
        return "\n".join(lines)
