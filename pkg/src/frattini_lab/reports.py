"""Structured evidence records produced by the verification pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Step:
    """One recorded fact.  Only ``kind == "assert"`` steps decide the verdict;
    ``hypothesis`` and ``observation`` steps are evidence."""

    description: str
    holds: bool
    orders: dict[str, int] = field(default_factory=dict)
    witnesses: list[str] = field(default_factory=list)
    kind: str = "assert"

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "kind": self.kind,
            "holds": self.holds,
            "orders": dict(self.orders),
            "witnesses": list(self.witnesses),
        }


@dataclass
class LemmaReport:
    lemma: str
    inputs: dict[str, Any] = field(default_factory=dict)
    steps: list[Step] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    error: str | None = None

    def check(self, description: str, holds: bool, orders: dict | None = None, witnesses=(), kind: str = "assert") -> bool:
        self.steps.append(Step(description, bool(holds), dict(orders or {}), [str(w) for w in witnesses], kind))
        return bool(holds)

    @property
    def hypotheses_met(self) -> bool:
        return all(s.holds for s in self.steps if s.kind == "hypothesis")

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(s.holds for s in self.steps if s.kind == "assert") else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def failing_steps(self) -> list[Step]:
        return [s for s in self.steps if s.kind == "assert" and not s.holds]

    def summary_orders(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out.update(s.orders)
        return out

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "verdict": self.verdict,
            "inputs": dict(self.inputs),
            "hypotheses_met": self.hypotheses_met,
            "steps": [s.to_dict() for s in self.steps],
            "notes": list(self.notes),
            "error": self.error,
        }
