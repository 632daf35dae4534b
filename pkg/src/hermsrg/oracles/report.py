"""LemmaReport and the small bookkeeping object the oracles fill in."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def _plain(x):
    """JSON-friendly copy of nested numpy/int/set values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


@dataclass
class LemmaCase:
    frame: str
    params: dict
    expected: Any
    observed: Any

    @property
    def ok(self) -> bool:
        return _plain(self.expected) == _plain(self.observed)

    def to_json(self) -> dict:
        return {"frame": self.frame, "params": _plain(self.params),
                "expected": _plain(self.expected), "observed": _plain(self.observed),
                "ok": self.ok}


@dataclass
class LemmaReport:
    """Expected versus observed counts for every configuration tested."""

    lemma: str
    q: int
    seed: int
    cases: list[LemmaCase] = field(default_factory=list)
    sampled: bool = False
    partial: bool = False
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[LemmaCase]:
        return [c for c in self.cases if not c.ok]

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.partial or not self.cases:
            return "partial"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def frames(self) -> list[str]:
        return sorted({c.frame for c in self.cases})

    def summary(self) -> str:
        return (f"{self.lemma} q={self.q}: {self.status} "
                f"({len(self.cases) - len(self.failures)}/{len(self.cases)} configurations, "
                f"frames {','.join(self.frames())}, {self.seconds:.1f}s)")

    def to_json(self, timings: bool = True) -> dict:
        out = {"lemma": self.lemma, "q": self.q, "seed": self.seed, "status": self.status,
               "sampled": self.sampled, "partial": self.partial,
               "n_cases": len(self.cases), "n_failures": len(self.failures),
               "notes": list(self.notes), "cases": [c.to_json() for c in self.cases]}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True)


class BudgetExhausted(RuntimeError):
    pass


class Recorder:
    """Collects cases into a report and enforces an optional time budget."""

    def __init__(self, report: LemmaReport, budget_seconds: float | None):
        self.report = report
        self.deadline = None if budget_seconds is None else time.perf_counter() + budget_seconds

    def add(self, frame: str, params: dict, expected, observed) -> LemmaCase:
        case = LemmaCase(frame, params, expected, observed)
        self.report.cases.append(case)
        self.tick()
        return case

    def tick(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise BudgetExhausted

    def note(self, text: str) -> None:
        if text not in self.report.notes:
            self.report.notes.append(text)
