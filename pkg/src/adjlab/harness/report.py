"""Scenario reports: exact, deterministic, machine-readable."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import AdjlabError, BudgetExceeded
from .anchors import ANCHORS

PASS, FAIL, INCONCLUSIVE, ERROR = "pass", "fail", "inconclusive", "error"


def jsonable(obj):
    """Convert results to JSON-safe data; floats are rejected."""
    from ..ideal import Ideal
    from ..poly import Polynomial

    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Ideal):
        return obj.serialize()
    if isinstance(obj, Polynomial):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    return str(obj)


@dataclass
class Assertion:
    id: str
    anchor: str
    status: str
    witness: dict = field(default_factory=dict)
    millis: int = 0

    def body(self):
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "witness": jsonable(self.witness)}


@dataclass
class Report:
    scenario: str
    seed: int
    field: str
    budgets: dict
    assertions: list = field(default_factory=list)

    def record(self, aid, anchor_key, status, witness=None, millis=0):
        frag = ANCHORS.get(anchor_key, anchor_key or "")
        self.assertions.append(Assertion(aid, frag, status, witness or {}, millis))

    def run(self, aid, anchor_key, fn, budget_status=ERROR):
        """Run ``fn() -> (ok, witness)``; ``ok`` None means inconclusive."""
        start = time.perf_counter()
        try:
            ok, witness = fn()
            status = INCONCLUSIVE if ok is None else (PASS if ok else FAIL)
        except BudgetExceeded as exc:
            status, witness = budget_status, {"budget": str(exc)}
        except AdjlabError as exc:
            status, witness = ERROR, {"error": type(exc).__name__, "message": str(exc)}
        self.record(aid, anchor_key, status, witness, int((time.perf_counter() - start) * 1000))
        return status

    def counts(self):
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0, ERROR: 0}
        for a in self.assertions:
            out[a.status] += 1
        return out

    @property
    def exit_status(self):
        c = self.counts()
        if c[FAIL]:
            return 1
        if c[ERROR]:
            return 2
        return 0

    def body(self):
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "field": self.field,
            "budgets": jsonable(self.budgets),
            "assertions": [a.body() for a in sorted(self.assertions, key=lambda a: a.id)],
            "summary": self.counts(),
            "exit_status": self.exit_status,
        }

    def to_dict(self):
        d = self.body()
        d["timing_ms"] = {a.id: a.millis for a in sorted(self.assertions, key=lambda a: a.id)}
        return d

    def body_json(self):
        return json.dumps(self.body(), indent=2, sort_keys=True)

    def summary_table(self):
        rows = sorted(self.assertions, key=lambda a: a.id)
        width = max((len(a.id) for a in rows), default=10)
        lines = [f"scenario {self.scenario} (seed {self.seed}, field {self.field})"]
        for a in rows:
            lines.append(f"  {a.id.ljust(width)}  {a.status:<12} {a.millis} ms")
            if a.status == ERROR:
                lines.append(f"  {''.ljust(width)}  {a.witness.get('message') or a.witness.get('budget', '')}")
        c = self.counts()
        lines.append(f"  {c[PASS]} pass, {c[FAIL]} fail, {c[INCONCLUSIVE]} inconclusive, {c[ERROR]} error")
        return "\n".join(lines)


def combined_exit(reports):
    codes = [r.exit_status for r in reports]
    if 1 in codes:
        return 1
    if 2 in codes:
        return 2
    return 0
