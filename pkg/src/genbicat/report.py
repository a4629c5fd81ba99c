"""Check results and run reports shared by every law suite."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "genbicat.report/1"


class LawViolation(ValueError):
    """Input data failed a law it was required to satisfy."""

    def __init__(self, law: str, witness: Any = None):
        super().__init__(f"law violated: {law}")
        self.law = law
        self.witness = witness


class InternalConsistencyError(RuntimeError):
    pass


@dataclass
class Check:
    """Outcome of one law applied to every instance below a bound.

    A failing check stores the first counterexample in ``witness``;
    ``failures`` counts all of them.
    """

    name: str
    anchor: str = ""
    instances: int = 0
    failures: int = 0
    witness: Any = None
    bound: Any = None
    elapsed: float = 0.0
    incomplete: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0 and not self.incomplete

    def record(self, ok: bool, witness: Any = None) -> bool:
        self.instances += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness
        return ok

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": "pass" if self.passed else ("incomplete" if self.incomplete else "fail"),
            "instances": self.instances,
            "failures": self.failures,
            "witness": to_jsonable(self.witness),
            "bound": to_jsonable(self.bound),
            "elapsed": round(self.elapsed, 3),
            "note": self.note,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else ("INCOMPLETE" if self.incomplete else "FAIL")
        return f"[{status}] {self.name} ({self.anchor}) instances={self.instances} failures={self.failures}"


@contextmanager
def timed(check: Check):
    start = time.perf_counter()
    try:
        yield check
    finally:
        check.elapsed += time.perf_counter() - start


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, timings: bool = True) -> dict:
        checks = [c.to_json() for c in self.checks]
        if not timings:
            for c in checks:
                c.pop("elapsed")
        return {
            "schema": SCHEMA_VERSION,
            "config": self.config,
            "passed": self.passed,
            "checks": checks,
        }

    def dumps(self, fmt: str = "structured", timings: bool = True) -> str:
        if fmt == "text":
            lines = []
            for c in self.checks:
                lines.append(c.line())
                if c.note:
                    lines.append(f"    note: {c.note}")
                if c.witness is not None:
                    lines.append(f"    witness: {json.dumps(to_jsonable(c.witness), sort_keys=True)}")
            return "\n".join(lines) + f"\nOVERALL: {'PASS' if self.passed else 'FAIL'}\n"
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True) + "\n"


def to_jsonable(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return repr(x)
