"""Check-report containers and serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import IOFailure


@dataclass
class CheckItem:
    """One named residual with its tolerance and verdict."""

    name: str
    max_residual: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_residual = float(self.max_residual)
        self.tol = float(self.tol)
        self.passed = bool(self.max_residual <= self.tol)


@dataclass
class CheckReport:
    """Named residuals, tolerances and verdicts for one verification suite."""

    suite: str
    params: dict
    checks: list
    passed: bool
    runtime_ms: float = 0.0

    @classmethod
    def build(cls, suite: str, params: dict, checks: list, runtime_ms: float = 0.0) -> "CheckReport":
        return cls(suite, params, list(checks), all(c.passed for c in checks), runtime_ms)

    def merged(self, other: "CheckReport") -> "CheckReport":
        checks = self.checks + other.checks
        return CheckReport.build(self.suite, self.params, checks, self.runtime_ms + other.runtime_ms)


def report_to_dict(r: CheckReport) -> dict:
    return {
        "suite": r.suite,
        "params": dict(r.params),
        "checks": [
            {"name": c.name, "max_residual": c.max_residual, "tol": c.tol, "pass": c.passed}
            for c in r.checks
        ],
        "pass": r.passed,
        "runtime_ms": r.runtime_ms,
    }


def emit_report(r: CheckReport, fmt: str = "json") -> str:
    """Serialize a report; JSON key order is fixed by construction order."""
    if fmt == "json":
        try:
            return json.dumps(report_to_dict(r), indent=2)
        except (TypeError, ValueError) as exc:
            raise IOFailure(f"cannot serialize report: {exc}") from exc
    if fmt == "text":
        lines = [f"suite: {r.suite}"]
        lines.append("params: " + " ".join(f"{k}={v}" for k, v in r.params.items()))
        for c in r.checks:
            verdict = "pass" if c.passed else "FAIL"
            lines.append(f"  [{verdict}] {c.name}: max_residual={c.max_residual:.3e} tol={c.tol:.1e}")
        lines.append(f"overall: {'pass' if r.passed else 'FAIL'} ({r.runtime_ms:.1f} ms)")
        return "\n".join(lines)
    raise ValueError(f"unknown report format {fmt!r}")
