"""Deterministic verification reports.

A report is a suite name, the echoed inputs (structure names, seeds,
budgets), a list of named check outcomes with counterexample payloads, and
per-flag counts.  Emission is byte-deterministic for fixed inputs: wall
time is tracked on the object for logging but never serialized, so two
runs over the same inputs produce identical bytes in both formats.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import Check, Failure


@dataclass
class Report:
    suite: str
    inputs: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    wall_ms: float | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def add(self, name: str, failure: Failure | None = None) -> None:
        self.checks.append(Check(name, failure))


def _check_payload(c: Check) -> dict:
    out: dict = {"name": c.name, "ok": c.ok}
    if c.failure is not None:
        out["code"] = c.failure.code
        out["witness"] = _jsonable(c.failure.witness)
        if c.failure.detail:
            out["detail"] = c.failure.detail
    return out


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, (list, dict, str, int, float, bool)) or value is None:
        return value
    return str(value)


def to_payload(report: Report) -> dict:
    return {
        "suite": report.suite,
        "inputs": {k: _jsonable(v) for k, v in sorted(report.inputs.items())},
        "checks": [_check_payload(c) for c in report.checks],
        "counts": {k: report.counts[k] for k in sorted(report.counts)},
        "ok": report.ok,
    }


def from_payload(obj: dict) -> Report:
    checks = []
    for c in obj.get("checks", []):
        if c.get("ok", False):
            checks.append(Check(c["name"]))
        else:
            witness = tuple(
                tuple(w) if isinstance(w, list) else w for w in c.get("witness", [])
            )
            checks.append(
                Check(c["name"], Failure(c.get("code", "FAIL"), witness, c.get("detail", "")))
            )
    return Report(
        suite=obj.get("suite", ""),
        inputs=dict(obj.get("inputs", {})),
        checks=checks,
        counts=dict(obj.get("counts", {})),
    )


def emit_report(report: Report, fmt: str = "text") -> bytes:
    """Render a report with stable field order; `fmt` is text or json."""
    if fmt == "json":
        return (json.dumps(to_payload(report), indent=2, ensure_ascii=True) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"suite: {report.suite}"]
    for key in sorted(report.inputs):
        lines.append(f"input: {key} = {report.inputs[key]}")
    for c in report.checks:
        if c.ok:
            lines.append(f"PASS {c.name}")
        else:
            lines.append(f"FAIL {c.name}: {c.failure}")
    if report.counts:
        lines.append("counts:")
        for key in sorted(report.counts):
            lines.append(f"  {key} = {report.counts[key]}")
    lines.append(f"result: {'ok' if report.ok else 'counterexample found'}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_report(data: bytes) -> Report:
    """Recover a report from its machine-readable emission."""
    return from_payload(json.loads(data.decode("utf-8")))
