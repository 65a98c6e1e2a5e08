"""Machine-readable check reports: JSON and plain-text rendering."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

_RATIONAL = re.compile(r"^-?\d+/\d+$")


@dataclass
class Check:
    name: str
    paper_anchor: str
    expected: object
    actual: object
    passed: bool | None = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = same_value(self.expected, self.actual)


@dataclass
class Report:
    input: dict
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0
    version: str = __version__

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, anchor: str, expected, actual, passed: bool | None = None) -> Check:
        c = Check(name, anchor, expected, actual, passed)
        self.checks.append(c)
        return c


def same_value(a, b) -> bool:
    """Exact comparison; fractions compare by value, containers elementwise."""
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(same_value(x, y) for x, y in zip(a, b))
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    return a == b


def to_jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return str(x)


def from_jsonable(x):
    if isinstance(x, str) and _RATIONAL.match(x):
        return Fraction(x)
    if isinstance(x, list):
        return [from_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: from_jsonable(v) for k, v in x.items()}
    return x


def report_dict(report: Report) -> dict:
    return {
        "version": report.version,
        "input": to_jsonable(report.input),
        "checks": [
            {
                "name": c.name,
                "paper_anchor": c.paper_anchor,
                "expected": to_jsonable(c.expected),
                "actual": to_jsonable(c.actual),
                "pass": bool(c.passed),
            }
            for c in report.checks
        ],
        "elapsed_ms": int(report.elapsed_ms),
    }


def _text(report: Report) -> str:
    lines = [f"nilcent {report.version}"]
    for k, v in report.input.items():
        lines.append(f"{k}: {to_jsonable(v)}")
    for c in report.checks:
        tag = "PASS" if c.passed else "FAIL"
        lines.append(f"{tag} {c.name}: expected {_show(c.expected)}, got {_show(c.actual)}")
    good = sum(1 for c in report.checks if c.passed)
    lines.append(f"{good}/{len(report.checks)} checks passed in {report.elapsed_ms} ms")
    return "\n".join(lines) + "\n"


def _show(x) -> str:
    v = to_jsonable(x)
    return v if isinstance(v, str) else json.dumps(v)


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report_dict(report), indent=2) + "\n").encode()
    if fmt == "text":
        return _text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data: bytes | str) -> Report:
    obj = json.loads(data)
    rep = Report(from_jsonable(obj["input"]), [], obj["elapsed_ms"], obj["version"])
    for c in obj["checks"]:
        rep.checks.append(Check(c["name"], c["paper_anchor"], from_jsonable(c["expected"]),
                                from_jsonable(c["actual"]), c["pass"]))
    return rep
