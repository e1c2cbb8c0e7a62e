"""Verification reports and their JSON/text serialization.

JSON output is deterministic: keys are emitted sorted and volatile fields
(wall time) are excluded, so identical inputs give byte-identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

VERSION = "0.1.0"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

CAVEAT_WINDOW = "windowed vanishing is necessary-condition evidence"
CAVEAT_GRADED_MODEL = "graded module model stands in for the completed local one; degreewise dimensions are compared"
CAVEAT_OVERAPPROX = "windowed commuting-family dimension over-approximates restrictions of true endomorphisms"


@dataclass
class DegreeRow:
    degree: str
    expected: object
    computed: object

    @property
    def match(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "match": self.match,
        }


@dataclass
class VerificationReport:
    statement: str
    instance: str
    rows: list = field(default_factory=list)
    window: str = ""
    boundary_incomplete: list = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    caveats: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    wall_time_ms: float = 0.0

    def add_row(self, degree, expected, computed) -> DegreeRow:
        row = DegreeRow(str(degree), expected, computed)
        self.rows.append(row)
        return row

    def all_match(self) -> bool:
        return all(r.match for r in self.rows)

    def finish(self, hypothesis_ok: bool = True) -> "VerificationReport":
        """Set the verdict from the accumulated rows."""
        if not hypothesis_ok:
            self.verdict = INCONCLUSIVE
        elif not self.rows:
            self.verdict = INCONCLUSIVE
        else:
            self.verdict = PASS if self.all_match() else FAIL
        return self

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "statement": self.statement,
            "instance": self.instance,
            "verdict": self.verdict,
            "window": self.window,
            "degrees": [r.to_dict() for r in self.rows if not _trivial_row(r)],
            "boundary_incomplete": [str(d) for d in self.boundary_incomplete],
            "caveats": list(self.caveats),
            "details": {k: _jsonable(v) for k, v in sorted(self.details.items())},
        }
        if include_timing:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


def _trivial_row(r: DegreeRow) -> bool:
    # sparse degree tables: drop matching all-zero comparisons
    return r.match and r.expected in (0, "0")


def _jsonable(v):
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items(), key=lambda t: str(t[0]))}
    return str(v)


def emit_report(results, fmt: str = "json", config: dict | None = None) -> bytes:
    """Serialize a result list; 'json' is byte-deterministic, 'text' is for humans."""
    config = config or {}
    if fmt == "json":
        doc = {
            "version": VERSION,
            "config": {k: _jsonable(v) for k, v in sorted(config.items())},
            "results": [_result_dict(r) for r in results],
        }
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    if fmt == "text":
        lines = [f"loccoh report (version {VERSION})"]
        for k, v in sorted(config.items()):
            lines.append(f"  config {k} = {v}")
        for r in results:
            if isinstance(r, VerificationReport):
                lines.append(f"[{r.verdict.upper():12s}] {r.statement}: {r.instance} ({r.wall_time_ms:.0f} ms)")
                for row in r.rows:
                    if not row.match:
                        lines.append(f"    MISMATCH at {row.degree}: expected {row.expected}, got {row.computed}")
                for c in r.caveats:
                    lines.append(f"    caveat: {c}")
            else:
                lines.append(str(_result_dict(r)))
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")


def _result_dict(r) -> dict:
    if isinstance(r, VerificationReport):
        return r.to_dict()
    if isinstance(r, dict):
        return {k: _jsonable(v) for k, v in sorted(r.items())}
    return {"value": _jsonable(r)}


def overall_verdict(results) -> str:
    """fail beats inconclusive beats pass; hypothesis-violated counts as
    inconclusive for exit-code purposes."""
    verdict = PASS
    saw_any = False
    for r in results:
        if not isinstance(r, VerificationReport):
            continue
        saw_any = True
        if r.verdict == FAIL:
            return FAIL
        if r.verdict != PASS:
            verdict = INCONCLUSIVE
    return verdict if saw_any else PASS
