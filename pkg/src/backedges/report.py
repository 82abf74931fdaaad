"""Verification reports and serialization of results.

A report is a named suite of checks, each with an id, a one-line statement
of what was checked, a status, a witness payload and a timing.  Reports
serialize to a stable JSON shape; timings are zeroed unless explicitly
requested so identical runs produce byte-identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .core import OrderedGraph, Tournament
from .errors import UnsupportedFormat
from .textio import emit_dot, emit_ordered_text, emit_tournament_text


@dataclass
class Check:
    id: str
    statement: str
    status: str  # pass | fail | skipped
    witness: object = None
    elapsed_ms: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_document(self, *, timings: bool = False) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "seed": self.seed,
            "checks": [
                {
                    "id": c.id,
                    "statement": c.statement,
                    "status": c.status,
                    "witness": jsonable(c.witness),
                    "elapsed_ms": round(c.elapsed_ms, 3) if timings else 0,
                }
                for c in self.checks
            ],
        }

    def summary_lines(self) -> list[str]:
        return [f"[{c.status:>4}] {c.id}: {c.statement}" for c in self.checks]


def jsonable(value):
    """Best-effort conversion of witness payloads to JSON-safe values."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Tournament):
        return emit_tournament_text(value).replace("\n", " ").strip()
    if isinstance(value, OrderedGraph):
        return emit_ordered_text(value).replace("\n", " ").strip()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    return repr(value)


def emit(obj, fmt: str, *, timings: bool = False) -> bytes:
    """Serialize a report, tournament or ordered graph to the named format."""
    if fmt == "json":
        if isinstance(obj, VerificationReport):
            doc = obj.to_document(timings=timings)
        else:
            doc = jsonable(obj)
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt == "text":
        if isinstance(obj, Tournament):
            return emit_tournament_text(obj).encode()
        if isinstance(obj, OrderedGraph):
            return emit_ordered_text(obj).encode()
        if isinstance(obj, VerificationReport):
            status = "pass" if obj.passed else "fail"
            lines = [f"suite {obj.suite}: {status}"] + obj.summary_lines()
            return ("\n".join(lines) + "\n").encode()
        raise UnsupportedFormat(f"cannot emit {type(obj).__name__} as text")
    if fmt == "dot":
        if isinstance(obj, (Tournament, OrderedGraph)):
            return emit_dot(obj).encode()
        raise UnsupportedFormat(f"cannot emit {type(obj).__name__} as dot")
    raise UnsupportedFormat(f"unknown format {fmt!r}")
