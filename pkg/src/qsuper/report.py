"""Verification records and reports."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

REPORT_VERSION = "1.0"


@dataclass
class Record:
    """One checked identity.

    kind "identity" passes when the residual vanishes; kind "control" is a
    deliberately broken variant and passes when its residual does NOT vanish.
    """

    id: str
    residual_zero: bool
    kind: str = "identity"
    witness: Optional[dict] = None
    ms: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.residual_zero if self.kind == "identity" else not self.residual_zero

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        d: Dict[str, Any] = {"id": self.id, "status": self.status, "kind": self.kind,
                             "residual_zero": self.residual_zero}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        if timing:
            d["ms"] = round(self.ms, 3)
        return d


@dataclass
class VerificationReport:
    suite: str
    records: List[Record] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, record: Record) -> Record:
        self.records.append(record)
        return record

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.records.extend(other.records)
        return self

    def check(self, id: str, residual, kind: str = "identity", ms: float = 0.0, note: str = "") -> Record:
        """Record a residual object exposing is_zero() and witness()."""
        zero = residual.is_zero()
        wit = None if zero else _witness(residual)
        return self.add(Record(id, zero, kind, wit, ms, note))

    def __getitem__(self, id: str) -> Record:
        for r in self.records:
            if r.id == id:
                return r
        raise KeyError(id)

    def failures(self) -> List[Record]:
        return [r for r in self.records if not r.passed]

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        return {"suite": self.suite, "config": self.config,
                "results": [r.to_dict(timing) for r in self.records],
                "version": REPORT_VERSION}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.records:
            tag = " (control)" if r.kind == "control" else ""
            lines.append(f"  [{r.status}] {r.id}{tag}  {r.ms:.0f} ms")
            if r.witness and not r.passed:
                lines.append(f"      witness: {json.dumps(r.witness, sort_keys=True)}")
            if r.note:
                lines.append(f"      note: {r.note}")
        return "\n".join(lines)


def _witness(residual) -> Optional[dict]:
    fn = getattr(residual, "witness", None)
    if fn is None:
        return {"value": str(residual)}
    return fn()


@contextmanager
def timed() -> Iterator[Dict[str, float]]:
    box = {"ms": 0.0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = (time.perf_counter() - t0) * 1000.0


class Residual:
    """Adapter for scalar or composite residuals."""

    def __init__(self, zero: bool, witness: Optional[dict] = None):
        self._zero = zero
        self._witness = witness

    def is_zero(self) -> bool:
        return self._zero

    def witness(self) -> Optional[dict]:
        return self._witness
