"""Verification reports: per-check status, witnesses, deterministic serialization."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

__all__ = ["Check", "VerificationReport", "write_report"]

PASS, FAIL, SKIP = "pass", "fail", "skipped"


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    # Fractions and anything else exact: canonical string
    return str(x)


@dataclass
class Check:
    name: str
    status: str
    detail: Any = None
    witness: Any = None
    guard: Optional[str] = None

    def to_json_obj(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail is not None:
            out["detail"] = _jsonable(self.detail)
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.guard is not None:
            out["guard"] = self.guard
        return out


@dataclass
class VerificationReport:
    suite: str
    config: dict
    checks: List[Check] = field(default_factory=list)
    artifacts: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)

    def add(self, name: str, ok: bool, detail: Any = None, witness: Any = None) -> Check:
        c = Check(name, PASS if ok else FAIL, detail, None if ok else witness)
        self.checks.append(c)
        return c

    def skip(self, name: str, guard: str) -> Check:
        c = Check(name, SKIP, guard=guard)
        self.checks.append(c)
        return c

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json_obj(self, with_timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "config": self.config,
            "status": FAIL if self.failed else PASS,
            "checks": [c.to_json_obj() for c in self.checks],
            "artifacts": _jsonable(self.artifacts),
        }
        if with_timing:
            out["timing"] = {k: round(v, 3) for k, v in self.timing.items()}
        return out

    def to_json(self, with_timing: bool = False) -> str:
        return json.dumps(self.to_json_obj(with_timing), sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "status", "guard"])
        for c in self.checks:
            w.writerow([self.suite, c.name, c.status, c.guard or ""])
        return buf.getvalue()

    def summary_lines(self) -> List[str]:
        lines = [f"[{c.status.upper():7}] {self.suite}: {c.name}" + (f" (guard: {c.guard})" if c.guard else "")
                 for c in self.checks]
        lines.append(f"{self.suite}: {'FAIL' if self.failed else 'PASS'} "
                     f"({sum(c.status == PASS for c in self.checks)} pass, "
                     f"{sum(c.status == FAIL for c in self.checks)} fail, "
                     f"{sum(c.status == SKIP for c in self.checks)} skipped)")
        return lines


def write_report(text: str, out_dir: str, stem: str, ext: str) -> str:
    """Append-only write: an existing file with identical content is kept; a differing one gets a suffix."""
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{stem}.{ext}")
    k = 0
    while os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            if fh.read() == text:
                return path
        k += 1
        path = os.path.join(out_dir, f"{stem}.{k}.{ext}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
