"""Verification reports: one named check, its residual, and whether it passed."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class VerificationReport:
    check_name: str
    params: dict[str, Any]
    residual: float
    tolerance: float
    passed: bool = field(init=False)
    runtime_ms: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.residual = float(self.residual)
        self.tolerance = float(self.tolerance)
        self.passed = bool(self.residual <= self.tolerance)

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "check_name": self.check_name,
            "params": _jsonable(self.params),
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "details": _jsonable(self.details),
        }
        if timing:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=False)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.check_name}: residual={self.residual:.3e} tol={self.tolerance:.1e}"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.generic):
        return x.item()
    if hasattr(x, "descriptor"):
        return x.descriptor()
    return x


@contextmanager
def timed():
    """Yield a one-element list that receives the elapsed time in ms."""
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - t0) * 1e3
