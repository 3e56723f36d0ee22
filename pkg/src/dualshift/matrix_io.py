"""CSV + JSON sidecar dumps of labelled operator matrices.

The CSV lists every entry, row-major, with header ``row_label,col_label,re,im``;
floats use ``repr`` so output is byte-identical for identical inputs.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

import numpy as np

from .dual import OperatorMatrix
from .report import _jsonable


def matrix_csv(op: OperatorMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row_label", "col_label", "re", "im"])
    for i, r in enumerate(op.row_labels):
        for j, c in enumerate(op.col_labels):
            x = complex(op.entries[i, j])
            # normalise -0.0 so that sign-of-zero noise never changes the bytes
            w.writerow([r, c, repr(x.real + 0.0), repr(x.imag + 0.0)])
    return buf.getvalue()


def sidecar(op: OperatorMatrix, meta: dict[str, Any]) -> dict[str, Any]:
    out = {
        "row_labels": list(op.row_labels),
        "col_labels": list(op.col_labels),
        "interior_cols": list(op.interior_cols),
        "domain": op.domain,
        "codomain": op.codomain,
        "shape": list(op.shape),
    }
    out.update(_jsonable(meta))
    return out


def write_matrix(op: OperatorMatrix, out: str | Path, meta: dict[str, Any] | None = None
                 ) -> tuple[Path, Path]:
    """Write ``<out>.csv`` and ``<out>.json`` (a trailing .csv on ``out`` is accepted)."""
    out = Path(out)
    if out.suffix == ".csv":
        out = out.with_suffix("")
    out.parent.mkdir(parents=True, exist_ok=True)
    csv_path, json_path = out.with_suffix(".csv"), out.with_suffix(".json")
    csv_path.write_text(matrix_csv(op), encoding="utf-8")
    json_path.write_text(json.dumps(sidecar(op, meta or {}), sort_keys=True, indent=2) + "\n",
                         encoding="utf-8")
    return csv_path, json_path


def read_matrix(csv_path: str | Path) -> tuple[np.ndarray, list[str], list[str]]:
    """Inverse of ``matrix_csv``: (entries, row_labels, col_labels)."""
    rows, cols, vals = [], [], {}
    with open(csv_path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            r, c = rec["row_label"], rec["col_label"]
            if r not in rows:
                rows.append(r)
            if c not in cols:
                cols.append(c)
            vals[r, c] = complex(float(rec["re"]), float(rec["im"]))
    m = np.array([[vals[r, c] for c in cols] for r in rows], dtype=complex)
    return m, rows, cols
