"""Bit-exact file formats: dataset CSV, report JSON, and companion tables.

Floats are serialized with Python's shortest round-trip repr, so a write /
read cycle reproduces the in-memory values bit for bit.  All writes go
through a temp file in the target directory followed by an atomic rename.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .errors import InvalidParams
from .linalg import as_matrix, as_vector


def _fmt(v: float) -> str:
    return repr(float(v))


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_dataset_csv(path: str, x, y) -> None:
    """Write the dataset as ``x1,...,xp,y`` rows, LF-terminated, UTF-8."""
    x = as_matrix(x)
    y = as_vector(y)
    if y.shape[0] != x.shape[0]:
        raise InvalidParams("x and y row counts differ")
    p = x.shape[1]
    lines = [",".join([f"x{j + 1}" for j in range(p)] + ["y"])]
    for i in range(x.shape[0]):
        lines.append(",".join([_fmt(v) for v in x[i]] + [_fmt(y[i])]))
    _atomic_write_text(path, "\n".join(lines) + "\n")


def read_dataset_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read a dataset written by ``write_dataset_csv``."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        cols = header.split(",")
        if len(cols) < 2 or cols[-1] != "y" or cols[:-1] != [
            f"x{j + 1}" for j in range(len(cols) - 1)
        ]:
            raise InvalidParams(f"unexpected dataset header {header!r} in {path}")
        rows = []
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(cols):
                raise InvalidParams(f"{path}:{lineno}: expected {len(cols)} fields")
            try:
                rows.append([float(v) for v in parts])
            except ValueError:
                raise InvalidParams(f"{path}:{lineno}: non-numeric field") from None
    if not rows:
        raise InvalidParams(f"{path} contains no data rows")
    data = np.array(rows)
    return data[:, :-1], data[:, -1]


def write_report_json(path: str, report: dict) -> None:
    _atomic_write_text(path, json.dumps(report, indent=2, sort_keys=False) + "\n")


def read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidParams(f"{path} is not valid JSON: {exc}") from None


def write_table_csv(path: str, header: list[str], rows: list[list]) -> None:
    """Companion CSV table (one row per record, shortest-repr floats)."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
        )
    _atomic_write_text(path, "\n".join(lines) + "\n")
