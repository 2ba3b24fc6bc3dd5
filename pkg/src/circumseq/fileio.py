"""Deterministic readers and writers for point-sequence files.

Two formats carry identical point data: JSON ({"dim", "points", optional
"params", optional "analysis"}) and headerless CSV (one point per row).
Floats are always written with 17 significant digits, which round-trips
float64 exactly, so write -> read -> write is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InputFormatError

__all__ = [
    "PointsFile",
    "fmt_float",
    "points_csv",
    "read_points_file",
    "read_points_text",
    "sequence_json",
]


def fmt_float(x) -> str:
    return format(float(x), ".17g")


def _float_row(row) -> str:
    return ", ".join(fmt_float(c) for c in row)


def sequence_json(dim: int, points, params=None, analysis=None) -> str:
    """Canonical JSON text for a sequence file.

    ``analysis``, when given, is a mapping with keys r (float), v (vector),
    period (int or None), residual (float).
    """
    pts = np.asarray(points, dtype=float)
    entries = [("dim", str(int(dim)))]
    rows = ",\n".join("    [" + _float_row(row) + "]" for row in pts)
    entries.append(("points", "[\n" + rows + "\n  ]"))
    if params is not None:
        entries.append(("params", "[" + _float_row(np.asarray(params, dtype=float)) + "]"))
    if analysis is not None:
        period = analysis["period"]
        rendered = (
            '{"r": ' + fmt_float(analysis["r"])
            + ', "v": [' + _float_row(np.asarray(analysis["v"], dtype=float)) + "]"
            + ', "period": ' + ("null" if period is None else str(int(period)))
            + ', "residual": ' + fmt_float(analysis["residual"]) + "}"
        )
        entries.append(("analysis", rendered))
    body = ",\n".join(f'  "{key}": {value}' for key, value in entries)
    return "{\n" + body + "\n}\n"


def points_csv(points, header: bool = False) -> str:
    """CSV text, one point per row, no header unless asked."""
    pts = np.asarray(points, dtype=float)
    lines = []
    if header:
        lines.append(",".join(f"x{i + 1}" for i in range(pts.shape[1])))
    lines.extend(",".join(fmt_float(c) for c in row) for row in pts)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PointsFile:
    dim: int
    points: np.ndarray
    params: np.ndarray | None
    analysis: dict | None


def _validate_points(rows) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"points are not a rectangular numeric table: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputFormatError("points must form a non-empty table")
    if not np.all(np.isfinite(arr)):
        raise InputFormatError("points contain non-finite values")
    return arr


def _read_json(text: str) -> PointsFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "points" not in obj:
        raise InputFormatError('JSON input must be an object with a "points" key')
    pts = _validate_points(obj["points"])
    dim = obj.get("dim", pts.shape[1])
    if not isinstance(dim, int) or dim != pts.shape[1]:
        raise InputFormatError(f'"dim" = {dim!r} does not match point width {pts.shape[1]}')
    params = None
    if obj.get("params") is not None:
        try:
            params = np.asarray(obj["params"], dtype=float).ravel()
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f'invalid "params": {exc}') from None
    analysis = obj.get("analysis")
    if analysis is not None and not isinstance(analysis, dict):
        raise InputFormatError('"analysis" must be an object')
    return PointsFile(dim=int(dim), points=pts, params=params, analysis=analysis)


def _read_csv(text: str) -> PointsFile:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        cells = [cell.strip() for cell in line.split(",")]
        try:
            rows.append([float(cell) for cell in cells])
        except ValueError:
            if lineno == 1:
                continue  # header row
            raise InputFormatError(f"line {lineno} is not numeric: {raw!r}") from None
    if not rows:
        raise InputFormatError("no data rows found")
    pts = _validate_points(rows)
    return PointsFile(dim=pts.shape[1], points=pts, params=None, analysis=None)


def read_points_text(text: str) -> PointsFile:
    """Parse JSON or CSV point data (sniffed from the leading character)."""
    stripped = text.lstrip()
    if not stripped:
        raise InputFormatError("empty input")
    if stripped[0] in "{[":
        return _read_json(text)
    return _read_csv(text)


def read_points_file(path) -> PointsFile:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None
    return read_points_text(text)
