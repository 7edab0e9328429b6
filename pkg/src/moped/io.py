"""CSV ingestion and JSON/CSV result serialisation."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .detector import ChangePointSet, DetectorTrace
from .errors import EmptyData, InvalidSpec, MalformedCsv, ParseError


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def ingest_csv(path, stride: int = 1) -> np.ndarray:
    """Read a rectangular numeric CSV, keeping every ``stride``-th row.

    A first row containing any non-numeric cell is treated as a header.
    """
    if stride < 1:
        raise InvalidSpec(f"stride must be positive, got {stride}")
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
        first_line = 2
    else:
        first_line = 1
    if not rows:
        raise EmptyData(f"{path}: no data rows")
    width = len(rows[0])
    out = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MalformedCsv(
                f"{path}: line {i + first_line} has {len(row)} fields, expected {width}"
            )
        for j, cell in enumerate(row):
            try:
                out[i, j] = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: non-numeric value {cell!r} at line {i + first_line}, column {j + 1}",
                    row=i + first_line,
                    column=j + 1,
                ) from None
    return out[::stride]


def write_matrix_csv(path, values, header=None) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header is not None:
            w.writerow(header)
        for row in np.asarray(values):
            w.writerow([format(float(v), ".17g") for v in row])


def write_trace_csv(path, trace: DetectorTrace) -> None:
    """Two columns ``t, T``, one row per location ``G..n-G``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "T"])
        for t, v in zip(trace.times, trace.values):
            w.writerow([int(t), format(float(v), ".17g")])


def trace_path(output, G: int, k: int) -> Path:
    output = Path(output)
    return output.with_name(f"{output.stem}_trace_G{G}_k{k}.csv")


def changes_to_records(changes: ChangePointSet) -> list[dict]:
    return [
        {"tau": c.tau, "height": c.height, "p_value": c.p_value, "G": c.G, "k": c.k}
        for c in changes
    ]


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def read_change_points(path) -> tuple[list[int], int | None]:
    """Change locations and (if recorded) series length from a JSON file.

    Accepts a bare list of integers, or an object whose ``change_points`` is a
    list of integers or of records with a ``tau`` field.
    """
    obj = json.loads(Path(path).read_text())
    n = None
    if isinstance(obj, dict):
        n = obj.get("n")
        obj = obj.get("change_points", [])
    taus = [int(c["tau"]) if isinstance(c, dict) else int(c) for c in obj]
    return sorted(taus), n
