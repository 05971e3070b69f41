"""Tabular input/output and the embedded Sleep dataset."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError

__all__ = [
    "Dataset",
    "parse_csv",
    "read_csv_text",
    "write_csv",
    "embedded_sleep",
    "format_value",
    "records_to_csv",
    "parse_records_csv",
]


@dataclass(frozen=True)
class Dataset:
    columns: dict[str, np.ndarray]

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise DataError(f"columns have unequal lengths: {sorted(lengths)}")

    @property
    def n(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def __getitem__(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise DataError(f"no column named {name!r}; have {self.names}") from None


_INF_TOKENS = {"Inf": math.inf, "+Inf": math.inf, "-Inf": -math.inf}


def _parse_cell(cell: str, row: int, col: str) -> float:
    token = cell.strip()
    if token in _INF_TOKENS:
        return _INF_TOKENS[token]
    try:
        value = float(token)
    except ValueError:
        raise DataError(f"row {row}, column {col!r}: invalid cell {cell!r}") from None
    # float() also accepts nan/inf spellings that are not part of the format
    if not math.isfinite(value):
        raise DataError(f"row {row}, column {col!r}: invalid cell {cell!r}")
    return value


def read_csv_text(text: str) -> Dataset:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty file") from None
    names = [h.strip() for h in header]
    if not names or any(not h for h in names):
        raise DataError(f"malformed header: {header!r}")
    if len(set(names)) != len(names):
        raise DataError(f"duplicate column names in header: {names}")
    values: list[list[float]] = [[] for _ in names]
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(names):
            raise DataError(f"row {lineno} has {len(row)} cells, expected {len(names)}")
        for j, cell in enumerate(row):
            values[j].append(_parse_cell(cell, lineno, names[j]))
    return Dataset({name: np.asarray(v, dtype=np.float64) for name, v in zip(names, values)})


def parse_csv(path) -> Dataset:
    """Read a UTF-8 CSV with a header row into a :class:`Dataset`.

    Cells must be decimal numbers or the tokens ``Inf`` / ``-Inf``.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    return read_csv_text(text)


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "Inf" if v > 0 else "-Inf"
        # repr is the shortest string that round-trips exactly
        return repr(v)
    return str(v)


def write_csv(dataset: Dataset, path) -> None:
    Path(path).write_text(records_to_csv(
        [dict(zip(dataset.names, row)) for row in zip(*dataset.columns.values())],
        dataset.names,
    ), encoding="utf-8")


def records_to_csv(records: list[dict], fieldnames: list[str] | None = None) -> str:
    if fieldnames is None:
        fieldnames = list(records[0]) if records else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for rec in records:
        writer.writerow([format_value(rec.get(f)) for f in fieldnames])
    return buf.getvalue()


def _parse_any(token: str):
    if token == "":
        return None
    if token in ("true", "false"):
        return token == "true"
    if token in _INF_TOKENS:
        return _INF_TOKENS[token]
    for conv in (int, float):
        try:
            return conv(token)
        except ValueError:
            pass
    return token


def parse_records_csv(text: str) -> list[dict]:
    """Inverse of :func:`records_to_csv` for mixed text/numeric result tables."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return []
    header = rows[0]
    return [dict(zip(header, (_parse_any(c) for c in row))) for row in rows[1:] if row]


# Student's (1908) sleep data as distributed with R: extra hours of sleep for
# ten patients under each of two drugs.
_SLEEP_EXTRA = (
    0.7, -1.6, -0.2, -1.2, -0.1, 3.4, 3.7, 0.8, 0.0, 2.0,
    1.9, 0.8, 1.1, 0.1, -0.1, 4.4, 5.5, 1.6, 4.6, 3.4,
)
_SLEEP_GROUP = (1.0,) * 10 + (2.0,) * 10


def embedded_sleep() -> Dataset:
    """The 20-row Sleep dataset with columns ``extra`` and ``group`` (coded 1, 2)."""
    return Dataset({
        "extra": np.array(_SLEEP_EXTRA, dtype=np.float64),
        "group": np.array(_SLEEP_GROUP, dtype=np.float64),
    })
