"""CSV loading and min-max normalization.

Dialect: first line is the header, comma separator, LF or CRLF endings, no
quoting (cells must not contain commas), decimal numerics with optional sign
and exponent.  A column named exactly ``target`` is split off and carried
along; it never influences scoring.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataFormatError

_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")

TARGET_COLUMN = "target"


def _freeze(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class Dataset:
    """Rectangular numeric table: feature columns plus an optional target."""

    feature_names: tuple[str, ...]
    rows: np.ndarray
    target: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        rows = _freeze(np.atleast_2d(self.rows))
        object.__setattr__(self, "rows", rows)
        if self.target is not None:
            object.__setattr__(self, "target", _freeze(self.target))
        if rows.shape[1] != len(self.feature_names):
            raise DataFormatError(
                f"{len(self.feature_names)} feature names but {rows.shape[1]} columns"
            )
        if rows.shape[0] < 1:
            raise DataFormatError("dataset must contain at least one row")
        if not np.all(np.isfinite(rows)):
            raise DataFormatError("dataset values must all be finite")

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    def column(self, i: int) -> np.ndarray:
        return self.rows[:, i]


@dataclass(frozen=True)
class NormalizedDataset(Dataset):
    """Dataset rescaled into [0, 1], keeping per-feature (min, max)."""

    ranges: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        object.__setattr__(
            self, "ranges", tuple((float(lo), float(hi)) for lo, hi in self.ranges)
        )
        if len(self.ranges) != self.n_features:
            raise DataFormatError("one (min, max) pair per feature required")
        if not np.all((self.rows >= 0.0) & (self.rows <= 1.0)):
            raise DataFormatError("normalized values must lie in [0, 1]")


def _parse_cell(cell: str, row_number: int, column_number: int, name: str) -> float:
    if not _NUMBER_RE.fullmatch(cell):
        raise DataFormatError(
            f"row {row_number}, column {column_number} ({name}): not a number: {cell!r}"
        )
    value = float(cell)
    if not math.isfinite(value):
        raise DataFormatError(
            f"row {row_number}, column {column_number} ({name}): value is not finite: {cell!r}"
        )
    return value


def load_table(path: str | Path, drop_incomplete_rows: bool = False) -> Dataset:
    """Parse a CSV file into a :class:`Dataset`.

    Missing (empty) cells are a hard error unless ``drop_incomplete_rows``
    is set, in which case the whole row is skipped.  Row and column numbers
    in diagnostics are 1-based; the header is row 1.
    """
    text = Path(path).read_bytes().decode("utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [line[:-1] if line.endswith("\r") else line for line in lines]
    if not lines:
        raise DataFormatError(f"{path}: empty file")

    names = [cell.strip() for cell in lines[0].split(",")]
    if any(name == "" for name in names):
        raise DataFormatError(f"{path}: header contains an empty column name")
    if len(set(names)) != len(names):
        duplicates = sorted({n for n in names if names.count(n) > 1})
        raise DataFormatError(f"{path}: duplicate header names {duplicates}")

    target_index = names.index(TARGET_COLUMN) if TARGET_COLUMN in names else None
    feature_names = [n for i, n in enumerate(names) if i != target_index]
    if not feature_names:
        raise DataFormatError(f"{path}: no feature columns besides {TARGET_COLUMN!r}")

    rows: list[list[float]] = []
    targets: list[float] = []
    for offset, line in enumerate(lines[1:]):
        row_number = offset + 2
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != len(names):
            raise DataFormatError(
                f"{path}: row {row_number}: expected {len(names)} cells, got {len(cells)}"
            )
        if any(cell == "" for cell in cells):
            if drop_incomplete_rows:
                continue
            column_number = cells.index("") + 1
            raise DataFormatError(
                f"{path}: row {row_number}, column {column_number}: missing value"
            )
        parsed = [
            _parse_cell(cell, row_number, i + 1, names[i]) for i, cell in enumerate(cells)
        ]
        if target_index is not None:
            targets.append(parsed.pop(target_index))
        rows.append(parsed)

    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    return Dataset(
        feature_names=tuple(feature_names),
        rows=np.asarray(rows, dtype=float),
        target=np.asarray(targets, dtype=float) if target_index is not None else None,
    )


def normalize(dataset: Dataset) -> NormalizedDataset:
    """Min-max rescale each feature into [0, 1].

    Constant columns carry no ordering information and map to 0.5
    everywhere, which scores as the neutral midpoint downstream.
    """
    columns = []
    ranges = []
    for i in range(dataset.n_features):
        column = dataset.column(i)
        lo, hi = float(column.min()), float(column.max())
        ranges.append((lo, hi))
        if hi == lo:
            columns.append(np.full_like(column, 0.5))
        else:
            columns.append((column - lo) / (hi - lo))
    return NormalizedDataset(
        feature_names=dataset.feature_names,
        rows=np.column_stack(columns),
        target=dataset.target,
        ranges=tuple(ranges),
    )
