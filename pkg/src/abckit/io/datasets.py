"""Observed-dataset CSV ingestion."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from ..core.dataset import Dataset

DATASET_HEADER = ("day", "volume_mm3")


class DatasetError(ValueError):
    """Malformed or inconsistent observed-data file."""


def load_dataset(path) -> Dataset:
    """Read a (day, volume_mm3) CSV with validation.

    Days must be strictly increasing and volumes non-negative; problems are
    reported with their row number (header is row 1).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read dataset {path}: {exc}") from None
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DatasetError(f"{path}: file is empty")
    header = tuple(part.strip() for part in lines[0].split(","))
    if header != DATASET_HEADER:
        raise DatasetError(
            f"{path}: header must be 'day,volume_mm3', got {lines[0]!r}"
        )
    if len(lines) == 1:
        raise DatasetError(f"{path}: no data rows")
    days = []
    volumes = []
    for row_no, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise DatasetError(f"{path}: row {row_no}: expected 2 fields, got {len(parts)}")
        try:
            day = float(parts[0])
            volume = float(parts[1])
        except ValueError:
            raise DatasetError(f"{path}: row {row_no}: non-numeric value in {line!r}") from None
        if not np.isfinite(day) or not np.isfinite(volume):
            raise DatasetError(f"{path}: row {row_no}: non-finite value")
        if days and day <= days[-1]:
            raise DatasetError(
                f"{path}: row {row_no}: days must be strictly increasing "
                f"({day} after {days[-1]})"
            )
        if volume < 0:
            raise DatasetError(f"{path}: row {row_no}: negative volume {volume}")
        days.append(day)
        volumes.append(volume)
    return Dataset(np.array(days), np.array(volumes))
