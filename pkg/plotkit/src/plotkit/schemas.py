"""Validated readers for the engine's CSV outputs.

Each reader checks the exact column order and numeric content, reporting
the offending column or row in the error message. No computation happens
here beyond parsing.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

BANDS_HEADER = ("day", "q025", "q50", "q975")
TRACE_HEADER = (
    "iteration",
    "epsilon",
    "n_unique_particles",
    "mcmc_acceptance_rate",
    "r_mcmc_steps",
    "cumulative_simulations",
)
OBSERVED_HEADER = ("day", "volume_mm3")


class SchemaError(ValueError):
    """A CSV file does not conform to the documented schema."""


def _read_table(path, expected_header: tuple[str, ...], kind: str) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{kind} file {path} does not exist")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaError(f"{path}: empty {kind} file") from None
        if header != expected_header:
            unexpected = [c for c in header if c not in expected_header]
            missing = [c for c in expected_header if c not in header]
            parts = [f"{path}: {kind} header mismatch"]
            if missing:
                parts.append(f"missing column(s) {missing}")
            if unexpected:
                parts.append(f"unexpected column(s) {unexpected}")
            if not missing and not unexpected:
                parts.append(f"column order must be {list(expected_header)}")
            raise SchemaError("; ".join(parts))
        rows = []
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(expected_header):
                raise SchemaError(
                    f"{path}: row {row_no}: expected {len(expected_header)} "
                    f"fields, got {len(row)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise SchemaError(
                    f"{path}: row {row_no}: non-numeric value in {row!r}"
                ) from None
    if not rows:
        raise SchemaError(f"{path}: {kind} file has no data rows")
    return np.array(rows)


def read_bands(path) -> dict[str, np.ndarray]:
    """Predictive-bands table: day, q025, q50, q975."""
    table = _read_table(path, BANDS_HEADER, "bands")
    days = table[:, 0]
    if np.any(np.diff(days) <= 0):
        raise SchemaError(f"{path}: 'day' column must be strictly increasing")
    lower, median, upper = table[:, 1], table[:, 2], table[:, 3]
    if np.any(lower > median) or np.any(median > upper):
        raise SchemaError(
            f"{path}: quantile columns must satisfy q025 <= q50 <= q975"
        )
    return {"day": days, "q025": lower, "q50": median, "q975": upper}


def read_trace(path) -> dict[str, np.ndarray]:
    """Sampler trace table; epsilon must be positive and strictly decreasing."""
    table = _read_table(path, TRACE_HEADER, "trace")
    out = {name: table[:, i] for i, name in enumerate(TRACE_HEADER)}
    if np.any(out["epsilon"] <= 0):
        raise SchemaError(f"{path}: 'epsilon' column must be positive")
    if np.any(np.diff(out["epsilon"]) >= 0):
        raise SchemaError(f"{path}: 'epsilon' column must be strictly decreasing")
    return out


def read_observed(path) -> dict[str, np.ndarray]:
    """Observed trajectory table: day, volume_mm3."""
    table = _read_table(path, OBSERVED_HEADER, "observed-data")
    days = table[:, 0]
    if np.any(np.diff(days) <= 0):
        raise SchemaError(f"{path}: 'day' column must be strictly increasing")
    return {"day": days, "volume_mm3": table[:, 1]}
