"""On-disk outputs: CSV files and run metadata.

All floats are serialised with shortest round-trip representation (17
significant digits where needed) so determinism checks can compare bytes.
CSV rows use CRLF line endings per RFC 4180.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from ..core.dataset import Dataset
from ..core.particles import Population
from ..smc.config import RunTrace

TRACE_COLUMNS = (
    "iteration",
    "epsilon",
    "n_unique_particles",
    "mcmc_acceptance_rate",
    "r_mcmc_steps",
    "cumulative_simulations",
)
BANDS_COLUMNS = ("day", "q025", "q50", "q975")
DRAWS_COLUMNS = ("draw", "day", "value")
TRAJECTORY_COLUMNS = ("day", "volume_mm3")


def fmt(value) -> str:
    """Shortest exact decimal form of a float; integers stay integral."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_population_csv(path, population: Population) -> None:
    """One row per particle: named theta components then its distance."""
    names = population.param_names()
    rows = [
        [fmt(v) for v in p.theta.values] + [fmt(p.distance)]
        for p in population.particles
    ]
    _write_csv(Path(path), list(names) + ["distance"], rows)


def write_trace_csv(path, trace: RunTrace) -> None:
    rows = [
        [
            fmt(r.iteration),
            fmt(r.epsilon),
            fmt(r.n_unique),
            fmt(r.acceptance_rate),
            fmt(r.r_steps),
            fmt(r.cumulative_simulations),
        ]
        for r in trace
    ]
    _write_csv(Path(path), TRACE_COLUMNS, rows)


def write_trajectory_csv(path, trajectory: Dataset) -> None:
    rows = [[fmt(d), fmt(v)] for d, v in zip(trajectory.days, trajectory.volumes)]
    _write_csv(Path(path), TRAJECTORY_COLUMNS, rows)


def write_bands_csv(path, days, bands: dict) -> None:
    rows = [
        [fmt(day), fmt(bands["q025"][i]), fmt(bands["q50"][i]), fmt(bands["q975"][i])]
        for i, day in enumerate(days)
    ]
    _write_csv(Path(path), BANDS_COLUMNS, rows)


def write_draws_csv(path, days, draws: np.ndarray) -> None:
    rows = [
        [fmt(j), fmt(day), fmt(draws[j, i])]
        for j in range(draws.shape[0])
        for i, day in enumerate(days)
    ]
    _write_csv(Path(path), DRAWS_COLUMNS, rows)


def write_positions_csv(path, day_states) -> None:
    """Debug dump: cell positions/kinds/ages at each recorded day."""
    rows = []
    for day, state in day_states:
        for i in range(state.n_cells):
            rows.append([
                fmt(day), fmt(i),
                fmt(state.positions[i, 0]), fmt(state.positions[i, 1]),
                "cancer" if state.kinds[i] == 1 else "healthy",
                fmt(state.ages[i]),
            ])
    _write_csv(Path(path), ("day", "cell", "x", "y", "kind", "age"), rows)


def write_metadata(path, metadata: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_metadata(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def read_population_csv(path, expected_names: tuple[str, ...]):
    """Parse a population file back into (theta matrix, distances).

    The header must carry exactly the expected parameter names followed by
    'distance'; a mismatch means the population was produced by a different
    model.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise ValueError(f"{path}: empty population file") from None
        expected = tuple(expected_names) + ("distance",)
        if header != expected:
            raise ValueError(
                f"{path}: population header {header} does not match the "
                f"configured model's parameters {expected}"
            )
        thetas = []
        distances = []
        for row in reader:
            if not row:
                continue
            values = [float(v) for v in row]
            thetas.append(values[:-1])
            distances.append(values[-1])
    if not thetas:
        raise ValueError(f"{path}: population file has no particles")
    return np.array(thetas), np.array(distances)
