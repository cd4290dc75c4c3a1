"""Observed or simulated tumour-volume time series."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Dataset:
    """(day, volume) rows with strictly increasing days and volumes >= 0."""

    days: np.ndarray = field(compare=False)
    volumes: np.ndarray = field(compare=False)

    def __post_init__(self):
        days = np.array(self.days, dtype=float).reshape(-1)
        volumes = np.array(self.volumes, dtype=float).reshape(-1)
        if days.size == 0:
            raise ValueError("dataset is empty")
        if days.size != volumes.size:
            raise ValueError(f"{days.size} days but {volumes.size} volumes")
        if not np.all(np.isfinite(days)) or not np.all(np.isfinite(volumes)):
            raise ValueError("dataset contains non-finite values")
        if np.any(np.diff(days) <= 0):
            bad = int(np.argmax(np.diff(days) <= 0)) + 2
            raise ValueError(f"days must be strictly increasing (violated at row {bad})")
        if np.any(volumes < 0):
            bad = int(np.argmax(volumes < 0)) + 1
            raise ValueError(f"volumes must be non-negative (violated at row {bad})")
        days.flags.writeable = False
        volumes.flags.writeable = False
        object.__setattr__(self, "days", days)
        object.__setattr__(self, "volumes", volumes)

    def __len__(self) -> int:
        return int(self.days.size)

    def summary(self) -> np.ndarray:
        """Summary statistic: the raw volume vector at observation times."""
        return self.volumes

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return np.array_equal(self.days, other.days) and np.array_equal(
            self.volumes, other.volumes
        )


def align_to_grid(sim_days: np.ndarray, sim_volumes: np.ndarray, obs_days: np.ndarray) -> np.ndarray:
    """Volumes of a simulated trajectory interpolated onto the observed grid.

    Linear interpolation keeps the distance well-defined when the two time
    grids differ; outside the simulated range the endpoint values are held.
    """
    return np.interp(np.asarray(obs_days, dtype=float),
                     np.asarray(sim_days, dtype=float),
                     np.asarray(sim_volumes, dtype=float))
