"""Full tumour-growth simulation and the sampler-facing model adapter."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.dataset import Dataset
from .config import VcbmConfig, VcbmParams
from .growth import step
from .state import TissueState, initial_state
from .volume import tumour_volume

# A simulated trajectory has the same shape and invariants as an observed one.
TumourTrajectory = Dataset


def _measurement_steps(days: float, measurement_days, steps_per_day: int) -> list[tuple[float, int]]:
    out = []
    for day in measurement_days:
        day = float(day)
        if not 0.0 <= day <= days:
            raise ValueError(f"measurement day {day} outside [0, {days}]")
        steps = day * steps_per_day
        if abs(steps - round(steps)) > 1e-9:
            raise ValueError(
                f"measurement day {day} does not fall on the timestep grid "
                f"({steps_per_day} steps per day)"
            )
        out.append((day, int(round(steps))))
    if not out:
        raise ValueError("at least one measurement day is required")
    days_only = [d for d, _ in out]
    if sorted(days_only) != days_only or len(set(days_only)) != len(days_only):
        raise ValueError("measurement days must be strictly increasing")
    return out


def simulate(params: VcbmParams, config: VcbmConfig, days: float,
             measurement_days, rng: np.random.Generator,
             record_states: bool = False):
    """Grow a tumour for the given horizon, recording caliper volumes.

    Returns a TumourTrajectory over the measurement days; with
    ``record_states`` also returns the tissue state at each measurement.
    """
    total_steps = days * config.steps_per_day
    if abs(total_steps - round(total_steps)) > 1e-9:
        raise ValueError(
            f"horizon of {days} days does not fall on the timestep grid"
        )
    total_steps = int(round(total_steps))
    marks = _measurement_steps(days, measurement_days, config.steps_per_day)

    state = initial_state(params, config, rng)
    by_step = {s: d for d, s in marks}
    volumes: list[float] = []
    days_out: list[float] = []
    states: list[TissueState] = []
    if 0 in by_step:
        days_out.append(by_step[0])
        volumes.append(tumour_volume(state, config))
        if record_states:
            states.append(state)
    for k in range(1, total_steps + 1):
        state = step(state, params, config, rng)
        if k in by_step:
            days_out.append(by_step[k])
            volumes.append(tumour_volume(state, config))
            if record_states:
                states.append(state)
    trajectory = TumourTrajectory(np.array(days_out), np.array(volumes))
    if record_states:
        return trajectory, states
    return trajectory


@dataclass(frozen=True)
class VcbmModel:
    """Implicit-model adapter: theta -> volume vector on the measurement grid.

    Measurement days that fall off the timestep grid are served by
    simulating with daily recording and interpolating linearly onto the
    requested grid.
    """

    config: VcbmConfig
    days: float
    measurement_days: tuple[float, ...]

    param_names: tuple[str, ...] = VcbmParams.PARAM_NAMES

    def _on_grid(self) -> bool:
        spd = self.config.steps_per_day
        return all(
            abs(d * spd - round(d * spd)) <= 1e-9 for d in self.measurement_days
        )

    def simulate(self, theta: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        params = VcbmParams.from_values(theta)
        if self._on_grid():
            trajectory = simulate(params, self.config, self.days, self.measurement_days, rng)
            return trajectory.volumes
        from ..core.dataset import align_to_grid

        horizon = float(np.ceil(self.days))
        daily = tuple(float(d) for d in range(int(horizon) + 1))
        trajectory = simulate(params, self.config, horizon, daily, rng)
        return align_to_grid(trajectory.days, trajectory.volumes,
                             np.asarray(self.measurement_days, dtype=float))
