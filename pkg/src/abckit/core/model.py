"""Implicit-model interface consumed by the sampler."""
from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np


class SimulationError(RuntimeError):
    """A model run failed at the given parameter value (retryable)."""


@runtime_checkable
class ImplicitModel(Protocol):
    """A stochastic simulator: theta plus a stream in, summary vector out.

    Implementations must be picklable value objects (they are shipped to
    worker processes) and must draw randomness only from the generator they
    are handed.
    """

    param_names: tuple[str, ...]

    def simulate(self, theta: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        ...
