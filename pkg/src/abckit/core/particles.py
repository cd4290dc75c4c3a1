"""Particles and populations carried by the sampler."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import ParamVector


@dataclass(frozen=True)
class Particle:
    """(theta, simulated summary, distance to observed summary)."""

    theta: ParamVector
    summary: np.ndarray = field(compare=False)
    distance: float

    def __post_init__(self):
        summary = np.array(self.summary, dtype=float).reshape(-1)
        summary.flags.writeable = False
        object.__setattr__(self, "summary", summary)
        if not (self.distance >= 0.0):
            raise ValueError(f"particle distance must be non-negative, got {self.distance}")


@dataclass(frozen=True)
class Population:
    """Fixed-size particle set with the current tolerance."""

    particles: tuple[Particle, ...]
    epsilon: float
    iteration: int = 0

    def __post_init__(self):
        particles = tuple(self.particles)
        if not particles:
            raise ValueError("population is empty")
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.iteration < 0:
            raise ValueError("iteration must be >= 0")
        object.__setattr__(self, "particles", particles)

    def __len__(self) -> int:
        return len(self.particles)

    @property
    def size(self) -> int:
        return len(self.particles)

    def distances(self) -> np.ndarray:
        return np.array([p.distance for p in self.particles])

    def theta_matrix(self) -> np.ndarray:
        return np.array([p.theta.values for p in self.particles])

    def param_names(self) -> tuple[str, ...]:
        return self.particles[0].theta.names

    def n_unique(self) -> int:
        return int(np.unique(self.theta_matrix(), axis=0).shape[0])

    def check_invariants(self) -> None:
        """Every distance within tolerance; all thetas share the same names."""
        names = self.param_names()
        for i, p in enumerate(self.particles):
            if p.theta.names != names:
                raise AssertionError(f"particle {i} has mismatched parameter names")
            if p.distance > self.epsilon:
                raise AssertionError(
                    f"particle {i} distance {p.distance} exceeds epsilon {self.epsilon}"
                )
