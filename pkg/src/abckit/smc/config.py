"""Sampler configuration and per-iteration diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SmcConfig:
    """Tuning knobs for the replenishment sampler.

    ``alpha`` is the quantile used to shrink the tolerance each iteration;
    ``mcmc_tuning_c`` sets how surely a duplicated particle must move during
    its MCMC pass (the step count is chosen so a stuck particle moves at
    least once with probability 1 - c).
    """

    n_particles: int = 1000
    alpha: float = 0.5
    target_epsilon: float | None = None
    max_simulations: int = 100_000
    acceptance_floor: float = 0.01
    mcmc_tuning_c: float = 0.01
    r_max: int = 500
    initial_acceptance: float = 0.5
    move_retained: bool = False
    init_retry_limit: int = 100

    def __post_init__(self):
        problems = self.validate()
        if problems:
            raise ValueError("invalid SmcConfig: " + "; ".join(problems))

    def validate(self) -> list[str]:
        problems = []
        if self.n_particles < 10:
            problems.append(f"n_particles must be >= 10, got {self.n_particles}")
        if not 0.0 < self.alpha < 1.0:
            problems.append(f"alpha must be in (0,1), got {self.alpha}")
        elif math.floor(self.alpha * self.n_particles) < 1:
            problems.append("n_particles * alpha must be >= 1 after rounding")
        if self.target_epsilon is not None and not self.target_epsilon >= 0.0:
            problems.append(f"target_epsilon must be >= 0, got {self.target_epsilon}")
        if self.max_simulations < self.n_particles:
            problems.append(
                f"max_simulations ({self.max_simulations}) must be >= n_particles"
            )
        if not 0.0 < self.acceptance_floor < 1.0:
            problems.append(f"acceptance_floor must be in (0,1), got {self.acceptance_floor}")
        if not 0.0 < self.mcmc_tuning_c < 1.0:
            problems.append(f"mcmc_tuning_c must be in (0,1), got {self.mcmc_tuning_c}")
        if self.r_max < 1:
            problems.append(f"r_max must be >= 1, got {self.r_max}")
        if not 0.0 < self.initial_acceptance <= 1.0:
            problems.append(f"initial_acceptance must be in (0,1], got {self.initial_acceptance}")
        if self.init_retry_limit < 1:
            problems.append(f"init_retry_limit must be >= 1, got {self.init_retry_limit}")
        return problems

    @property
    def n_retained(self) -> int:
        return math.floor(self.alpha * self.n_particles)


@dataclass(frozen=True)
class TraceRecord:
    """One sampler iteration (iteration 0 is initialization)."""

    iteration: int
    epsilon: float
    n_unique: int
    acceptance_rate: float
    r_steps: int
    cumulative_simulations: int


class RunTrace:
    """Ordered iteration records plus the final stop reason."""

    def __init__(self):
        self.records: list[TraceRecord] = []
        self.stop_reason: str | None = None

    def append(self, record: TraceRecord) -> None:
        if self.records:
            last = self.records[-1]
            if record.epsilon >= last.epsilon:
                raise AssertionError(
                    f"epsilon must strictly decrease: {last.epsilon} -> {record.epsilon}"
                )
            if record.cumulative_simulations < last.cumulative_simulations:
                raise AssertionError("cumulative_simulations must be non-decreasing")
            if record.iteration != last.iteration + 1:
                raise AssertionError("iterations must be consecutive")
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def total_simulations(self) -> int:
        return self.records[-1].cumulative_simulations if self.records else 0

    @property
    def final_epsilon(self) -> float:
        return self.records[-1].epsilon if self.records else math.inf
