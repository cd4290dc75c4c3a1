"""Tumour model parameters and simulator configuration."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class VcbmParams:
    """Calibrated parameters: (p0, p_psc, d_max, g_age).

    p0 is the boundary proliferation probability per timestep, p_psc the
    per-timestep invasion probability, d_max the maximum depth (in cell
    diameters) at which a cell can still divide, g_age the waiting time (in
    timesteps) before a cell becomes eligible to divide.
    """

    p0: float
    p_psc: float
    d_max: float
    g_age: float

    def __post_init__(self):
        if not 0.0 <= self.p0 <= 1.0:
            raise ValueError(f"p0 must be in [0,1], got {self.p0}")
        if not 0.0 <= self.p_psc <= 1.0:
            raise ValueError(f"p_psc must be in [0,1], got {self.p_psc}")
        if not self.d_max > 0.0:
            raise ValueError(f"d_max must be positive, got {self.d_max}")
        if not self.g_age > 0.0:
            raise ValueError(f"g_age must be positive, got {self.g_age}")

    PARAM_NAMES = ("p0", "p_psc", "d_max", "g_age")

    @classmethod
    def from_values(cls, values) -> "VcbmParams":
        p0, p_psc, d_max, g_age = (float(v) for v in values)
        return cls(p0, p_psc, d_max, g_age)


@dataclass(frozen=True)
class VcbmConfig:
    """Mechanical and bookkeeping constants the growth parameters sit on.

    Distances are in rest-length units (one cell diameter); time is in
    timesteps of dt days with dt * steps_per_day = 1 day exactly. The
    overdamped update needs spring_constant * dt <= 0.1 for stability.
    """

    steps_per_day: int = 24
    dt: float | None = None  # derived as 1 / steps_per_day when omitted
    spring_constant: float = 2.0
    rest_length: float = 1.0
    initial_tumour_cells: int = 37
    domain_half_width: float = 12.0
    cell_cycle_jitter: float = 0.0
    initial_age_spread: float = 1.0
    cell_diameter_mm: float = 0.02
    volume_formula: str = "caliper"
    # forces act only between near neighbours; the second-nearest packing
    # distance is sqrt(3), so 1.5 silences convex-hull sliver edges while
    # keeping every genuine spring
    edge_cap_factor: float = 1.5
    boundary_margin: float = 2.0
    max_cells: int = 50_000

    def __post_init__(self):
        if self.steps_per_day < 1:
            raise ValueError(f"steps_per_day must be >= 1, got {self.steps_per_day}")
        if self.dt is None:
            object.__setattr__(self, "dt", 1.0 / self.steps_per_day)
        elif abs(self.dt * self.steps_per_day - 1.0) > 1e-9:
            raise ValueError(
                f"dt * steps_per_day must equal one day exactly, "
                f"got {self.dt} * {self.steps_per_day}"
            )
        if self.spring_constant <= 0.0:
            raise ValueError(f"spring_constant must be positive, got {self.spring_constant}")
        if self.spring_constant * self.dt > 0.1 + 1e-12:
            raise ValueError(
                f"spring_constant * dt = {self.spring_constant * self.dt:.4g} "
                "exceeds the 0.1 stability bound"
            )
        if self.rest_length <= 0.0:
            raise ValueError(f"rest_length must be positive, got {self.rest_length}")
        if self.initial_tumour_cells < 1:
            raise ValueError(
                f"initial_tumour_cells must be >= 1, got {self.initial_tumour_cells}"
            )
        if self.domain_half_width <= 0.0:
            raise ValueError(f"domain_half_width must be positive, got {self.domain_half_width}")
        if self.cell_cycle_jitter < 0.0:
            raise ValueError(f"cell_cycle_jitter must be >= 0, got {self.cell_cycle_jitter}")
        if not 0.0 <= self.initial_age_spread <= 1.0:
            raise ValueError(
                f"initial_age_spread must be in [0,1], got {self.initial_age_spread}"
            )
        if self.cell_diameter_mm <= 0.0:
            raise ValueError(f"cell_diameter_mm must be positive, got {self.cell_diameter_mm}")
        if self.volume_formula not in ("caliper", "ellipsoid"):
            raise ValueError(
                f"volume_formula must be 'caliper' or 'ellipsoid', got {self.volume_formula!r}"
            )
        if self.edge_cap_factor <= 1.0:
            raise ValueError(f"edge_cap_factor must exceed 1, got {self.edge_cap_factor}")
        if self.boundary_margin <= 0.0:
            raise ValueError(f"boundary_margin must be positive, got {self.boundary_margin}")
        if self.max_cells < self.initial_tumour_cells:
            raise ValueError("max_cells must be at least initial_tumour_cells")
