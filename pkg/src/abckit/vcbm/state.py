"""Tissue state: cell positions, kinds, ages, and Delaunay neighbourhood."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import VcbmConfig, VcbmParams
from .geometry import GeometryError, Neighbourhood, triangulate

CANCER = 1
HEALTHY = 0


@dataclass(frozen=True)
class TissueState:
    positions: np.ndarray = field(compare=False)  # (n, 2) float64
    kinds: np.ndarray = field(compare=False)      # (n,) int8, CANCER or HEALTHY
    ages: np.ndarray = field(compare=False)       # (n,) float64, timesteps
    neighbourhood: Neighbourhood = field(compare=False)

    def __post_init__(self):
        positions = np.ascontiguousarray(self.positions, dtype=np.float64)
        kinds = np.ascontiguousarray(self.kinds, dtype=np.int8)
        ages = np.ascontiguousarray(self.ages, dtype=np.float64)
        n = positions.shape[0]
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise ValueError(f"positions must be (n, 2), got {positions.shape}")
        if kinds.shape != (n,) or ages.shape != (n,):
            raise ValueError("kinds and ages must match the number of positions")
        if self.neighbourhood.n_points != n:
            raise ValueError("neighbourhood does not match the number of positions")
        for a in (positions, kinds, ages):
            a.flags.writeable = False
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "ages", ages)

    @property
    def n_cells(self) -> int:
        return int(self.positions.shape[0])

    def cancer_indices(self) -> np.ndarray:
        return np.flatnonzero(self.kinds == CANCER)

    def healthy_indices(self) -> np.ndarray:
        return np.flatnonzero(self.kinds == HEALTHY)

    @property
    def n_cancer(self) -> int:
        return int(np.count_nonzero(self.kinds == CANCER))


def hex_lattice_points(radius_shells: int, spacing: float) -> np.ndarray:
    """Triangular-lattice points filling a hexagon of the given shell radius.

    The hexagonal cut keeps every convex-hull edge at lattice spacing, so a
    freshly packed tissue is exactly at mechanical rest.
    """
    pts = []
    r = radius_shells
    for j in range(-r, r + 1):
        for i in range(-r, r + 1):
            if abs(i + j) > r:
                continue
            x = (i + 0.5 * j) * spacing
            y = j * (math.sqrt(3.0) / 2.0) * spacing
            pts.append((x, y))
    return np.array(pts, dtype=float)


def initial_state(params: VcbmParams, config: VcbmConfig,
                  rng: np.random.Generator) -> TissueState:
    """Seed tumour in hexagonal packing surrounded by a healthy annulus.

    The innermost ``initial_tumour_cells`` lattice sites become cancer
    cells; the remaining sites out to ``domain_half_width`` are healthy
    tissue. Cancer-cell ages start spread uniformly over
    [0, initial_age_spread * g_age] so division times desynchronise.
    """
    s = config.rest_length
    shells = int(math.ceil(config.domain_half_width / s))
    pts = hex_lattice_points(shells, s)
    r2 = np.einsum("ij,ij->i", pts, pts)
    # deterministic inside-out ordering: radius, then angle, then coords
    angle = np.arctan2(pts[:, 1], pts[:, 0])
    order = np.lexsort((pts[:, 1], pts[:, 0], angle, np.round(r2, 9)))
    pts = pts[order]

    n_cancer = config.initial_tumour_cells
    if n_cancer >= pts.shape[0]:
        raise ValueError(
            f"domain_half_width={config.domain_half_width} leaves no healthy "
            f"annulus around {n_cancer} tumour cells"
        )
    kinds = np.full(pts.shape[0], HEALTHY, dtype=np.int8)
    kinds[:n_cancer] = CANCER
    ages = np.zeros(pts.shape[0])
    spread = config.initial_age_spread * params.g_age
    if spread > 0.0:
        ages[:n_cancer] = rng.uniform(0.0, spread, size=n_cancer)
    return TissueState(pts, kinds, ages, triangulate(pts))


def pad_healthy_annulus(positions: np.ndarray, kinds: np.ndarray, ages: np.ndarray,
                        config: VcbmConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Add healthy rings until the outer boundary clears the tumour margin.

    Keeps the nearest-healthy-cell distance well-defined as the tumour
    expands, while bounding the number of cells simulated.
    """
    s = config.rest_length
    margin = config.boundary_margin * s
    radius = np.sqrt(np.einsum("ij,ij->i", positions, positions))
    cancer_r = radius[kinds == CANCER].max() if np.any(kinds == CANCER) else 0.0
    outer_r = radius.max()
    while outer_r - cancer_r < margin:
        ring_r = outer_r + s
        count = max(6, int(math.ceil(2.0 * math.pi * ring_r / s)))
        angles = 2.0 * math.pi * np.arange(count) / count
        ring = ring_r * np.column_stack([np.cos(angles), np.sin(angles)])
        positions = np.vstack([positions, ring])
        kinds = np.concatenate([kinds, np.full(count, HEALTHY, dtype=np.int8)])
        ages = np.concatenate([ages, np.zeros(count)])
        outer_r = ring_r
    return positions, kinds, ages


__all__ = [
    "CANCER",
    "HEALTHY",
    "GeometryError",
    "TissueState",
    "hex_lattice_points",
    "initial_state",
    "pad_healthy_annulus",
]
