"""Proliferation, invasion, and the single-timestep update."""
from __future__ import annotations

import numpy as np

from ..core.model import SimulationError
from .config import VcbmConfig, VcbmParams
from .geometry import GeometryError, triangulate
from .mechanics import spring_displacements
from .state import CANCER, HEALTHY, TissueState, pad_healthy_annulus


def proliferation_probability(d: float, p0: float, d_max: float) -> float:
    """P = p0 (1 - d/d_max), clamped below at zero.

    Cells deeper than d_max cannot divide; a boundary cell (d = 0) divides
    with the full probability p0 per timestep.
    """
    if d < 0.0:
        raise ValueError(f"boundary distance must be >= 0, got {d}")
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must be in [0,1], got {p0}")
    if d_max <= 0.0:
        raise ValueError(f"d_max must be positive, got {d_max}")
    return max(0.0, p0 * (1.0 - d / d_max))


def boundary_distance(cell_index: int, state: TissueState) -> float:
    """Distance from a cancer cell centre to the nearest healthy cell centre."""
    if state.kinds[cell_index] != CANCER:
        raise ValueError(f"cell {cell_index} is not a cancer cell")
    healthy = state.positions[state.kinds == HEALTHY]
    if healthy.shape[0] == 0:
        raise GeometryError("no healthy cells; tumour boundary undefined")
    diff = healthy - state.positions[cell_index]
    return float(np.sqrt(np.einsum("ij,ij->i", diff, diff).min()))


def _boundary_distances(positions: np.ndarray, healthy_pos: np.ndarray,
                        indices: np.ndarray) -> np.ndarray:
    """Nearest-healthy distances for the given cells (vectorised scan)."""
    if healthy_pos.shape[0] == 0:
        raise GeometryError("no healthy cells; tumour boundary undefined")
    diff = positions[indices, None, :] - healthy_pos[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    return np.sqrt(d2.min(axis=1))


def step(state: TissueState, params: VcbmParams, config: VcbmConfig,
         rng: np.random.Generator) -> TissueState:
    """Advance the tissue by one timestep.

    Spring relaxation moves every cell; eligible cancer cells (age >=
    g_age) then divide with probability p0 (1 - d/d_max), placing the
    daughter half a rest length away in a uniform random direction and
    resetting both ages; each pre-division cancer cell independently makes
    an invasive move outward with probability p_psc; ages advance one step.
    The returned state's neighbourhood is the Delaunay triangulation of the
    returned positions.
    """
    positions = state.positions + spring_displacements(state, config)
    kinds = state.kinds.copy()
    ages = state.ages.copy()
    s = config.rest_length

    cancer_idx = np.flatnonzero(kinds == CANCER)
    healthy_pos = positions[kinds == HEALTHY]

    # division: eligibility by age, success by distance-tapered Bernoulli
    eligible = cancer_idx[ages[cancer_idx] >= params.g_age]
    new_positions = []
    new_ages = []
    if eligible.size > 0:
        dists = _boundary_distances(positions, healthy_pos, eligible)
        probs = np.maximum(0.0, params.p0 * (1.0 - dists / params.d_max))
        draws = rng.random(eligible.size)
        dividing = eligible[draws < probs]
        if dividing.size > 0:
            angles = rng.uniform(0.0, 2.0 * np.pi, size=dividing.size)
            offsets = 0.5 * s * np.column_stack([np.cos(angles), np.sin(angles)])
            jit = config.cell_cycle_jitter
            resets = -rng.uniform(0.0, jit, size=2 * dividing.size) if jit > 0.0 \
                else np.zeros(2 * dividing.size)
            for m, (ci, off) in enumerate(zip(dividing, offsets)):
                new_positions.append(positions[ci] + off)
                new_ages.append(resets[2 * m])
                ages[ci] = resets[2 * m + 1]

    # invasion: pre-division cancer cells move one rest length outward
    if params.p_psc > 0.0 and cancer_idx.size > 0:
        inv_draws = rng.random(cancer_idx.size)
        movers = cancer_idx[inv_draws < params.p_psc]
        if movers.size > 0:
            centroid = positions[cancer_idx].mean(axis=0)
            for ci in movers:
                direction = positions[ci] - centroid
                norm = np.hypot(direction[0], direction[1])
                if norm == 0.0:
                    phi = rng.uniform(0.0, 2.0 * np.pi)
                    direction = np.array([np.cos(phi), np.sin(phi)])
                else:
                    direction = direction / norm
                target = positions[ci] + s * direction
                # landing exactly on another centre (possible on the pristine
                # lattice) would break the tessellation; nudge further out
                for _ in range(4):
                    gap2 = np.einsum("ij,ij->i", positions - target, positions - target)
                    if gap2.min() > 1e-12:
                        break
                    target = target + 0.25 * s * direction
                positions[ci] = target

    if new_positions:
        positions = np.vstack([positions, np.array(new_positions)])
        kinds = np.concatenate([kinds, np.full(len(new_positions), CANCER, dtype=np.int8)])
        ages = np.concatenate([ages, np.array(new_ages)])

    ages = ages + 1.0

    positions, kinds, ages = pad_healthy_annulus(positions, kinds, ages, config)

    if int(np.count_nonzero(kinds == CANCER)) > config.max_cells:
        raise SimulationError(
            f"cancer cell count exceeded the configured cap of {config.max_cells}"
        )

    return TissueState(positions, kinds, ages, triangulate(positions))
