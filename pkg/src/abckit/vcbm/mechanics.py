"""Overdamped Hooke's-law cell mechanics on the Delaunay neighbourhood."""
from __future__ import annotations

import numpy as np
from numba import njit

from .config import VcbmConfig
from .geometry import GeometryError
from .state import TissueState


@njit(cache=True)
def _accumulate_forces(positions, edges, k, s, cap):
    n = positions.shape[0]
    disp = np.zeros((n, 2))
    for e in range(edges.shape[0]):
        i = edges[e, 0]
        j = edges[e, 1]
        dx = positions[j, 0] - positions[i, 0]
        dy = positions[j, 1] - positions[i, 1]
        length = np.sqrt(dx * dx + dy * dy)
        if length == 0.0:
            return disp, False
        if length > cap:
            continue
        scale = k * (length - s) / length
        fx = dx * scale
        fy = dy * scale
        disp[i, 0] += fx
        disp[i, 1] += fy
        disp[j, 0] -= fx
        disp[j, 1] -= fy
    return disp, True


def spring_displacements(state: TissueState, config: VcbmConfig) -> np.ndarray:
    """Per-cell displacement for one timestep.

    disp_i = dt * sum_j k (|x_j - x_i| - s) unit(x_j - x_i) over Delaunay
    neighbours j. Edges longer than edge_cap_factor rest lengths carry no
    force (convex-hull slivers would otherwise couple distant cells).
    """
    edges = state.neighbourhood.edges
    if edges.shape[0] == 0:
        return np.zeros_like(state.positions)
    disp, ok = _accumulate_forces(
        state.positions, edges, config.spring_constant,
        config.rest_length, config.edge_cap_factor * config.rest_length,
    )
    if not ok:
        raise GeometryError("coincident neighbour positions")
    return config.dt * disp
