"""Caliper-style tumour volume from cancer-cell extents."""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .config import VcbmConfig
from .state import CANCER, TissueState


def _extents(points: np.ndarray) -> tuple[float, float]:
    """Longest extent L over all directions and the perpendicular extent W.

    L is the diameter of the point set (attained on the convex hull); W is
    the spread of projections onto the axis perpendicular to the L
    direction.
    """
    n = points.shape[0]
    if n == 1:
        return 0.0, 0.0
    if n > 3:
        try:
            hull = ConvexHull(points)
            points = points[hull.vertices]
            n = points.shape[0]
        except QhullError:
            pass  # collinear: fall through to the pairwise scan
    best = -1.0
    bi = bj = 0
    for i in range(n - 1):
        diff = points[i + 1:] - points[i]
        d2 = np.einsum("ij,ij->i", diff, diff)
        k = int(np.argmax(d2))
        if d2[k] > best:
            best = float(d2[k])
            bi, bj = i, i + 1 + k
    length = math.sqrt(best)
    if length == 0.0:
        return 0.0, 0.0
    axis = (points[bj] - points[bi]) / length
    perp = np.array([-axis[1], axis[0]])
    proj = points @ perp
    return length, float(proj.max() - proj.min())


def tumour_volume(state: TissueState, config: VcbmConfig) -> float:
    """Volume in mm^3 from perpendicular caliper extents of the cancer cells.

    Extents are padded by one cell diameter (half a diameter each side of
    the centre cloud); the default formula is the xenograft caliper
    approximation V = L W^2 / 2 with the ellipsoid (pi/6) L W^2 available
    via config.
    """
    cancer = state.positions[state.kinds == CANCER]
    if cancer.shape[0] == 0:
        return 0.0
    length, width = _extents(cancer)
    mm = config.cell_diameter_mm
    pad = config.rest_length
    length_mm = (length + pad) * mm
    width_mm = (width + pad) * mm
    if config.volume_formula == "ellipsoid":
        return (math.pi / 6.0) * length_mm * width_mm**2
    return 0.5 * length_mm * width_mm**2
