"""Delaunay neighbourhoods over cell centres."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._delaunator import (
    DEGENERATE,
    SKIPPED_POINT,
    _edges_from_halfedges,
    triangulate_halfedges,
)


class GeometryError(ValueError):
    """Degenerate or inconsistent cell geometry."""


@dataclass(frozen=True)
class Neighbourhood:
    """Symmetric Delaunay adjacency over n points."""

    n_points: int
    edges: np.ndarray = field(compare=False)  # (m, 2) int64, each edge once
    triangles: np.ndarray = field(compare=False)  # (t, 3) int64 vertex triples

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        edges.flags.writeable = False
        triangles.flags.writeable = False
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "triangles", triangles)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(min(i, j), max(i, j)) for i, j in self.edges}

    def neighbors(self, i: int) -> np.ndarray:
        mask_a = self.edges[:, 0] == i
        mask_b = self.edges[:, 1] == i
        out = np.concatenate([self.edges[mask_a, 1], self.edges[mask_b, 0]])
        return np.sort(out)

    def degree(self) -> np.ndarray:
        deg = np.zeros(self.n_points, dtype=np.int64)
        np.add.at(deg, self.edges[:, 0], 1)
        np.add.at(deg, self.edges[:, 1], 1)
        return deg


def triangulate(positions: np.ndarray) -> Neighbourhood:
    """Delaunay adjacency of 2D points.

    Raises GeometryError for fewer than 3 points, collinear input, or
    coincident points (which make the neighbourhood ill-defined).
    """
    pts = np.ascontiguousarray(positions, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise GeometryError(f"positions must be (n, 2), got {pts.shape}")
    n = pts.shape[0]
    if n < 3:
        raise GeometryError(f"triangulation needs at least 3 points, got {n}")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("positions contain non-finite coordinates")
    tri_flat, halfedges, status = triangulate_halfedges(pts)
    if status == DEGENERATE:
        raise GeometryError("points are all collinear; no triangulation exists")
    if status == SKIPPED_POINT:
        raise GeometryError(
            "coincident or unresolvable points; positions must be pairwise distinct"
        )
    edges = _edges_from_halfedges(tri_flat, halfedges)
    triangles = tri_flat.reshape(-1, 3)
    return Neighbourhood(n_points=n, edges=edges, triangles=triangles)
