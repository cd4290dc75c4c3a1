"""Discrepancy between summary vectors."""
from __future__ import annotations

import numpy as np


def distance(s_sim: np.ndarray, s_obs: np.ndarray, weights: np.ndarray | None = None) -> float:
    """Euclidean norm of the difference of two summary vectors.

    An optional non-negative weight vector gives the weighted variant
    sqrt(sum w_i (a_i - b_i)^2).
    """
    a = np.asarray(s_sim, dtype=float).reshape(-1)
    b = np.asarray(s_obs, dtype=float).reshape(-1)
    if a.size != b.size:
        raise ValueError(f"summary length mismatch: {a.size} vs {b.size}")
    d = a - b
    if weights is None:
        return float(np.sqrt(np.dot(d, d)))
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size != a.size:
        raise ValueError(f"weights length mismatch: {w.size} vs {a.size}")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    return float(np.sqrt(np.dot(w * d, d)))
