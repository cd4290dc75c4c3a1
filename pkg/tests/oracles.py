"""Independent reference implementations used as test oracles.

Everything here is deliberately brute-force and kept independent of the
library code paths it checks: exhaustive triangle scans for Delaunay,
pairwise scans for extents and nearest neighbours, rejection sampling for
ABC posteriors, and quadrature for conjugate moments.
"""
from __future__ import annotations

import numpy as np
from scipy import integrate

from abckit.core import derive_stream


def brute_force_delaunay_edges(points: np.ndarray) -> set[tuple[int, int]]:
    """All edges of triangles whose circumcircle is empty (O(n^4) scan)."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    edges = set()
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                ax, ay = pts[i]
                bx, by = pts[j]
                cx, cy = pts[k]
                d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
                if d == 0.0:
                    continue
                ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay)
                      + (cx**2 + cy**2) * (ay - by)) / d
                uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx)
                      + (cx**2 + cy**2) * (bx - ax)) / d
                r2 = (ax - ux) ** 2 + (ay - uy) ** 2
                empty = True
                for m in range(n):
                    if m in (i, j, k):
                        continue
                    if (pts[m, 0] - ux) ** 2 + (pts[m, 1] - uy) ** 2 < r2:
                        empty = False
                        break
                if empty:
                    edges.add((i, j))
                    edges.add((i, k))
                    edges.add((j, k))
    return edges


def circumcircle_is_empty(points: np.ndarray, tri: tuple[int, int, int],
                          slack: float = 1e-12) -> bool:
    """Empty-circumcircle check for one triangle, with relative slack."""
    pts = np.asarray(points, dtype=float)
    i, j, k = tri
    ax, ay = pts[i]
    bx, by = pts[j]
    cx, cy = pts[k]
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return False
    ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay)
          + (cx**2 + cy**2) * (ay - by)) / d
    uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx)
          + (cx**2 + cy**2) * (bx - ax)) / d
    r2 = (ax - ux) ** 2 + (ay - uy) ** 2
    for m in range(len(pts)):
        if m in (i, j, k):
            continue
        if (pts[m, 0] - ux) ** 2 + (pts[m, 1] - uy) ** 2 < r2 * (1.0 - slack):
            return False
    return True


def rotating_scan_extents(points: np.ndarray) -> tuple[float, float]:
    """Longest extent over all directions and the perpendicular extent (O(n^2))."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    if n == 1:
        return 0.0, 0.0
    best = -1.0
    pair = (0, 0)
    for i in range(n - 1):
        for j in range(i + 1, n):
            d2 = float(np.sum((pts[j] - pts[i]) ** 2))
            if d2 > best:
                best = d2
                pair = (i, j)
    length = float(np.sqrt(best))
    if length == 0.0:
        return 0.0, 0.0
    axis = (pts[pair[1]] - pts[pair[0]]) / length
    perp = np.array([-axis[1], axis[0]])
    proj = pts @ perp
    return length, float(proj.max() - proj.min())


def nearest_healthy_scan(positions: np.ndarray, kinds: np.ndarray,
                         cell_index: int) -> float:
    """Exhaustive nearest healthy-cell distance."""
    best = np.inf
    for m in range(len(positions)):
        if kinds[m] != 0:
            continue
        d = float(np.hypot(*(positions[m] - positions[cell_index])))
        best = min(best, d)
    return best


def rejection_abc(model, prior, s_obs: np.ndarray, epsilon: float, n: int,
                  seed: int, max_draws: int = 10_000_000) -> np.ndarray:
    """Brute-force ABC: draw from the prior, keep if within epsilon."""
    s_obs = np.asarray(s_obs, dtype=float)
    kept = []
    attempt = 0
    while len(kept) < n:
        if attempt >= max_draws:
            raise RuntimeError(f"rejection sampler exhausted {max_draws} draws")
        rng = derive_stream(seed, [attempt])
        theta = prior.sample(rng)
        summary = np.asarray(model.simulate(theta.values, rng), dtype=float)
        if np.sqrt(np.sum((summary - s_obs) ** 2)) <= epsilon:
            kept.append(theta.values)
        attempt += 1
    return np.array(kept)


def gaussian_posterior_quadrature(mu0, tau0, sigma, n, y_bar) -> tuple[float, float]:
    """Posterior mean/sd for the Gaussian-mean model by numeric integration."""

    def unnorm(theta):
        lp = -0.5 * ((theta - mu0) / tau0) ** 2
        ll = -0.5 * n * ((y_bar - theta) / sigma) ** 2
        return np.exp(lp + ll)

    lo, hi = mu0 - 12 * tau0, mu0 + 12 * tau0
    z0, _ = integrate.quad(unnorm, lo, hi, limit=200)
    m1, _ = integrate.quad(lambda t: t * unnorm(t), lo, hi, limit=200)
    m2, _ = integrate.quad(lambda t: t * t * unnorm(t), lo, hi, limit=200)
    mean = m1 / z0
    var = m2 / z0 - mean**2
    return mean, float(np.sqrt(var))


def beta_binomial_posterior_quadrature(a, b, n, y) -> tuple[float, float]:
    """Posterior mean/sd for the Binomial model by numeric integration."""

    def unnorm(theta):
        if theta <= 0.0 or theta >= 1.0:
            return 0.0
        return theta ** (a - 1 + y) * (1 - theta) ** (b - 1 + n - y)

    z0, _ = integrate.quad(unnorm, 0.0, 1.0, limit=200)
    m1, _ = integrate.quad(lambda t: t * unnorm(t), 0.0, 1.0, limit=200)
    m2, _ = integrate.quad(lambda t: t * t * unnorm(t), 0.0, 1.0, limit=200)
    mean = m1 / z0
    var = m2 / z0 - mean**2
    return mean, float(np.sqrt(var))
