"""Numba kernel for 2D Delaunay triangulation.

Sweep-circle construction: seed triangle near the centroid, remaining
points inserted in order of distance from its circumcenter while an
advancing convex hull (hash-indexed by pseudo-angle) locates visible
edges; every new triangle is legalized by incircle edge flips. Output is
a halfedge mesh. Roughly an order of magnitude faster than generic
convex-hull codes at the few-hundred-point sizes the tissue simulator
rebuilds every timestep.
"""
from __future__ import annotations

import numpy as np
from numba import njit

# status codes returned by _triangulate_impl
OK = 0
DEGENERATE = 1  # fewer than 3 effective points or all collinear
SKIPPED_POINT = 2  # a point could not be inserted (duplicate or on-hull tie)


@njit(cache=True)
def _circumradius2(ax, ay, bx, by, cx, cy):
    dx = bx - ax
    dy = by - ay
    ex = cx - ax
    ey = cy - ay
    bl = dx * dx + dy * dy
    cl = ex * ex + ey * ey
    det = dx * ey - dy * ex
    if det == 0.0:
        return np.inf
    d = 0.5 / det
    x = (ey * bl - dy * cl) * d
    y = (dx * cl - ex * bl) * d
    return x * x + y * y


@njit(cache=True)
def _circumcenter(ax, ay, bx, by, cx, cy):
    dx = bx - ax
    dy = by - ay
    ex = cx - ax
    ey = cy - ay
    bl = dx * dx + dy * dy
    cl = ex * ex + ey * ey
    d = 0.5 / (dx * ey - dy * ex)
    return ax + (ey * bl - dy * cl) * d, ay + (dx * cl - ex * bl) * d


@njit(cache=True)
def _orient(ax, ay, bx, by, cx, cy):
    """Sign of the signed area of (a, b, c), with a floating-point filter.

    Positive means clockwise in y-up coordinates (the convention the hull
    walk below is written for). The error-bound filter certifies the sign;
    ambiguous near-zero determinants return 0.
    """
    detleft = (ay - cy) * (bx - cx)
    detright = (ax - cx) * (by - cy)
    det = detleft - detright
    detsum = abs(detleft + detright)
    if abs(det) >= 3.3306690738754716e-16 * detsum:
        return det
    if det == 0.0:
        return 0.0
    # Ambiguous: recompute the determinant with compensated products.
    # err(a*b) recovered via FMA-free Dekker splitting.
    s = 134217729.0  # 2^27 + 1
    # detleft = p1 * p2
    p1 = ay - cy
    p2 = bx - cx
    c1 = s * p1
    h1 = c1 - (c1 - p1)
    l1 = p1 - h1
    c2 = s * p2
    h2 = c2 - (c2 - p2)
    l2 = p2 - h2
    left_hi = p1 * p2
    left_lo = ((h1 * h2 - left_hi) + h1 * l2 + l1 * h2) + l1 * l2
    # detright = q1 * q2
    q1 = ax - cx
    q2 = by - cy
    c1 = s * q1
    h1 = c1 - (c1 - q1)
    l1 = q1 - h1
    c2 = s * q2
    h2 = c2 - (c2 - q2)
    l2 = q2 - h2
    right_hi = q1 * q2
    right_lo = ((h1 * h2 - right_hi) + h1 * l2 + l1 * h2) + l1 * l2
    return (left_hi - right_hi) + (left_lo - right_lo)


@njit(cache=True)
def _in_circle(ax, ay, bx, by, cx, cy, px, py):
    """True when p lies strictly inside the circumcircle of (a, b, c)."""
    dx = ax - px
    dy = ay - py
    ex = bx - px
    ey = by - py
    fx = cx - px
    fy = cy - py
    ap = dx * dx + dy * dy
    bp = ex * ex + ey * ey
    cp = fx * fx + fy * fy
    return (dx * (ey * cp - bp * fy)
            - dy * (ex * cp - bp * fx)
            + ap * (ex * fy - ey * fx)) < 0.0


@njit(cache=True)
def _pseudo_angle(dx, dy):
    denom = abs(dx) + abs(dy)
    if denom == 0.0:
        return 0.0
    p = dx / denom
    if dy > 0.0:
        return (3.0 - p) / 4.0
    return (1.0 + p) / 4.0


@njit(cache=True)
def _triangulate_impl(points):  # noqa: C901 - single hot kernel
    n = points.shape[0]
    max_triangles = max(2 * n - 5, 0)
    triangles = np.empty(3 * max_triangles, dtype=np.int64)
    halfedges = np.empty(3 * max_triangles, dtype=np.int64)
    hull_prev = np.empty(n, dtype=np.int64)
    hull_next = np.empty(n, dtype=np.int64)
    hull_tri = np.empty(n, dtype=np.int64)
    hash_size = int(np.ceil(np.sqrt(n)))
    hull_hash = np.full(hash_size, -1, dtype=np.int64)
    edge_stack = np.empty(512, dtype=np.int64)

    min_x = np.inf
    min_y = np.inf
    max_x = -np.inf
    max_y = -np.inf
    for i in range(n):
        x = points[i, 0]
        y = points[i, 1]
        if x < min_x:
            min_x = x
        if y < min_y:
            min_y = y
        if x > max_x:
            max_x = x
        if y > max_y:
            max_y = y
    cx = (min_x + max_x) / 2.0
    cy = (min_y + max_y) / 2.0

    i0 = 0
    min_dist = np.inf
    for i in range(n):
        dx = points[i, 0] - cx
        dy = points[i, 1] - cy
        d = dx * dx + dy * dy
        if d < min_dist:
            i0 = i
            min_dist = d
    i0x = points[i0, 0]
    i0y = points[i0, 1]

    i1 = -1
    min_dist = np.inf
    for i in range(n):
        if i == i0:
            continue
        dx = points[i, 0] - i0x
        dy = points[i, 1] - i0y
        d = dx * dx + dy * dy
        if 0.0 < d < min_dist:
            i1 = i
            min_dist = d
    if i1 < 0:
        return triangles[:0], halfedges[:0], DEGENERATE
    i1x = points[i1, 0]
    i1y = points[i1, 1]

    i2 = -1
    min_radius = np.inf
    for i in range(n):
        if i == i0 or i == i1:
            continue
        r = _circumradius2(i0x, i0y, i1x, i1y, points[i, 0], points[i, 1])
        if r < min_radius:
            i2 = i
            min_radius = r
    if not np.isfinite(min_radius):
        return triangles[:0], halfedges[:0], DEGENERATE
    i2x = points[i2, 0]
    i2y = points[i2, 1]

    if _orient(i0x, i0y, i1x, i1y, i2x, i2y) < 0.0:
        i1, i2 = i2, i1
        i1x, i2x = i2x, i1x
        i1y, i2y = i2y, i1y

    ccx, ccy = _circumcenter(i0x, i0y, i1x, i1y, i2x, i2y)
    dists = np.empty(n, dtype=np.float64)
    for i in range(n):
        dx = points[i, 0] - ccx
        dy = points[i, 1] - ccy
        dists[i] = dx * dx + dy * dy
    ids = np.argsort(dists, kind="mergesort")

    hull_start = i0
    hull_next[i0] = i1
    hull_prev[i2] = i1
    hull_next[i1] = i2
    hull_prev[i0] = i2
    hull_next[i2] = i0
    hull_prev[i1] = i0

    hull_tri[i0] = 0
    hull_tri[i1] = 1
    hull_tri[i2] = 2

    hull_hash[int(_pseudo_angle(i0x - ccx, i0y - ccy) * hash_size) % hash_size] = i0
    hull_hash[int(_pseudo_angle(i1x - ccx, i1y - ccy) * hash_size) % hash_size] = i1
    hull_hash[int(_pseudo_angle(i2x - ccx, i2y - ccy) * hash_size) % hash_size] = i2

    n_tri = 0  # filled halfedge slots

    # seed triangle
    triangles[0] = i0
    triangles[1] = i1
    triangles[2] = i2
    halfedges[0] = -1
    halfedges[1] = -1
    halfedges[2] = -1
    n_tri = 3

    status = OK
    xp = np.inf
    yp = np.inf
    for k in range(n):
        i = ids[k]
        x = points[i, 0]
        y = points[i, 1]

        if k > 0 and abs(x - xp) <= 2.220446049250313e-16 and abs(y - yp) <= 2.220446049250313e-16:
            status = SKIPPED_POINT
            continue
        xp = x
        yp = y

        if i == i0 or i == i1 or i == i2:
            continue

        # locate a visible hull edge via the angular hash
        start = 0
        key = int(_pseudo_angle(x - ccx, y - ccy) * hash_size) % hash_size
        for j in range(hash_size):
            start = hull_hash[(key + j) % hash_size]
            if start != -1 and start != hull_next[start]:
                break

        start = hull_prev[start]
        e = start
        found = False
        while True:
            q = hull_next[e]
            if _orient(x, y, points[e, 0], points[e, 1], points[q, 0], points[q, 1]) < 0.0:
                found = True
                break
            e = q
            if e == start:
                break
        if not found:
            status = SKIPPED_POINT
            continue

        # first triangle from the new point
        t = n_tri
        triangles[t] = e
        triangles[t + 1] = i
        triangles[t + 2] = hull_next[e]
        halfedges[t] = -1
        halfedges[t + 1] = -1
        he = hull_tri[e]
        halfedges[t + 2] = he
        if he != -1:
            halfedges[he] = t + 2
        n_tri += 3

        # legalize t+2
        a = t + 2
        stack_top = 0
        ar = 0
        while True:
            b = halfedges[a]
            a0 = a - a % 3
            ar = a0 + (a + 2) % 3
            if b == -1:
                if stack_top == 0:
                    break
                stack_top -= 1
                a = edge_stack[stack_top]
                continue
            b0 = b - b % 3
            al = a0 + (a + 1) % 3
            bl = b0 + (b + 2) % 3
            p0 = triangles[ar]
            pr = triangles[a]
            pl = triangles[al]
            p1 = triangles[bl]
            if _in_circle(points[p0, 0], points[p0, 1], points[pr, 0], points[pr, 1],
                          points[pl, 0], points[pl, 1], points[p1, 0], points[p1, 1]):
                triangles[a] = p1
                triangles[b] = p0
                hbl = halfedges[bl]
                if hbl == -1:
                    eh = hull_start
                    while True:
                        if hull_tri[eh] == bl:
                            hull_tri[eh] = a
                            break
                        eh = hull_prev[eh]
                        if eh == hull_start:
                            break
                halfedges[a] = hbl
                if hbl != -1:
                    halfedges[hbl] = a
                har = halfedges[ar]
                halfedges[b] = har
                if har != -1:
                    halfedges[har] = b
                halfedges[ar] = bl
                halfedges[bl] = ar
                br = b0 + (b + 1) % 3
                if stack_top < 512:
                    edge_stack[stack_top] = br
                    stack_top += 1
            else:
                if stack_top == 0:
                    break
                stack_top -= 1
                a = edge_stack[stack_top]
        hull_tri[i] = ar
        hull_tri[e] = t

        # walk forward while edges become visible
        nn = hull_next[e]
        while True:
            q = hull_next[nn]
            if not _orient(x, y, points[nn, 0], points[nn, 1], points[q, 0], points[q, 1]) < 0.0:
                break
            t = n_tri
            triangles[t] = nn
            triangles[t + 1] = i
            triangles[t + 2] = q
            halfedges[t] = hull_tri[i]
            if hull_tri[i] != -1:
                halfedges[hull_tri[i]] = t
            halfedges[t + 1] = -1
            he = hull_tri[nn]
            halfedges[t + 2] = he
            if he != -1:
                halfedges[he] = t + 2
            n_tri += 3

            a = t + 2
            stack_top = 0
            ar = 0
            while True:
                b = halfedges[a]
                a0 = a - a % 3
                ar = a0 + (a + 2) % 3
                if b == -1:
                    if stack_top == 0:
                        break
                    stack_top -= 1
                    a = edge_stack[stack_top]
                    continue
                b0 = b - b % 3
                al = a0 + (a + 1) % 3
                bl = b0 + (b + 2) % 3
                p0 = triangles[ar]
                pr = triangles[a]
                pl = triangles[al]
                p1 = triangles[bl]
                if _in_circle(points[p0, 0], points[p0, 1], points[pr, 0], points[pr, 1],
                              points[pl, 0], points[pl, 1], points[p1, 0], points[p1, 1]):
                    triangles[a] = p1
                    triangles[b] = p0
                    hbl = halfedges[bl]
                    if hbl == -1:
                        eh = hull_start
                        while True:
                            if hull_tri[eh] == bl:
                                hull_tri[eh] = a
                                break
                            eh = hull_prev[eh]
                            if eh == hull_start:
                                break
                    halfedges[a] = hbl
                    if hbl != -1:
                        halfedges[hbl] = a
                    har = halfedges[ar]
                    halfedges[b] = har
                    if har != -1:
                        halfedges[har] = b
                    halfedges[ar] = bl
                    halfedges[bl] = ar
                    br = b0 + (b + 1) % 3
                    if stack_top < 512:
                        edge_stack[stack_top] = br
                        stack_top += 1
                else:
                    if stack_top == 0:
                        break
                    stack_top -= 1
                    a = edge_stack[stack_top]
            hull_tri[i] = ar
            hull_next[nn] = nn  # removed from hull
            nn = q

        # walk backward from the starting edge
        if e == start:
            while True:
                q = hull_prev[e]
                if not _orient(x, y, points[q, 0], points[q, 1], points[e, 0], points[e, 1]) < 0.0:
                    break
                t = n_tri
                triangles[t] = q
                triangles[t + 1] = i
                triangles[t + 2] = e
                halfedges[t] = -1
                he2 = hull_tri[e]
                halfedges[t + 1] = he2
                if he2 != -1:
                    halfedges[he2] = t + 1
                he3 = hull_tri[q]
                halfedges[t + 2] = he3
                if he3 != -1:
                    halfedges[he3] = t + 2
                n_tri += 3

                a = t + 2
                stack_top = 0
                ar = 0
                while True:
                    b = halfedges[a]
                    a0 = a - a % 3
                    ar = a0 + (a + 2) % 3
                    if b == -1:
                        if stack_top == 0:
                            break
                        stack_top -= 1
                        a = edge_stack[stack_top]
                        continue
                    b0 = b - b % 3
                    al = a0 + (a + 1) % 3
                    bl = b0 + (b + 2) % 3
                    p0 = triangles[ar]
                    pr = triangles[a]
                    pl = triangles[al]
                    p1 = triangles[bl]
                    if _in_circle(points[p0, 0], points[p0, 1], points[pr, 0], points[pr, 1],
                                  points[pl, 0], points[pl, 1], points[p1, 0], points[p1, 1]):
                        triangles[a] = p1
                        triangles[b] = p0
                        hbl = halfedges[bl]
                        if hbl == -1:
                            eh = hull_start
                            while True:
                                if hull_tri[eh] == bl:
                                    hull_tri[eh] = a
                                    break
                                eh = hull_prev[eh]
                                if eh == hull_start:
                                    break
                        halfedges[a] = hbl
                        if hbl != -1:
                            halfedges[hbl] = a
                        har = halfedges[ar]
                        halfedges[b] = har
                        if har != -1:
                            halfedges[har] = b
                        halfedges[ar] = bl
                        halfedges[bl] = ar
                        br = b0 + (b + 1) % 3
                        if stack_top < 512:
                            edge_stack[stack_top] = br
                            stack_top += 1
                    else:
                        if stack_top == 0:
                            break
                        stack_top -= 1
                        a = edge_stack[stack_top]
                hull_tri[q] = t
                hull_next[e] = e  # removed from hull
                e = q

        hull_start = e
        hull_prev[i] = e
        hull_next[e] = i
        hull_prev[nn] = i
        hull_next[i] = nn

        hull_hash[int(_pseudo_angle(x - ccx, y - ccy) * hash_size) % hash_size] = i
        hull_hash[int(_pseudo_angle(points[e, 0] - ccx, points[e, 1] - ccy) * hash_size) % hash_size] = e

    return triangles[:n_tri], halfedges[:n_tri], status


@njit(cache=True)
def _edges_from_halfedges(triangles, halfedges):
    """Unique undirected edges (i < j not guaranteed; each edge once)."""
    m = triangles.shape[0]
    count = 0
    for a in range(m):
        if a < halfedges[a] or halfedges[a] == -1:
            count += 1
    edges = np.empty((count, 2), dtype=np.int64)
    k = 0
    for a in range(m):
        if a < halfedges[a] or halfedges[a] == -1:
            a0 = a - a % 3
            edges[k, 0] = triangles[a]
            edges[k, 1] = triangles[a0 + (a + 1) % 3]
            k += 1
    return edges


def triangulate_halfedges(points: np.ndarray):
    """Run the kernel; returns (triangles, halfedges, status)."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    return _triangulate_impl(pts)
