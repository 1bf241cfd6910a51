"""Slow, independent reference implementations used only by the tests.

None of these share code with the package: they are brute force by design.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

SLACK = 1e-9


def med_bruteforce(points):
    """Smallest disc through a pair (as diameter) or triple that holds every point."""
    p = np.asarray(points, dtype=float)
    if len(p) == 1:
        return (float(p[0, 0]), float(p[0, 1])), 0.0
    best = None
    cands = []
    for i, j in itertools.combinations(range(len(p)), 2):
        c = (p[i] + p[j]) / 2
        cands.append((c, math.dist(p[i], c)))
    for i, j, l in itertools.combinations(range(len(p)), 3):
        cc = _circumcenter(p[i], p[j], p[l])
        if cc is not None:
            cands.append((cc, math.dist(p[i], cc)))
    for c, r in cands:
        if best is not None and r >= best[1]:
            continue
        if np.all(np.hypot(*(p - c).T) <= r + 1e-9 * max(1.0, r)):
            best = (c, r)
    return (float(best[0][0]), float(best[0][1])), float(best[1])


def _circumcenter(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-14:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    return np.array([ux, uy])


def med_radius_batch(points):
    """Vectorized pair/triple enumeration; radius only."""
    p = np.asarray(points, dtype=float)
    n = len(p)
    if n == 1:
        return 0.0
    i, j = np.triu_indices(n, 1)
    centers = [(p[i] + p[j]) / 2]
    radii = [np.hypot(*((p[i] - p[j]) / 2).T)]
    if n >= 3:
        t = np.array(list(itertools.combinations(range(n), 3)))
        a, b, c = p[t[:, 0]], p[t[:, 1]], p[t[:, 2]]
        d = 2 * (a[:, 0] * (b[:, 1] - c[:, 1]) + b[:, 0] * (c[:, 1] - a[:, 1]) + c[:, 0] * (a[:, 1] - b[:, 1]))
        ok = np.abs(d) > 1e-14
        a, b, c, d = a[ok], b[ok], c[ok], d[ok]
        sa, sb, sc = (a ** 2).sum(1), (b ** 2).sum(1), (c ** 2).sum(1)
        ux = (sa * (b[:, 1] - c[:, 1]) + sb * (c[:, 1] - a[:, 1]) + sc * (a[:, 1] - b[:, 1])) / d
        uy = (sa * (c[:, 0] - b[:, 0]) + sb * (a[:, 0] - c[:, 0]) + sc * (b[:, 0] - a[:, 0])) / d
        cc = np.column_stack([ux, uy])
        centers.append(cc)
        radii.append(np.hypot(*(a - cc).T))
    centers = np.vstack(centers)
    radii = np.concatenate(radii)
    dist = np.hypot(centers[:, None, 0] - p[None, :, 0], centers[:, None, 1] - p[None, :, 1])
    good = np.all(dist <= radii[:, None] + 1e-9 * np.maximum(1.0, radii[:, None]), axis=1)
    return float(radii[good].min())


def winding_number(point, ring) -> int:
    """Classic crossing-with-orientation winding number (0 means outside)."""
    x, y = point
    wn = 0
    v = list(ring)
    for (x0, y0), (x1, y1) in zip(v, v[1:] + v[:1]):
        cross = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0)
        if y0 <= y:
            if y1 > y and cross > 0:
                wn += 1
        elif y1 <= y and cross < 0:
            wn -= 1
    return wn


def contiguous_partition_feasible(points, k: int, r: float) -> bool:
    """Circular sequence split into at most k contiguous runs, each with MED <= r.

    Exhaustive over all N rotations with an O(N^2) DP per rotation.
    """
    p = np.asarray(points, dtype=float)
    n = len(p)
    if med_radius_batch(p) <= r + SLACK:
        return True
    # reach[i]: longest run from i (circular) whose MED fits.
    reach = np.zeros(n, dtype=int)
    for i in range(n):
        length = 1
        while length < n and med_radius_batch(p[(i + np.arange(length + 1)) % n]) <= r + SLACK:
            length += 1
        reach[i] = length
    for s in range(n):
        dp = [math.inf] * (n + 1)
        dp[0] = 0
        for a in range(n):
            if dp[a] == math.inf:
                continue
            for m in range(1, int(reach[(s + a) % n]) + 1):
                if a + m > n:
                    break
                dp[a + m] = min(dp[a + m], dp[a] + 1)
        if dp[n] <= k:
            return True
    return False


def discrete_k_center(points, k: int) -> float:
    """Best radius over every k-subset of the points as centers."""
    p = np.asarray(points, dtype=float)
    d = np.hypot(p[:, None, 0] - p[None, :, 0], p[:, None, 1] - p[None, :, 1])
    k = min(k, len(p))
    best = math.inf
    for sub in itertools.combinations(range(len(p)), k):
        best = min(best, float(d[:, sub].min(axis=1).max()))
    return best


def exhaustive_cover(coverage, n_candidates: int, k: int):
    """First subset of <= k candidates covering every sample, or None."""
    for size in range(0, min(k, n_candidates) + 1):
        for sub in itertools.combinations(range(n_candidates), size):
            s = set(sub)
            if all(s.intersection(cov) for cov in coverage):
                return sub
    return None


def grid_optimum_bruteforce(samples, candidates, k: int) -> float:
    """Exact grid k-center radius by enumerating every k-subset of candidates."""
    p = np.asarray(samples, dtype=float)
    c = np.asarray(candidates, dtype=float)
    d = np.hypot(p[:, None, 0] - c[None, :, 0], p[:, None, 1] - c[None, :, 1])
    best = math.inf
    for sub in itertools.combinations(range(len(c)), k):
        best = min(best, float(d[:, sub].min(axis=1).max()))
    return best


def grid_optimum_milp(samples, candidates, k: int) -> float:
    """Exact grid k-center radius: bisection over distinct distances with HiGHS."""
    from scipy.optimize import Bounds, LinearConstraint, milp

    p = np.asarray(samples, dtype=float)
    c = np.asarray(candidates, dtype=float)
    d = np.hypot(p[:, None, 0] - c[None, :, 0], p[:, None, 1] - c[None, :, 1])
    radii = np.unique(d)
    lo_r = d.min(axis=1).max()  # every sample needs some candidate
    radii = radii[radii >= lo_r]

    def feasible(r):
        a = (d <= r + SLACK).astype(float)
        cons = [LinearConstraint(a, lb=1, ub=np.inf), LinearConstraint(np.ones((1, len(c))), lb=0, ub=k)]
        res = milp(np.zeros(len(c)), constraints=cons, integrality=np.ones(len(c)), bounds=Bounds(0, 1))
        return res.status == 0

    i, j = -1, len(radii) - 1
    while j - i > 1:
        m = (i + j) // 2
        if feasible(radii[m]):
            j = m
        else:
            i = m
    return float(radii[j])


def continuous_k_center(points, k: int) -> float:
    """Free-center k-center by enumerating every assignment of points to k groups."""
    p = np.asarray(points, dtype=float)
    n = len(p)
    if k >= n:
        return 0.0
    best = math.inf
    # fix point 0 in group 0 to skip relabelings
    for labels in itertools.product(range(k), repeat=n - 1):
        lab = (0,) + labels
        worst = 0.0
        for g in range(k):
            members = p[[i for i in range(n) if lab[i] == g]]
            if len(members):
                worst = max(worst, med_radius_batch(members))
                if worst >= best:
                    break
        best = min(best, worst)
    return best


def _candidate_discs(p):
    """Every singleton, pair-diameter and triple-circumcircle disc: (centers, radii)."""
    n = len(p)
    centers, radii = [p], [np.zeros(n)]
    i, j = np.triu_indices(n, 1)
    centers.append((p[i] + p[j]) / 2)
    radii.append(np.hypot(*((p[i] - p[j]) / 2).T))
    if n >= 3:
        t = np.array(list(itertools.combinations(range(n), 3)))
        a, b, c = p[t[:, 0]], p[t[:, 1]], p[t[:, 2]]
        d = 2 * (a[:, 0] * (b[:, 1] - c[:, 1]) + b[:, 0] * (c[:, 1] - a[:, 1]) + c[:, 0] * (a[:, 1] - b[:, 1]))
        ok = np.abs(d) > 1e-14
        a, b, c, d = a[ok], b[ok], c[ok], d[ok]
        sa, sb, sc = (a ** 2).sum(1), (b ** 2).sum(1), (c ** 2).sum(1)
        ux = (sa * (b[:, 1] - c[:, 1]) + sb * (c[:, 1] - a[:, 1]) + sc * (a[:, 1] - b[:, 1])) / d
        uy = (sa * (c[:, 0] - b[:, 0]) + sb * (a[:, 0] - c[:, 0]) + sc * (b[:, 0] - a[:, 0])) / d
        cc = np.column_stack([ux, uy])
        centers.append(cc)
        radii.append(np.hypot(*(a - cc).T))
    return np.vstack(centers), np.concatenate(radii)


def free_k_center(points, k: int) -> float:
    """Free-center k-center optimum for up to 62 points.

    Each optimal cluster sits in its own minimum disc, which is a singleton,
    pair or triple disc; so the optimum is the least R for which k candidate
    discs of radius <= R jointly contain every point.
    """
    p = np.asarray(points, dtype=float)
    n = len(p)
    if k >= n:
        return 0.0
    centers, radii = _candidate_discs(p)
    dist = np.hypot(centers[:, None, 0] - p[None, :, 0], centers[:, None, 1] - p[None, :, 1])
    inside = dist <= radii[:, None] + 1e-9
    masks = (inside * (1 << np.arange(n, dtype=np.int64))).sum(axis=1)
    full = (1 << n) - 1
    order = np.argsort(radii)
    radii_sorted, masks_sorted = radii[order], masks[order]

    def coverable(m):
        pool = np.unique(masks_sorted[:m])
        return _cover(pool, full, k)

    lo, hi = 0, len(order)  # coverable(hi) is true: the whole-set disc is among candidates
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if coverable(mid):
            hi = mid
        else:
            lo = mid
    return float(radii_sorted[hi - 1])


def _cover(pool, need, k):
    if need == 0:
        return True
    if k == 1:
        return bool(np.any((pool & need) == need))
    low = need & -need
    for m in pool[(pool & low) != 0]:
        if _cover(pool, need & ~int(m), k - 1):
            return True
    return False
