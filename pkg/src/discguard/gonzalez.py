"""Farthest-first traversal: a 2-approximation for discrete k-center."""

from __future__ import annotations

import numpy as np

from .deployment import Deployment
from .sampling import PERIMETER, REGION, SampleSet, sample_perimeter, sample_region


def farthest_first(samples, k: int, start_index: int = 0) -> Deployment:
    """Greedy k-center over the samples, O(N k).

    Each new center is the sample farthest from the chosen ones; ties go to
    the lowest index.  Stops early once every sample is a center's distance 0.
    """
    pts = samples.points if isinstance(samples, SampleSet) else np.asarray(samples, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("empty samples")
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not 0 <= start_index < len(pts):
        raise IndexError(f"start_index {start_index} out of range")
    chosen = [int(start_index)]
    dist = np.hypot(*(pts - pts[start_index]).T)
    while len(chosen) < k:
        far = int(np.argmax(dist))
        if dist[far] <= 0.0:
            break
        chosen.append(far)
        dist = np.minimum(dist, np.hypot(*(pts - pts[far]).T))
    radius = float(dist.max())
    return Deployment(pts[chosen], radius, "gonzalez", {"center_indices": tuple(chosen)})


def solve_gonzalez(poly, k: int, epsilon: float, mode: str = PERIMETER, start_index: int = 0) -> Deployment:
    if mode == PERIMETER:
        samples = sample_perimeter(poly, epsilon)
    elif mode == REGION:
        samples, _ = sample_region(poly, epsilon)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    d = farthest_first(samples, k, start_index)
    return Deployment(d.centers, d.radius, "gonzalez", {**d.info, "N": len(samples)})
