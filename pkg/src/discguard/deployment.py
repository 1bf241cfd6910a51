from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .geometry import TOL, as_points

METHODS = ("cont", "gonzalez", "ilp")


@dataclass(frozen=True, eq=False)
class Deployment:
    """Disc centers of shape (m, 2) sharing one radius.

    ``info`` carries solver diagnostics (search bounds, probe counts, ...).
    """

    centers: np.ndarray
    radius: float
    method: str
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        c = as_points(self.centers, "centers")
        if len(c) == 0:
            raise ValueError("a deployment needs at least one center")
        if not self.radius >= 0:
            raise ValueError("radius must be non-negative")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        c.flags.writeable = False
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "radius", float(self.radius))

    def __len__(self):
        return len(self.centers)


class CoverCheck(NamedTuple):
    ok: bool
    worst_gap: float
    worst_sample: int


def nearest_distances(points, centers) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    c = np.asarray(centers, dtype=float)
    d = np.hypot(p[:, None, 0] - c[None, :, 0], p[:, None, 1] - c[None, :, 1])
    return d.min(axis=1)


def covering_radius(points, centers) -> float:
    """Largest distance from any point to its nearest center."""
    return float(nearest_distances(points, centers).max())


def verify_cover(deployment: Deployment, samples) -> CoverCheck:
    """Check that every sample lies in some disc of the deployment."""
    pts = samples.points if hasattr(samples, "points") else np.asarray(samples, dtype=float)
    gaps = nearest_distances(pts, deployment.centers)
    worst = int(np.argmax(gaps))
    gap = float(gaps[worst])
    return CoverCheck(gap <= deployment.radius + TOL, gap, worst)
