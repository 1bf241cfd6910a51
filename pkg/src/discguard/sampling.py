"""Discretization of guarding problems into finite sample sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import GeometryError, PolygonSet, Point2, Ring, cells_intersect_polygon

PERIMETER = "perimeter"
REGION = "region"


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Ordered sample points ``points`` of shape (N, 2).

    For perimeter samples ``chains`` holds one ``(start, stop)`` index range
    per boundary ring, each circularly ordered along its ring.  Region
    samples have no chains.
    """

    points: np.ndarray
    epsilon: float
    kind: str = PERIMETER
    chains: tuple = field(default=())

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise GeometryError("sample set is empty")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "chains", tuple((int(a), int(b)) for a, b in self.chains))
        if self.kind not in (PERIMETER, REGION):
            raise ValueError(f"unknown sample kind {self.kind!r}")
        if self.kind == PERIMETER:
            if not self.chains:
                object.__setattr__(self, "chains", ((0, len(pts)),))
            pos = 0
            for a, b in self.chains:
                if a != pos or b <= a:
                    raise ValueError("chains must partition the sample indices in order")
                pos = b
            if pos != len(pts):
                raise ValueError("chains must cover every sample")
        elif self.chains:
            raise ValueError("region samples carry no chains")

    def __len__(self):
        return len(self.points)

    def chain(self, c: int) -> "SampleSet":
        a, b = self.chains[c]
        return SampleSet(self.points[a:b], self.epsilon, PERIMETER, ((0, b - a),))


@dataclass(frozen=True)
class GridSpec:
    """An m x n grid of square cells; ``origin`` is the lower-left cell center."""

    origin: Point2
    cell_side: float
    rows: int
    cols: int

    def __post_init__(self):
        if self.cell_side <= 0 or self.rows < 1 or self.cols < 1:
            raise GeometryError("invalid grid dimensions")
        object.__setattr__(self, "origin", Point2(float(self.origin[0]), float(self.origin[1])))

    @property
    def shape(self):
        return self.rows, self.cols

    def centers(self) -> np.ndarray:
        """All cell centers, row-major (row = y index, column = x index)."""
        xs = self.origin.x + self.cell_side * np.arange(self.cols)
        ys = self.origin.y + self.cell_side * np.arange(self.rows)
        gx, gy = np.meshgrid(xs, ys)
        return np.column_stack([gx.ravel(), gy.ravel()])


def _check_eps(epsilon):
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise GeometryError(f"epsilon must be positive, got {epsilon}")


def grid_for(poly: PolygonSet, side: float) -> GridSpec:
    """Smallest grid of ``side``-cells covering the bounding box, centered on it."""
    return grid_for_bounds(poly.bounds(), side)


def grid_for_bounds(bounds, side: float) -> GridSpec:
    _check_eps(side)
    x0, y0, x1, y1 = (float(v) for v in bounds)
    cols = max(1, math.ceil((x1 - x0) / side - 1e-9))
    rows = max(1, math.ceil((y1 - y0) / side - 1e-9))
    ox = x0 - (cols * side - (x1 - x0)) / 2.0 + side / 2.0
    oy = y0 - (rows * side - (y1 - y0)) / 2.0 + side / 2.0
    return GridSpec(Point2(ox, oy), side, rows, cols)


def candidate_centers(grid: GridSpec) -> list:
    return [Point2(float(x), float(y)) for x, y in grid.centers()]


def _sample_ring(ring: Ring, epsilon: float) -> np.ndarray:
    a, b = ring.edges()
    seg = np.hypot(*(b - a).T)
    total = float(seg.sum())
    n = max(1, math.ceil(total / (2.0 * epsilon) - 1e-9))
    # Arc-length midpoints, phase anchored at the ring's first vertex.
    s = (np.arange(n) + 0.5) * (total / n)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    e = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(seg) - 1)
    t = (s - cum[e]) / seg[e]
    return a[e] + t[:, None] * (b[e] - a[e])


def sample_perimeter(poly: PolygonSet, epsilon: float) -> SampleSet:
    """Midpoints of equal arcs of length at most ``2 * epsilon`` on every ring."""
    _check_eps(epsilon)
    parts, chains, pos = [], [], 0
    for ring in poly.rings():
        pts = _sample_ring(ring, epsilon)
        parts.append(pts)
        chains.append((pos, pos + len(pts)))
        pos += len(pts)
    return SampleSet(np.vstack(parts), epsilon, PERIMETER, tuple(chains))


def sample_region(poly: PolygonSet, epsilon: float):
    """Centers of every ``epsilon``-cell meeting the polygon, plus the grid used."""
    grid = grid_for(poly, epsilon)
    centers = grid.centers()
    keep = cells_intersect_polygon(centers, epsilon, poly)
    return SampleSet(centers[keep], epsilon, REGION), grid
