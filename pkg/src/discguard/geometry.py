"""Planar geometry primitives: points, rings, polygons with holes, and the
minimum enclosing disc.

All predicates treat regions and discs as closed sets and compare with an
absolute tolerance of ``TOL`` workspace units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

TOL = 1e-9

# Below this size plain Welzl beats the core-set loop.
_SMALL_MED = 16


class GeometryError(ValueError):
    """Raised for invalid geometric input."""


class Point2(NamedTuple):
    x: float
    y: float


class Disc(NamedTuple):
    center: Point2
    radius: float

    def contains(self, p, tol: float = TOL) -> bool:
        return math.hypot(p[0] - self.center[0], p[1] - self.center[1]) <= self.radius + tol


def as_points(points, name: str = "points") -> np.ndarray:
    """Coerce to a finite float array of shape (n, 2)."""
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GeometryError(f"{name} must have shape (n, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError(f"{name} contains non-finite coordinates")
    return arr


# ---------------------------------------------------------------------------
# Segment predicates


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def segments_intersect(p1, p2, q1, q2, tol: float = TOL) -> bool:
    """Closed-segment intersection test (touching counts)."""
    d1 = _orient(*q1, *q2, *p1)
    d2 = _orient(*q1, *q2, *p2)
    d3 = _orient(*p1, *p2, *q1)
    d4 = _orient(*p1, *p2, *q2)
    if ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
        (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
    ):
        return True
    return (
        (abs(d1) <= tol and _on_segment(q1, q2, p1, tol))
        or (abs(d2) <= tol and _on_segment(q1, q2, p2, tol))
        or (abs(d3) <= tol and _on_segment(p1, p2, q1, tol))
        or (abs(d4) <= tol and _on_segment(p1, p2, q2, tol))
    )


def _on_segment(a, b, p, tol):
    return (
        min(a[0], b[0]) - tol <= p[0] <= max(a[0], b[0]) + tol
        and min(a[1], b[1]) - tol <= p[1] <= max(a[1], b[1]) + tol
    )


def segments_intersect_many(a0, a1, b0, b1, tol=TOL):
    """Broadcast closed-segment intersection. Inputs are (..., 2) arrays."""

    def orient(p, q, r):
        return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (
            r[..., 0] - p[..., 0]
        )

    def within(p, q, r):
        lo = np.minimum(p, q) - tol
        hi = np.maximum(p, q) + tol
        return np.all((r >= lo) & (r <= hi), axis=-1)

    d1 = orient(b0, b1, a0)
    d2 = orient(b0, b1, a1)
    d3 = orient(a0, a1, b0)
    d4 = orient(a0, a1, b1)
    proper = (((d1 > tol) & (d2 < -tol)) | ((d1 < -tol) & (d2 > tol))) & (
        ((d3 > tol) & (d4 < -tol)) | ((d3 < -tol) & (d4 > tol))
    )
    touch = (
        ((np.abs(d1) <= tol) & within(b0, b1, a0))
        | ((np.abs(d2) <= tol) & within(b0, b1, a1))
        | ((np.abs(d3) <= tol) & within(a0, a1, b0))
        | ((np.abs(d4) <= tol) & within(a0, a1, b1))
    )
    return proper | touch


# ---------------------------------------------------------------------------
# Rings and polygons


@dataclass(frozen=True)
class Ring:
    """A closed simple polygonal chain; the closing edge is implicit."""

    vertices: tuple

    def __init__(self, vertices: Iterable):
        arr = as_points(list(vertices), "ring vertices")
        if len(arr) < 3:
            raise GeometryError("a ring needs at least 3 vertices")
        nxt = np.roll(arr, -1, axis=0)
        if np.any(np.hypot(*(nxt - arr).T) <= TOL):
            raise GeometryError("ring has repeated consecutive vertices")
        object.__setattr__(self, "vertices", tuple(Point2(float(x), float(y)) for x, y in arr))
        if abs(self.signed_area) <= TOL:
            raise GeometryError("ring has zero area")
        if not _ring_is_simple(arr):
            raise GeometryError("ring is self-intersecting")

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.vertices, dtype=float)
        arr.flags.writeable = False
        return arr

    def edges(self):
        arr = self.array
        return arr, np.roll(arr, -1, axis=0)

    @property
    def signed_area(self) -> float:
        a, b = self.edges()
        return 0.5 * float(np.sum(a[:, 0] * b[:, 1] - b[:, 0] * a[:, 1]))

    @property
    def length(self) -> float:
        a, b = self.edges()
        return float(np.sum(np.hypot(*(b - a).T)))


def _ring_is_simple(arr: np.ndarray) -> bool:
    n = len(arr)
    a0, a1 = arr, np.roll(arr, -1, axis=0)
    hit = segments_intersect_many(a0[:, None], a1[:, None], a0[None], a1[None])
    i, j = np.triu_indices(n, k=1)
    adjacent = (j == i + 1) | ((i == 0) & (j == n - 1))
    if np.any(hit[i[~adjacent], j[~adjacent]]):
        return False
    # Adjacent edges may share only their common vertex: reject folds back.
    for s in range(n):
        p, q, r = arr[s - 1], arr[s], arr[(s + 1) % n]
        u, v = p - q, r - q
        cross = u[0] * v[1] - u[1] * v[0]
        if abs(cross) <= TOL * max(1.0, np.hypot(*u) * np.hypot(*v)) and np.dot(u, v) > 0:
            return False
    return True


@dataclass(frozen=True)
class Component:
    outer: Ring
    holes: tuple = ()


@dataclass(frozen=True)
class PolygonSet:
    """One or more polygonal components, each with zero or more holes."""

    components: tuple

    def __init__(self, components: Iterable):
        comps = []
        for c in components:
            if isinstance(c, Component):
                comp = c
            elif isinstance(c, Ring):
                comp = Component(c, ())
            else:
                outer, holes = c
                comp = Component(
                    outer if isinstance(outer, Ring) else Ring(outer),
                    tuple(h if isinstance(h, Ring) else Ring(h) for h in holes),
                )
            comps.append(comp)
        if not comps:
            raise GeometryError("polygon set has no components")
        object.__setattr__(self, "components", tuple(comps))
        self._validate_holes()

    @classmethod
    def from_ring(cls, vertices, holes: Sequence = ()) -> "PolygonSet":
        return cls([(Ring(vertices), [Ring(h) for h in holes])])

    def rings(self):
        for comp in self.components:
            yield comp.outer
            yield from comp.holes

    def _validate_holes(self):
        for comp in self.components:
            outer = comp.outer.array
            for h in comp.holes:
                if not np.all(_in_ring(h.array, outer)) or _rings_touch(h, comp.outer):
                    raise GeometryError("hole is not strictly inside its outer ring")
            for a in range(len(comp.holes)):
                for b in range(a + 1, len(comp.holes)):
                    ha, hb = comp.holes[a], comp.holes[b]
                    if _rings_touch(ha, hb) or _ring_inside(ha, hb) or _ring_inside(hb, ha):
                        raise GeometryError("holes overlap")

    def bounds(self):
        """(xmin, ymin, xmax, ymax) over outer rings."""
        pts = np.vstack([c.outer.array for c in self.components])
        return (*pts.min(axis=0), *pts.max(axis=0))

    def edges(self):
        a = np.vstack([r.array for r in self.rings()])
        b = np.vstack([np.roll(r.array, -1, axis=0) for r in self.rings()])
        return a, b


def _rings_touch(a: Ring, b: Ring) -> bool:
    a0, a1 = a.edges()
    b0, b1 = b.edges()
    return bool(np.any(segments_intersect_many(a0[:, None], a1[:, None], b0[None], b1[None])))


def _ring_inside(inner: Ring, outer: Ring) -> bool:
    return bool(_in_ring(inner.array[:1], outer.array)[0])


def square(side: float = 1.0, origin=(0.0, 0.0)) -> Ring:
    x, y = origin
    return Ring([(x, y), (x + side, y), (x + side, y + side), (x, y + side)])


# ---------------------------------------------------------------------------
# Measures


def perimeter_length(poly: PolygonSet) -> float:
    return float(sum(r.length for r in poly.rings()))


def polygon_area(poly: PolygonSet) -> float:
    total = 0.0
    for comp in poly.components:
        total += abs(comp.outer.signed_area) - sum(abs(h.signed_area) for h in comp.holes)
    return total


# ---------------------------------------------------------------------------
# Containment


def _on_ring(pts: np.ndarray, ring: np.ndarray, tol=TOL) -> np.ndarray:
    a = ring[None, :, :]
    b = np.roll(ring, -1, axis=0)[None, :, :]
    p = pts[:, None, :]
    ab = b - a
    t = np.clip(np.sum((p - a) * ab, axis=-1) / np.sum(ab * ab, axis=-1), 0.0, 1.0)
    proj = a + t[..., None] * ab
    d = np.hypot(*(p - proj).transpose(2, 0, 1))
    return np.any(d <= tol, axis=1)


def _in_ring(pts: np.ndarray, ring: np.ndarray) -> np.ndarray:
    """Even-odd crossing test, boundary excluded (handled separately)."""
    x, y = pts[:, 0:1], pts[:, 1:2]
    ax, ay = ring[None, :, 0], ring[None, :, 1]
    bx, by = np.roll(ring[:, 0], -1)[None], np.roll(ring[:, 1], -1)[None]
    straddle = (ay > y) != (by > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xcross = ax + (y - ay) * (bx - ax) / (by - ay)
    crossings = np.sum(straddle & (x < xcross), axis=1)
    return (crossings % 2) == 1


def points_in_polygon(points, poly: PolygonSet) -> np.ndarray:
    """Vectorized closed containment test for an (n, 2) array of points."""
    pts = as_points(points)
    out = np.zeros(len(pts), dtype=bool)
    if len(pts) == 0:
        return out
    for comp in poly.components:
        outer = comp.outer.array
        inside = _in_ring(pts, outer) | _on_ring(pts, outer)
        for h in comp.holes:
            ha = h.array
            inside &= ~(_in_ring(pts, ha) & ~_on_ring(pts, ha))
        out |= inside
    return out


def point_in_polygon(p, poly: PolygonSet) -> bool:
    return bool(points_in_polygon([p], poly)[0])


def cells_intersect_polygon(centers, side: float, poly: PolygonSet) -> np.ndarray:
    """For each closed axis-aligned square cell, whether it meets the closed polygon."""
    if side <= 0:
        raise GeometryError("cell side must be positive")
    c = as_points(centers, "cell centers")
    h = side / 2.0
    offs = np.array([[-h, -h], [h, -h], [h, h], [-h, h]])
    corners = c[:, None, :] + offs[None]  # (C, 4, 2)
    probe = np.concatenate([c[:, None, :], corners], axis=1).reshape(-1, 2)
    hit = points_in_polygon(probe, poly).reshape(len(c), 5).any(axis=1)

    verts = np.vstack([r.array for r in poly.rings()])
    rest = ~hit
    if np.any(rest):
        d = np.abs(verts[None, :, :] - c[rest][:, None, :])
        hit[rest] = np.any(np.all(d <= h + TOL, axis=-1), axis=1)
    rest = ~hit
    if np.any(rest):
        e0, e1 = poly.edges()
        cc = corners[rest]
        s0, s1 = cc, np.roll(cc, -1, axis=1)  # (R, 4, 2) cell edges
        cross = segments_intersect_many(
            s0[:, :, None, :], s1[:, :, None, :], e0[None, None], e1[None, None]
        )
        hit[rest] = cross.reshape(len(cc), -1).any(axis=1)
    return hit


def cell_intersects_polygon(cell_center, side: float, poly: PolygonSet) -> bool:
    return bool(cells_intersect_polygon([cell_center], side, poly)[0])


# ---------------------------------------------------------------------------
# Minimum enclosing disc (randomized incremental)


def min_enclosing_disc(points, rng=None) -> Disc:
    """Smallest disc containing every point, in expected linear time.

    ``rng`` seeds the input shuffle; pass a seed or ``np.random.Generator``
    for reproducible runs.
    """
    pts = as_points(points)
    n = len(pts)
    if n == 0:
        raise GeometryError("empty point set")
    if n == 1:
        return Disc(Point2(float(pts[0, 0]), float(pts[0, 1])), 0.0)
    rng = np.random.default_rng(rng)
    pts = pts[rng.permutation(n)]
    if n <= _SMALL_MED:
        cx, cy, r = _med_small([(float(x), float(y)) for x, y in pts])
    else:
        cx, cy, r = _med_vec(pts)
    return Disc(Point2(cx, cy), r)


def tiny_enclosing_disc(points) -> Disc:
    """Minimum disc of a handful of points, no shuffle or validation."""
    cx, cy, r = _med_small([(float(x), float(y)) for x, y in points])
    return Disc(Point2(cx, cy), r)


def disc_through(points, p) -> Disc:
    """Minimum disc of ``points`` plus ``p``, given ``p`` lies on its boundary.

    That holds whenever ``p`` falls outside the minimum disc of ``points``.
    Pass the points in random order for expected linear time.
    """
    cx, cy, r = _small_one([(float(x), float(y)) for x, y in points], (float(p[0]), float(p[1])))
    return Disc(Point2(cx, cy), r)


def _med_small(pts):
    c = None
    for i, p in enumerate(pts):
        if c is None or not _inside(c, p):
            c = _small_one(pts[: i + 1], p)
    return c


def _small_one(pts, p):
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(pts):
        if not _inside(c, q):
            if c[2] == 0.0:
                c = _diameter(p, q)
            else:
                c = _small_two(pts[: i + 1], p, q)
    return c


def _small_two(pts, p, q):
    circ = _diameter(p, q)
    left = right = None
    px, py = p
    qx, qy = q
    for s in pts:
        if _inside(circ, s):
            continue
        cross = _orient(px, py, qx, qy, s[0], s[1])
        c = _circumcircle(p, q, s)
        if c is None:
            continue
        cc = _orient(px, py, qx, qy, c[0], c[1])
        if cross > 0.0 and (left is None or cc > _orient(px, py, qx, qy, left[0], left[1])):
            left = c
        elif cross < 0.0 and (right is None or cc < _orient(px, py, qx, qy, right[0], right[1])):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _inside(c, p):
    return math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] + TOL


def _diameter(a, b):
    cx, cy = (a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0
    return (cx, cy, max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1])))


def _circumcircle(a, b, c):
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2.0
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + (
        (ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)
    ) / d
    y = oy + (
        (ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)
    ) / d
    r = max(math.hypot(x - a[0], y - a[1]), math.hypot(x - b[0], y - b[1]), math.hypot(x - c[0], y - c[1]))
    return (x, y, r)


def _med_vec(pts: np.ndarray):
    # Welzl on a growing core set; each round adds the farthest uncovered point.
    x, y = pts[:, 0], pts[:, 1]
    first = (float(x[0]), float(y[0]))
    far = int(np.argmax(np.hypot(x - first[0], y - first[1])))
    core = [first, (float(x[far]), float(y[far]))]
    while True:
        c = _med_small(core)
        d = np.hypot(x - c[0], y - c[1])
        j = int(np.argmax(d))
        if d[j] <= c[2] + TOL:
            return c
        core.append((float(x[j]), float(y[j])))
