"""Benchmark polygons, fixtures, and problem/solution documents."""

from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema
import numpy as np

from .deployment import Deployment, verify_cover
from .geometry import GeometryError, PolygonSet, Ring, segments_intersect_many
from .sampling import PERIMETER, REGION, SampleSet

MAX_RETRIES = 32


@dataclass(frozen=True)
class InstanceSpec:
    vertex_count: int
    seed: int
    domain_box: tuple = (0.0, 0.0, 1.0, 1.0)

    def __post_init__(self):
        if self.vertex_count < 3:
            raise ValueError("need at least 3 vertices")


def _nearest_neighbor_tour(pts: np.ndarray) -> list:
    n = len(pts)
    left = np.ones(n, dtype=bool)
    tour = [0]
    left[0] = False
    for _ in range(n - 1):
        d = np.hypot(*(pts - pts[tour[-1]]).T)
        d[~left] = np.inf
        j = int(np.argmin(d))
        tour.append(j)
        left[j] = False
    return tour


def _crossing(pts: np.ndarray, tour: list):
    """First pair of non-adjacent tour edges (i, j), i < j, that intersect."""
    p = pts[tour]
    a0, a1 = p, np.roll(p, -1, axis=0)
    hit = segments_intersect_many(a0[:, None], a1[:, None], a0[None], a1[None], tol=0.0)
    n = len(tour)
    hit = np.triu(hit, k=2)
    hit[0, n - 1] = False
    ij = np.argwhere(hit)
    if len(ij) == 0:
        return None
    return int(ij[0, 0]), int(ij[0, 1])


def tour_length(pts: np.ndarray, tour) -> float:
    p = pts[list(tour)]
    return float(np.sum(np.hypot(*(np.roll(p, -1, axis=0) - p).T)))


def two_opt(pts: np.ndarray, tour: list, on_move=None) -> list:
    """Best-improvement 2-opt until no exchange shortens the tour.

    A proper crossing always admits a shortening exchange, so the result has
    no crossing edges in general position.
    """
    tour = np.asarray(tour)
    n = len(tour)
    if n < 4:
        return list(tour)
    improved = True
    while improved:
        improved = False
        for i in range(n - 2):
            p = pts[tour]
            a, b = p[i], p[i + 1]
            j = np.arange(i + 2, n if i > 0 else n - 1)
            if len(j) == 0:
                continue
            c, d = p[j], p[(j + 1) % n]
            delta = (
                np.hypot(*(c - a).T) + np.hypot(*(d - b).T)
                - np.hypot(*(b - a)) - np.hypot(*(d - c).T)
            )
            m = int(np.argmin(delta))
            if delta[m] < -1e-12:
                jj = int(j[m])
                tour[i + 1 : jj + 1] = tour[i + 1 : jj + 1][::-1]
                improved = True
                if on_move is not None:
                    on_move(list(tour))
    return list(tour)


def untangle(pts: np.ndarray, tour: list, on_move=None) -> list:
    """2-opt moves on crossing edge pairs until the tour is simple.

    Each move reverses the path between the two crossing edges, which
    strictly shortens the tour, so the loop terminates.
    """
    tour = list(tour)
    while True:
        pair = _crossing(pts, tour)
        if pair is None:
            return tour
        i, j = pair
        tour[i + 1 : j + 1] = tour[i + 1 : j + 1][::-1]
        if on_move is not None:
            on_move(tour)


def random_simple_polygon(spec: InstanceSpec) -> PolygonSet:
    """Simple polygon through uniform random vertices along a 2-opt tour."""
    x0, y0, x1, y1 = spec.domain_box
    for attempt in range(MAX_RETRIES):
        seed = spec.seed if attempt == 0 else [spec.seed, attempt]
        rng = np.random.default_rng(seed)
        pts = rng.uniform((x0, y0), (x1, y1), size=(spec.vertex_count, 2))
        tour = untangle(pts, two_opt(pts, _nearest_neighbor_tour(pts)))
        try:
            return PolygonSet([Ring(pts[tour])])
        except GeometryError:
            continue
    raise GeometryError(f"no simple polygon after {MAX_RETRIES} attempts for seed {spec.seed}")


def plus_polygon(arm_width: float = 1.0, arm_length: float = 1.0) -> PolygonSet:
    """Axis-aligned plus shape centered at the origin (12 vertices)."""
    if arm_width <= 0 or arm_length <= 0:
        raise GeometryError("arm dimensions must be positive")
    w, e = arm_width / 2.0, arm_width / 2.0 + arm_length
    ring = [
        (w, -w), (e, -w), (e, w), (w, w), (w, e), (-w, e),
        (-w, w), (-e, w), (-e, -w), (-w, -w), (-w, -e), (w, -e),
    ]
    return PolygonSet([Ring(ring)])


def unit_square() -> PolygonSet:
    return PolygonSet([Ring([(0, 0), (1, 0), (1, 1), (0, 1)])])


# Representative scenario outlines in arbitrary units, not surveyed data.
CASTLE = [
    (0, 0), (4, -0.6), (7.5, 0.2), (9, 2), (8.4, 4.5), (9.6, 6.5), (8, 9),
    (5.5, 9.4), (4.5, 8), (2.5, 9.2), (0.4, 8), (-0.8, 5.5), (0.6, 4), (-0.6, 2),
]
MUSEUM = [
    (0, 0), (12, 0), (12, 2), (10, 2), (10, 6), (12, 6), (12, 8), (0, 8),
    (0, 6), (2, 6), (2, 2), (0, 2),
]
MUSEUM_COURTYARDS = [
    [(3.5, 3), (5.5, 3), (5.5, 5), (3.5, 5)],
    [(6.5, 3), (8.5, 3), (8.5, 5), (6.5, 5)],
]


def castle_polygon() -> PolygonSet:
    return PolygonSet([Ring(CASTLE)])


def museum_polygon() -> PolygonSet:
    return PolygonSet([(Ring(MUSEUM), [Ring(h) for h in MUSEUM_COURTYARDS])])


FIXTURES = {
    "square": unit_square,
    "plus": plus_polygon,
    "castle": castle_polygon,
    "museum": museum_polygon,
}


# ---------------------------------------------------------------------------
# Documents

_RING = {"type": "array", "minItems": 3, "items": {
    "type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}}}

PROBLEM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["mode", "k", "epsilon", "polygon"],
    "properties": {
        "mode": {"enum": [PERIMETER, REGION]},
        "k": {"type": "integer", "minimum": 1},
        "epsilon": {"type": "number", "exclusiveMinimum": 0},
        "polygon": {
            "type": "object",
            "additionalProperties": False,
            "required": ["components"],
            "properties": {
                "components": {"type": "array", "minItems": 1, "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["outer"],
                    "properties": {"outer": _RING, "holes": {"type": "array", "items": _RING}},
                }},
            },
        },
    },
}

SOLUTION_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["method", "radius", "centers", "verify"],
    "properties": {
        "method": {"enum": ["cont", "gonzalez", "ilp"]},
        "radius": {"type": "number", "minimum": 0},
        "centers": {"type": "array", "minItems": 1, "items": {
            "type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}}},
        "verify": {
            "type": "object",
            "additionalProperties": False,
            "required": ["ok", "worst_gap"],
            "properties": {"ok": {"type": "boolean"}, "worst_gap": {"type": "number"}},
        },
    },
}


class DocumentError(ValueError):
    """Malformed problem or solution document."""


def _parse(text: str, schema: dict, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{kind}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(f"{kind}: {where}: {exc.message}") from None
    return doc


def polygon_to_dict(poly: PolygonSet) -> dict:
    return {"components": [
        {"outer": [list(v) for v in c.outer.vertices], "holes": [[list(v) for v in h.vertices] for h in c.holes]}
        for c in poly.components
    ]}


def polygon_from_dict(doc: dict) -> PolygonSet:
    return PolygonSet([(c["outer"], c.get("holes", [])) for c in doc["components"]])


def samples_to_dict(samples: SampleSet) -> dict:
    return {
        "kind": samples.kind,
        "epsilon": samples.epsilon,
        "points": samples.points.tolist(),
        "chains": [list(c) for c in samples.chains],
    }


def samples_from_dict(doc: dict) -> SampleSet:
    return SampleSet(np.asarray(doc["points"], dtype=float), doc["epsilon"], doc["kind"],
                     tuple(tuple(c) for c in doc["chains"]))


@dataclass(frozen=True)
class Problem:
    polygon: PolygonSet
    mode: str
    k: int
    epsilon: float


def load_problem(text: str) -> Problem:
    doc = _parse(text, PROBLEM_SCHEMA, "problem")
    try:
        poly = polygon_from_dict(doc["polygon"])
    except GeometryError as exc:
        raise DocumentError(f"problem: polygon: {exc}") from None
    return Problem(poly, doc["mode"], doc["k"], float(doc["epsilon"]))


def dump_problem(poly: PolygonSet, mode: str, k: int, epsilon: float) -> str:
    doc = {"mode": mode, "k": int(k), "epsilon": float(epsilon), "polygon": polygon_to_dict(poly)}
    return json.dumps(doc, indent=2) + "\n"


def save_deployment(deployment: Deployment, samples) -> str:
    check = verify_cover(deployment, samples)
    doc = {
        "method": deployment.method,
        "radius": deployment.radius,
        "centers": deployment.centers.tolist(),
        "verify": {"ok": bool(check.ok), "worst_gap": check.worst_gap},
    }
    return json.dumps(doc, indent=2) + "\n"


def load_deployment(text: str) -> tuple:
    """Returns ``(deployment, verify)`` where ``verify`` is the stored check."""
    doc = _parse(text, SOLUTION_SCHEMA, "solution")
    return Deployment(np.asarray(doc["centers"], dtype=float), doc["radius"], doc["method"]), doc["verify"]
