"""Grid-restricted cover model and its feasibility solvers.

For a probe radius ``r`` the model asks whether at most ``k`` grid-cell
centers can be chosen so that every sample lies within ``r`` of one of
them.  This is a cardinality-bounded set-cover decision problem; the
built-in solver decides it exactly by branch and bound.  Any callable
mapping a :class:`CoverModel` to a :class:`FeasibilityOutcome` can be
plugged in instead (see :class:`HighsSolver`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .cont import binary_search_radius
from .deployment import Deployment, covering_radius, verify_cover  # noqa: F401  (re-export)
from .geometry import TOL, as_points, perimeter_length, polygon_area
from .gonzalez import farthest_first
from .sampling import SampleSet, grid_for, sample_perimeter, sample_region

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

DEFAULT_NODE_BUDGET = 5_000_000
_QUICK_NODES = 200


class SolverBudgetExceeded(RuntimeError):
    """A feasibility probe ran out of branch-and-bound nodes."""


@dataclass(frozen=True, eq=False)
class CoverModel:
    """Sample-by-candidate incidence ``incidence[l, j]``: candidate ``j`` is
    within ``r`` of sample ``l``.  ``coverage`` gives the same as sorted
    index lists.
    """

    candidates: np.ndarray
    incidence: np.ndarray = field(repr=False)
    k: int
    r: float

    @classmethod
    def from_coverage(cls, candidates, coverage, k: int, r: float = 0.0) -> "CoverModel":
        cand = np.asarray(candidates, dtype=float).reshape(-1, 2)
        inc = np.zeros((len(coverage), len(cand)), dtype=bool)
        for l, cov in enumerate(coverage):
            inc[l, list(cov)] = True
        return cls(cand, inc, int(k), float(r))

    @cached_property
    def coverage(self) -> tuple:
        return tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in self.incidence)

    @property
    def n_samples(self) -> int:
        return self.incidence.shape[0]

    @property
    def n_candidates(self) -> int:
        return len(self.candidates)

    @property
    def trivially_infeasible(self) -> bool:
        return not bool(np.all(self.incidence.any(axis=1)))


@dataclass(frozen=True)
class FeasibilityOutcome:
    status: str
    selected: tuple | None = None
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def __bool__(self):
        return self.feasible


Solver = Callable[[CoverModel], FeasibilityOutcome]


def _distances(candidates: np.ndarray, points: np.ndarray) -> np.ndarray:
    """(N, C) sample-to-candidate distances."""
    return np.hypot(points[:, None, 0] - candidates[None, :, 0], points[:, None, 1] - candidates[None, :, 1])


def _model_from_distances(candidates, dist, k, r) -> CoverModel:
    return CoverModel(candidates, dist <= r + TOL, int(k), float(r))


def build_cover_model(candidates, samples, k: int, r: float) -> CoverModel:
    cand = as_points(candidates, "candidates")
    if len(cand) == 0:
        raise ValueError("no candidate centers")
    if r < 0:
        raise ValueError("r must be non-negative")
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    pts = samples.points if isinstance(samples, SampleSet) else as_points(samples, "samples")
    return _model_from_distances(cand, _distances(cand, pts), k, r)


# ---------------------------------------------------------------------------
# Bitset helpers


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _masks_from_incidence(inc: np.ndarray) -> list:
    if inc.shape[1] == 0:
        return [0] * inc.shape[0]
    packed = np.packbits(inc, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _model_masks(model: CoverModel):
    """(candidate masks per sample, sample masks per candidate)."""
    inc = np.asarray(model.incidence, dtype=bool)
    return _masks_from_incidence(inc), _masks_from_incidence(inc.T)


def greedy_cover(sample_masks: Sequence[int], universe: int, limit: int):
    """Repeatedly take the candidate covering most uncovered samples."""
    chosen, left = [], universe
    while left and len(chosen) < limit:
        best, gain = -1, 0
        for c, m in enumerate(sample_masks):
            g = (m & left).bit_count()
            if g > gain:
                best, gain = c, g
        if best < 0:
            break
        chosen.append(best)
        left &= ~sample_masks[best]
    return chosen if not left else None


def _reduce(cand_of: list, samp_of: list):
    """Drop dominated candidates and samples until nothing changes.

    Returns the surviving (sample ids, candidate ids).
    """
    samples = {l for l, m in enumerate(cand_of) if m}
    cands = {c for c, m in enumerate(samp_of) if m}
    cand_of = list(cand_of)
    samp_of = list(samp_of)
    changed = True
    while changed:
        changed = False
        alive_s = sum(1 << l for l in samples)
        alive_c = sum(1 << c for c in cands)
        # Candidate c is useless if another covers a superset of its samples.
        for c in sorted(cands):
            mc = samp_of[c] & alive_s
            if not mc:
                cands.discard(c)
                changed = True
                continue
            pivot = (mc & -mc).bit_length() - 1
            for d in _bits(cand_of[pivot] & alive_c):
                if d == c or d not in cands:
                    continue
                md = samp_of[d] & alive_s
                if mc & ~md == 0 and (md != mc or d < c):
                    cands.discard(c)
                    changed = True
                    break
        alive_c = sum(1 << c for c in cands)
        # Sample l is implied if some other sample's candidates are a subset of l's.
        for l in sorted(samples):
            ml = cand_of[l] & alive_c
            pivot = (ml & -ml).bit_length() - 1
            for o in _bits(samp_of[pivot]):
                if o == l or o not in samples:
                    continue
                mo = cand_of[o] & alive_c
                if mo & ~ml == 0 and (mo != ml or o < l):
                    samples.discard(l)
                    changed = True
                    break
    return sorted(samples), sorted(cands)


class _OutOfNodes(Exception):
    pass


class BranchAndBound:
    """Exact feasibility by branching on the sample with fewest candidates.

    Nodes are pruned by a disjoint-sample packing bound and by
    ``budget * max_coverage < uncovered``.  Sibling branches exclude the
    candidates already tried, and candidates dominated within the current
    subproblem are never branched on.
    """

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET, preprocess: bool = True):
        if node_budget < 1:
            raise ValueError("node_budget must be positive")
        self.node_budget = int(node_budget)
        self.preprocess = preprocess

    def __call__(self, model: CoverModel) -> FeasibilityOutcome:
        if model.trivially_infeasible:
            return FeasibilityOutcome(INFEASIBLE)
        if model.n_samples == 0:
            return FeasibilityOutcome(FEASIBLE, ())
        cand_of, samp_of = _model_masks(model)
        universe = (1 << model.n_samples) - 1
        quick = greedy_cover(samp_of, universe, model.k)
        if quick is not None:
            return FeasibilityOutcome(FEASIBLE, tuple(sorted(quick)))

        self._nodes = 0
        if self.preprocess:
            # Small trees are cheaper to search than to reduce.
            out = self._run(cand_of, samp_of, range(model.n_samples), range(model.n_candidates),
                            model.k, min(self.node_budget, _QUICK_NODES))
            if out.status != UNKNOWN:
                return out
            s_ids, c_ids = _reduce(cand_of, samp_of)
        else:
            s_ids = list(range(model.n_samples))
            c_ids = [c for c in range(model.n_candidates) if samp_of[c]]
        return self._run(cand_of, samp_of, s_ids, c_ids, model.k, self.node_budget)

    def _run(self, cand_of, samp_of, s_ids, c_ids, k, limit):
        s_ids, c_ids = list(s_ids), list(c_ids)
        s_pos = {l: i for i, l in enumerate(s_ids)}
        c_pos = {c: i for i, c in enumerate(c_ids)}
        if len(s_pos) == len(cand_of) and len(c_pos) == len(samp_of):
            self._samp, self._cand = samp_of, cand_of
        else:
            self._samp = [sum(1 << s_pos[l] for l in _bits(samp_of[c]) if l in s_pos) for c in c_ids]
            self._cand = [sum(1 << c_pos[c] for c in _bits(cand_of[l]) if c in c_pos) for l in s_ids]
        self._limit = limit
        try:
            found = self._search((1 << len(s_ids)) - 1, (1 << len(c_ids)) - 1, k)
        except _OutOfNodes:
            return FeasibilityOutcome(UNKNOWN, None, self._nodes)
        if found is None:
            return FeasibilityOutcome(INFEASIBLE, None, self._nodes)
        return FeasibilityOutcome(FEASIBLE, tuple(sorted(c_ids[c] for c in found)), self._nodes)

    def _search(self, uncovered: int, avail: int, budget: int):
        self._nodes += 1
        if self._nodes > self._limit:
            raise _OutOfNodes
        if not uncovered:
            return []
        if budget == 0:
            return None
        cand, samp = self._cand, self._samp

        rows = []
        for l in _bits(uncovered):
            m = cand[l] & avail
            if not m:
                return None
            rows.append((m.bit_count(), l, m))
        rows.sort()
        if budget == 1 and len(rows) > 1:
            common = avail
            for _, _, m in rows:
                common &= m
                if not common:
                    return None
            c = (common & -common).bit_length() - 1
            return [c]

        packing, used = 0, 0
        for _, _, m in rows:
            if not m & used:
                used |= m
                packing += 1
                if packing > budget:
                    return None

        n_unc = len(rows)
        best_cov = 0
        for c in _bits(_union(rows)):
            g = (samp[c] & uncovered).bit_count()
            if g > best_cov:
                best_cov = g
        if best_cov * budget < n_unc:
            return None

        _, _, branch = rows[0]
        options = sorted(
            ((samp[c] & uncovered, c) for c in _bits(branch)),
            key=lambda t: -t[0].bit_count(),
        )
        kept = []
        for cov, c in options:
            if any(cov & ~k == 0 for k, _ in kept):
                continue
            kept.append((cov, c))
        for cov, c in kept:
            sub = self._search(uncovered & ~cov, avail, budget - 1)
            if sub is not None:
                return [c] + sub
            avail &= ~(1 << c)
        return None


def _union(rows):
    u = 0
    for _, _, m in rows:
        u |= m
    return u


def solve_feasibility(
    model: CoverModel, node_budget: int = DEFAULT_NODE_BUDGET, preprocess: bool = True
) -> FeasibilityOutcome:
    return BranchAndBound(node_budget, preprocess)(model)


class HighsSolver:
    """External backend: the same decision via ``scipy.optimize.milp`` (HiGHS)."""

    def __init__(self, time_limit: float | None = None):
        self.time_limit = time_limit

    def __call__(self, model: CoverModel) -> FeasibilityOutcome:
        from scipy.optimize import Bounds, LinearConstraint, milp
        from scipy.sparse import csr_matrix

        if model.trivially_infeasible:
            return FeasibilityOutcome(INFEASIBLE)
        n = model.n_candidates
        rows, cols = [], []
        for l, cov in enumerate(model.coverage):
            rows.extend([l] * len(cov))
            cols.extend(cov)
        a = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(model.n_samples, n))
        cons = [
            LinearConstraint(a, lb=1, ub=np.inf),
            LinearConstraint(np.ones((1, n)), lb=0, ub=model.k),
        ]
        opts = {} if self.time_limit is None else {"time_limit": self.time_limit}
        res = milp(np.zeros(n), constraints=cons, integrality=np.ones(n), bounds=Bounds(0, 1), options=opts)
        if res.status == 0:
            return FeasibilityOutcome(FEASIBLE, tuple(int(j) for j in np.flatnonzero(res.x > 0.5)))
        if res.status == 2:
            return FeasibilityOutcome(INFEASIBLE)
        return FeasibilityOutcome(UNKNOWN)


# ---------------------------------------------------------------------------
# Binary-search drivers


def search_grid(samples, candidates, k, lo, hi, epsilon, solver, snap_radii=False, method_info=None):
    """Binary search on ``r`` over a fixed candidate set; ``hi`` grows until feasible."""
    method_info = method_info or {}
    pts = samples.points
    dist = _distances(candidates, pts)
    probes = []

    def probe(r):
        model = _model_from_distances(candidates, dist, k, r)
        out = solver(model)
        probes.append((float(r), out.status, out.nodes))
        if out.status == UNKNOWN:
            raise SolverBudgetExceeded(
                f"solver budget exhausted at r={r:.6g}; increase node_budget or epsilon"
            )
        return out

    # hi is a valid bound for the continuous problem; the grid may need slack.
    best, grow = probe(hi), 0
    while not best:
        grow += 1
        if grow > 60:
            raise RuntimeError("no feasible radius found")
        hi = hi + max(hi, epsilon)
        best = probe(hi)
    lo = min(lo, hi)
    if snap_radii:
        radii = np.unique(dist[(dist > lo) & (dist < hi)])
        i, j = -1, len(radii)  # radii[i] infeasible (or lo), radii[j] feasible (or hi)
        while j - i > 1:
            mid = (i + j) // 2
            out = probe(float(radii[mid]))
            if out:
                j, best = mid, out
            else:
                i = mid
        hi = float(radii[j]) if j < len(radii) else hi
        lo = float(radii[i]) if i >= 0 else lo
    else:
        best, lo, hi, _ = binary_search_radius(probe, lo, hi, epsilon, first=best)
    centers = candidates[list(best.selected)]
    radius = covering_radius(pts, centers)
    info = {
        **method_info,
        "r_lo": float(lo),
        "r_hi": float(hi),
        "probes": probes,
        "N": len(samples),
        "selected": tuple(best.selected),
    }
    return Deployment(centers, radius, "ilp", info)


def _solver_for(solver, node_budget):
    return solver if solver is not None else BranchAndBound(node_budget)


def solve_ilp_perimeter(
    poly,
    k: int,
    epsilon: float,
    grid_side: float | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    snap_radii: bool = False,
    solver: Solver | None = None,
    samples: SampleSet | None = None,
) -> Deployment:
    """Perimeter guarding with centers restricted to grid-cell centers."""
    if samples is None:
        samples = sample_perimeter(poly, epsilon)
    grid = grid_for(poly, grid_side or epsilon)
    hi = perimeter_length(poly) / (2 * k)
    return search_grid(
        samples,
        grid.centers(),
        k,
        0.0,
        hi,
        epsilon,
        _solver_for(solver, node_budget),
        snap_radii,
        {"mode": "perimeter", "grid": grid.shape},
    )


def solve_ilp_region(
    poly,
    k: int,
    epsilon: float,
    grid_side: float | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    snap_radii: bool = False,
    warm_start: bool = True,
    solver: Solver | None = None,
    samples: SampleSet | None = None,
) -> Deployment:
    """Region guarding; bounds from area and, optionally, the farthest-first radius."""
    if samples is None:
        samples, grid = sample_region(poly, epsilon)
    else:
        grid = grid_for(poly, epsilon)
    if grid_side is not None and not math.isclose(grid_side, epsilon):
        grid = grid_for(poly, grid_side)
    lo = math.sqrt(polygon_area(poly) / (k * math.pi))
    hi = perimeter_length(poly)
    if warm_start:
        g = farthest_first(samples, k).radius
        hi = min(hi, g)
        lo = max(lo, g / 2.0)
    return search_grid(
        samples,
        grid.centers(),
        k,
        lo,
        hi,
        epsilon,
        _solver_for(solver, node_budget),
        snap_radii,
        {"mode": "region", "grid": grid.shape},
    )
