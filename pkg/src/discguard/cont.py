"""Perimeter guarding where each disc covers one contiguous run of samples.

A feasibility check builds a reach table ``M`` (how many consecutive samples
starting at each index fit in one disc of radius ``r``) with a sliding
window, then tiles greedily from a short list of starting samples.  A binary
search over ``r`` on top of that gives an ``OPT + epsilon`` solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deployment import Deployment
from .geometry import TOL, Disc, disc_through, min_enclosing_disc, perimeter_length, tiny_enclosing_disc
from .sampling import PERIMETER, SampleSet, sample_perimeter


@dataclass(frozen=True)
class ContFeasibilityResult:
    feasible: bool
    witness: Deployment | None = None
    discs_used: int | None = None
    # (chain, start, length) per disc, start relative to the chain.
    runs: tuple = ()

    def __bool__(self):
        return self.feasible


def _chain_points(samples) -> np.ndarray:
    if isinstance(samples, SampleSet):
        if samples.kind != PERIMETER:
            raise ValueError("perimeter samples required")
        if len(samples.chains) != 1:
            raise ValueError("single chain required")
        return samples.points
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) == 0:
        raise ValueError("samples must be a non-empty (n, 2) array")
    return pts


def _window(pts, start, length):
    n = len(pts)
    idx = (start + np.arange(length)) % n
    return pts[idx]


def reach_table(pts: np.ndarray, r: float, rng=None) -> np.ndarray:
    """``M[i]``: the longest run ``o_i, o_{i+1}, ...`` enclosable with radius ``r``.

    Assumes the whole chain does not fit in one disc, so every ``M[i] < N``.
    """
    n = len(pts)
    rng = np.random.default_rng(rng)
    pl = [tuple(q) for q in pts.tolist()]
    reach = np.empty(n, dtype=np.int64)
    lim = r + TOL
    end = 0  # inclusive, unwrapped index
    # Enclosing disc of o_i..o_end with radius <= r (not necessarily minimal).
    cx, cy, cr = pl[0][0], pl[0][1], 0.0
    for i in range(n):
        if end < i:
            end = i
            cx, cy, cr = pl[i][0], pl[i][1], 0.0
        while end + 1 - i < n:
            p = pl[(end + 1) % n]
            gap = math.hypot(p[0] - cx, p[1] - cy)
            if gap <= lim:
                # Same center, grown radius still within r.
                cr = max(cr, gap)
                end += 1
                continue
            m = end + 1 - i
            if m < _VECTOR_WINDOW:
                disc = _extend(pl, i, m, p, r)
            else:
                disc = _extend_vec(pts, i, m, p, r)
            if disc is None:
                break
            (cx, cy), cr = disc
            end += 1
        reach[i] = end - i + 1
    return reach


# Window length from which numpy beats the pure-Python pass.
_VECTOR_WINDOW = 64


def _extend(pl, i, m, p, r):
    """Disc of o_i..o_{i+m-1} plus ``p`` if its radius is within r, else None.

    Grows a core set from the run's two ends; every core disc is a lower
    bound, so the loop can stop as soon as one exceeds ``r``.
    """
    n = len(pl)
    win = [pl[(i + t) % n] for t in range(m)]
    lim = r + TOL
    core = [win[0], p]
    while True:
        d = tiny_enclosing_disc(core)
        if d.radius > lim:
            return None
        (cx, cy), cr = d
        far = max(win, key=lambda q: (q[0] - cx) ** 2 + (q[1] - cy) ** 2)
        if math.hypot(far[0] - cx, far[1] - cy) <= cr + TOL:
            return d
        core.append(far)


def _extend_vec(pts, i, m, p, r):
    win = _window(pts, i, m)
    x, y = win[:, 0], win[:, 1]
    lim = r + TOL
    core = [tuple(win[0]), p]
    while True:
        d = tiny_enclosing_disc(core)
        if d.radius > lim:
            return None
        (cx, cy), cr = d
        dist = np.hypot(x - cx, y - cy)
        j = int(np.argmax(dist))
        if dist[j] <= cr + TOL:
            return d
        core.append((x[j], y[j]))


def _tile(reach, n, start, budget):
    """Greedy tiling from ``start``; returns disc count or None if over budget."""
    j, used = start, 0
    while j - start < n:
        if used == budget:
            return None
        j += int(reach[j % n])
        used += 1
    return used


def _chain_tiling(pts, r, budget, rng):
    """Best greedy tiling of one chain: (count, [(start, length), ...]) or None."""
    n = len(pts)
    whole = min_enclosing_disc(pts, rng)
    if whole.radius <= r + TOL:
        return 1, [(0, n)], [whole]
    if budget is not None and budget < 2:
        return None
    reach = reach_table(pts, r, rng)
    best = None
    limit = budget if budget is not None else n
    for start in range(min(int(reach[0]) + 1, n)):
        used = _tile(reach, n, start, limit if best is None else best[0] - 1)
        if used is not None and (best is None or used < best[0]):
            best = (used, start)
            if budget is not None:
                break
    if best is None:
        return None
    used, start = best
    runs, j = [], start
    while j - start < n:
        length = min(int(reach[j % n]), start + n - j)
        runs.append((j % n, length))
        j += length
    discs = [min_enclosing_disc(_window(pts, s, m), rng) for s, m in runs]
    return used, runs, discs


def _check_k(k):
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")


def _result(chain_tilings, r):
    centers, runs = [], []
    for c, (_, chain_runs, discs) in enumerate(chain_tilings):
        for (s, m), d in zip(chain_runs, discs):
            centers.append(d.center)
            runs.append((c, s, m))
    radius = max(d.radius for _, _, ds in chain_tilings for d in ds)
    witness = Deployment(np.asarray(centers), radius, "cont", {"probe_radius": float(r)})
    return ContFeasibilityResult(True, witness, len(centers), tuple(runs))


def cont_feasible(samples, k: int, r: float, rng=None) -> ContFeasibilityResult:
    """Can one chain be split into at most ``k`` runs, each inside a disc of radius ``r``?"""
    _check_k(k)
    if r < 0:
        raise ValueError("r must be non-negative")
    pts = _chain_points(samples)
    tiling = _chain_tiling(pts, r, int(k), np.random.default_rng(rng))
    if tiling is None:
        return ContFeasibilityResult(False)
    return _result([tiling], r)


def min_discs_for_chain(samples, r: float, rng=None) -> int:
    """Fewest contiguous runs of radius ``r`` that cover the chain."""
    if r < 0:
        raise ValueError("r must be non-negative")
    pts = _chain_points(samples)
    return _chain_tiling(pts, r, None, np.random.default_rng(rng))[0]


def cont_feasible_multi(samples: SampleSet, k: int, r: float, rng=None) -> ContFeasibilityResult:
    """Feasibility over several independent chains sharing a budget of ``k`` discs."""
    _check_k(k)
    if r < 0:
        raise ValueError("r must be non-negative")
    if samples.kind != PERIMETER:
        raise ValueError("perimeter samples required")
    rng = np.random.default_rng(rng)
    tilings, left = [], int(k)
    remaining_chains = len(samples.chains)
    for c in range(len(samples.chains)):
        remaining_chains -= 1
        # Every later chain needs at least one disc.
        budget = left - remaining_chains
        if budget < 1:
            return ContFeasibilityResult(False)
        t = _chain_tiling(samples.chain(c).points, r, budget, rng)
        if t is None:
            return ContFeasibilityResult(False)
        tilings.append(t)
        left -= t[0]
    return _result(tilings, r)


def binary_search_radius(probe, lo: float, hi: float, tol: float, max_iter: int = 200, first=None):
    """Shrink ``[lo, hi]`` to width ``<= tol`` around the smallest feasible radius.

    ``probe(r)`` returns a truthy witness when ``r`` is feasible.  ``hi`` must
    be feasible (``first`` may pass its already-computed witness); returns
    ``(witness_at_hi, lo, hi, probes)``.
    """
    best = probe(hi) if first is None else first
    if not best:
        raise ValueError(f"upper bound {hi} is infeasible")
    probes = 1
    if hi - lo > tol:
        cap = min(max_iter, math.ceil(math.log2((hi - lo) / tol)) + 2)
    else:
        cap = 0
    while hi - lo > tol and probes <= cap:
        mid = 0.5 * (lo + hi)
        res = probe(mid)
        probes += 1
        if res:
            hi, best = mid, res
        else:
            lo = mid
    return best, lo, hi, probes


def search_cont(samples: SampleSet, k: int, tol: float, hi: float | None = None, rng=0) -> Deployment:
    """Binary search on perimeter samples; ``hi`` defaults to one disc per chain."""
    _check_k(k)
    if k < len(samples.chains):
        raise ValueError(f"k={k} is fewer than the {len(samples.chains)} boundary chains")
    rng = np.random.default_rng(rng)
    first = None if hi is None else cont_feasible_multi(samples, k, hi, rng)
    if not first:
        # Each chain inside its own disc is always within budget here.
        per_chain = max(min_enclosing_disc(samples.chain(c).points, rng).radius for c in range(len(samples.chains)))
        hi = per_chain if hi is None else max(hi, per_chain)
        first = None
    res, lo, hi, probes = binary_search_radius(
        lambda r: cont_feasible_multi(samples, k, r, rng), 0.0, hi, tol, first=first
    )
    w = res.witness
    info = {"r_lo": lo, "r_hi": hi, "probes": probes, "N": len(samples), "runs": res.runs}
    return Deployment(w.centers, w.radius, "cont", info)


def solve_cont(poly, k: int, epsilon: float, rng=0, samples: SampleSet | None = None) -> Deployment:
    """Contiguous-run perimeter guarding, searching ``r`` on ``[0, len / 2k]``."""
    _check_k(k)
    if samples is None:
        samples = sample_perimeter(poly, epsilon)
    return search_cont(samples, k, epsilon, perimeter_length(poly) / (2 * k), rng)
