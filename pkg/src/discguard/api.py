"""One entry point over all methods and modes."""

from __future__ import annotations

from typing import NamedTuple

from .cont import solve_cont
from .deployment import METHODS, CoverCheck, Deployment, verify_cover
from .gonzalez import farthest_first
from .ilp import DEFAULT_NODE_BUDGET, solve_ilp_perimeter, solve_ilp_region
from .sampling import PERIMETER, REGION, SampleSet, sample_perimeter, sample_region


class IncompatibleMethod(ValueError):
    """The method does not support the requested mode."""


class Solution(NamedTuple):
    deployment: Deployment
    samples: SampleSet
    check: CoverCheck


def make_samples(poly, mode: str, epsilon: float) -> SampleSet:
    if mode == PERIMETER:
        return sample_perimeter(poly, epsilon)
    if mode == REGION:
        return sample_region(poly, epsilon)[0]
    raise ValueError(f"unknown mode {mode!r}")


def solve(
    poly,
    mode: str,
    method: str,
    k: int,
    epsilon: float,
    *,
    grid_side: float | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    snap_radii: bool = False,
    seed: int = 0,
    start_index: int = 0,
    solver=None,
    samples: SampleSet | None = None,
) -> Solution:
    """Sample, solve, and verify the cover against the same samples."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "cont" and mode != PERIMETER:
        raise IncompatibleMethod("method 'cont' requires mode 'perimeter'")
    if samples is None:
        samples = make_samples(poly, mode, epsilon)
    if method == "cont":
        dep = solve_cont(poly, k, epsilon, rng=seed, samples=samples)
    elif method == "gonzalez":
        dep = farthest_first(samples, k, start_index)
    elif mode == PERIMETER:
        dep = solve_ilp_perimeter(poly, k, epsilon, grid_side, node_budget, snap_radii, solver, samples)
    else:
        dep = solve_ilp_region(poly, k, epsilon, grid_side, node_budget, snap_radii, True, solver, samples)
    return Solution(dep, samples, verify_cover(dep, samples))
