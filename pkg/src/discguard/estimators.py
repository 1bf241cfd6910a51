"""scikit-learn style wrappers.

The point-set estimators (:class:`FarthestFirstCover`, :class:`ContiguousCover`,
:class:`GridCover`) treat ``fit(X)`` as "choose centers guarding the rows of
X"; :class:`SensorPlacement` fits a polygon instead.  All of them predict the
index of the nearest center and transform to center distances, like KMeans.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cont import search_cont
from .deployment import Deployment, verify_cover
from .geometry import PolygonSet, Ring
from .gonzalez import farthest_first
from .ilp import DEFAULT_NODE_BUDGET, BranchAndBound, search_grid
from .sampling import PERIMETER, REGION, SampleSet, grid_for_bounds


def _check_points(X, estimator):
    X = check_array(X, dtype=np.float64, ensure_min_samples=1, estimator=estimator)
    if X.shape[1] != 2:
        raise ValueError(f"expected planar points with 2 columns, got {X.shape[1]}")
    return X


def _check_count(value, name):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


class _CoverMixin(ClusterMixin, TransformerMixin):
    """Shared predict/transform over ``cluster_centers_``."""

    def _store(self, X, dep: Deployment):
        self.deployment_ = dep
        self.cluster_centers_ = np.array(dep.centers)
        self.radius_ = dep.radius
        self.n_features_in_ = 2
        self.labels_ = self._nearest(X)
        return self

    def _nearest(self, X):
        return np.argmin(self._distances(X), axis=1)

    def _distances(self, X):
        c = self.cluster_centers_
        return np.hypot(X[:, None, 0] - c[None, :, 0], X[:, None, 1] - c[None, :, 1])

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        return self._nearest(_check_points(X, self))

    def transform(self, X):
        check_is_fitted(self, "cluster_centers_")
        return self._distances(_check_points(X, self))

    def score(self, X, y=None):
        """Negative covering radius of ``X`` (higher is better)."""
        return -float(self.transform(X).min(axis=1).max())


class FarthestFirstCover(_CoverMixin, BaseEstimator):
    """Greedy k-center: every point within twice the optimal radius of a center."""

    def __init__(self, n_centers=8, start_index=0):
        self.n_centers = n_centers
        self.start_index = start_index

    def fit(self, X, y=None):
        X = _check_points(X, self)
        k = _check_count(self.n_centers, "n_centers")
        dep = farthest_first(X, k, self.start_index)
        self.center_indices_ = np.asarray(dep.info["center_indices"])
        return self._store(X, dep)


class ContiguousCover(_CoverMixin, BaseEstimator):
    """Cover a closed sequence of points with ``n_centers`` discs, each
    enclosing a circular run of consecutive rows.

    ``chains`` in :meth:`fit` lists ``(start, stop)`` row ranges when ``X``
    holds several closed curves; the default is a single curve.
    """

    def __init__(self, n_centers=8, tol=1e-3, random_state=0):
        self.n_centers = n_centers
        self.tol = tol
        self.random_state = random_state

    def fit(self, X, y=None, chains=None):
        X = _check_points(X, self)
        k = _check_count(self.n_centers, "n_centers")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        chains = ((0, len(X)),) if chains is None else tuple(tuple(map(int, c)) for c in chains)
        samples = SampleSet(X, self.tol, PERIMETER, chains)
        dep = search_cont(samples, k, self.tol, None, self.random_state)
        self.runs_ = dep.info["runs"]
        return self._store(X, dep)


class GridCover(_CoverMixin, BaseEstimator):
    """Exact k-center with centers restricted to a square grid over the data.

    ``grid_side`` defaults to ``tol``; ``tol`` defaults to 1% of the bounding
    box diagonal.  Budget exhaustion raises
    :class:`~discguard.ilp.SolverBudgetExceeded`.
    """

    def __init__(self, n_centers=8, grid_side=None, tol=None, node_budget=DEFAULT_NODE_BUDGET,
                 snap_radii=False, solver=None):
        self.n_centers = n_centers
        self.grid_side = grid_side
        self.tol = tol
        self.node_budget = node_budget
        self.snap_radii = snap_radii
        self.solver = solver

    def fit(self, X, y=None):
        X = _check_points(X, self)
        k = _check_count(self.n_centers, "n_centers")
        lo_xy, hi_xy = X.min(axis=0), X.max(axis=0)
        tol = self.tol
        if tol is None:
            tol = 0.01 * float(np.hypot(*(hi_xy - lo_xy))) or 1.0
        side = self.grid_side or tol
        grid = grid_for_bounds((*lo_xy, *hi_xy), side)
        g = farthest_first(X, k).radius
        solver = self.solver or BranchAndBound(self.node_budget)
        samples = SampleSet(X, tol, REGION)
        dep = search_grid(
            samples, grid.centers(), k, g / 2.0, g + math.sqrt(2) * side / 2.0, tol,
            solver, self.snap_radii, {"grid": grid.shape},
        )
        self.grid_shape_ = grid.shape
        return self._store(X, dep)


class SensorPlacement(_CoverMixin, BaseEstimator):
    """Place ``n_sensors`` discs guarding a polygon's boundary or interior.

    ``fit`` takes a :class:`~discguard.geometry.PolygonSet` or an (n, 2)
    vertex array for a hole-free polygon.
    """

    def __init__(self, n_sensors=4, epsilon=0.05, mode="perimeter", method="ilp", grid_side=None,
                 node_budget=DEFAULT_NODE_BUDGET, snap_radii=False, random_state=0):
        self.n_sensors = n_sensors
        self.epsilon = epsilon
        self.mode = mode
        self.method = method
        self.grid_side = grid_side
        self.node_budget = node_budget
        self.snap_radii = snap_radii
        self.random_state = random_state

    def fit(self, X, y=None):
        from .api import solve

        poly = X if isinstance(X, PolygonSet) else PolygonSet([Ring(_check_points(X, self))])
        k = _check_count(self.n_sensors, "n_sensors")
        sol = solve(
            poly, self.mode, self.method, k, self.epsilon,
            grid_side=self.grid_side, node_budget=self.node_budget,
            snap_radii=self.snap_radii, seed=self.random_state,
        )
        self.polygon_ = poly
        self.samples_ = sol.samples
        self.verified_ = bool(verify_cover(sol.deployment, sol.samples).ok)
        return self._store(sol.samples.points, sol.deployment)
