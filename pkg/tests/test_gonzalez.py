import numpy as np
import pytest

from discguard.deployment import covering_radius
from discguard.gonzalez import farthest_first, solve_gonzalez
from discguard.ilp import solve_ilp_region
from discguard.sampling import sample_region
from oracles import continuous_k_center, discrete_k_center

LINE = np.array([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)])


def test_line_k2():
    d = farthest_first(LINE, 2)
    assert np.array_equal(d.centers, [(0, 0), (3, 0)]) and d.radius == 1.0


def test_line_k4():
    assert farthest_first(LINE, 4).radius == 0.0


def test_early_stop():
    d = farthest_first([(0.0, 0.0)], 3)
    assert len(d) == 1 and d.radius == 0.0


def test_collinear_ratio_two():
    # tight against free centers at 0.5 and 2.5; sample centers already reach 1.0
    assert continuous_k_center(LINE, 2) == pytest.approx(0.5)
    assert farthest_first(LINE, 2).radius / continuous_k_center(LINE, 2) == pytest.approx(2.0, abs=1e-9)
    assert discrete_k_center(LINE, 2) == pytest.approx(1.0)


def test_bound_against_continuous_bruteforce():
    rng = np.random.default_rng(21)
    for _ in range(25):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, 4))
        pts = rng.uniform(size=(n, 2))
        assert farthest_first(pts, k).radius <= 2 * continuous_k_center(pts, k) + 1e-9


def test_ties_lowest_index():
    pts = np.array([(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)])
    assert farthest_first(pts, 2).info["center_indices"] == (0, 1)


def test_start_index():
    d = farthest_first(LINE, 1, start_index=3)
    assert tuple(d.centers[0]) == (3.0, 0.0) and d.radius == 3.0
    with pytest.raises(IndexError):
        farthest_first(LINE, 1, start_index=9)


@pytest.mark.parametrize("bad", [[], np.zeros((0, 2))])
def test_empty(bad):
    with pytest.raises(ValueError):
        farthest_first(bad, 1)


def test_bad_k():
    with pytest.raises(ValueError):
        farthest_first(LINE, 0)


def test_bound_against_bruteforce():
    rng = np.random.default_rng(8)
    for _ in range(40):
        n = int(rng.integers(2, 20))
        k = int(rng.integers(1, 4))
        pts = rng.uniform(size=(n, 2))
        d = farthest_first(pts, k)
        assert d.radius == pytest.approx(covering_radius(pts, d.centers), abs=1e-12)
        assert len({tuple(c) for c in d.centers}) == len(d)
        assert all(any(np.array_equal(c, p) for p in pts) for c in d.centers)
        assert d.radius <= 2 * discrete_k_center(pts, k) + 1e-12


def test_bound_against_continuous_grid_solution(square):
    # the grid ILP radius upper-bounds the continuous optimum
    for k in (1, 2, 4):
        eps = 0.05
        s, _ = sample_region(square, eps)
        assert farthest_first(s, k).radius <= 2 * solve_ilp_region(square, k, eps).radius + 1e-9


def test_deterministic():
    pts = np.random.default_rng(1).uniform(size=(50, 2))
    a, b = farthest_first(pts, 5, 7), farthest_first(pts, 5, 7)
    assert np.array_equal(a.centers, b.centers)


def test_solve_modes(square):
    assert solve_gonzalez(square, 1, 0.5).radius == pytest.approx(1.0)
    assert solve_gonzalez(square, 4, 0.01, mode="region").radius <= 2 * (2 ** 0.5 / 4) + 0.02
    assert solve_gonzalez(square, 1, 0.01).radius <= 2 ** 0.5
    with pytest.raises(ValueError):
        solve_gonzalez(square, 1, 0.1, mode="volume")
