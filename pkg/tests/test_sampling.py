import math

import numpy as np
import pytest

from discguard.geometry import GeometryError, PolygonSet, Ring, cells_intersect_polygon, points_in_polygon
from discguard.instances import FIXTURES
from discguard.sampling import (
    GridSpec,
    SampleSet,
    candidate_centers,
    grid_for,
    sample_perimeter,
    sample_region,
)


class TestPerimeter:
    def test_square_half(self, square):
        s = sample_perimeter(square, 0.5)
        assert len(s) == 4 and s.chains == ((0, 4),)
        assert np.allclose(s.points, [(0.5, 0), (1, 0.5), (0.5, 1), (0, 0.5)])

    def test_square_quarter(self, square):
        s = sample_perimeter(square, 0.25)
        assert len(s) == 8
        gaps = np.hypot(*(np.roll(s.points, -1, axis=0) - s.points).T)
        # 0.5 along the boundary; diagonal chord only across a corner
        assert np.all(gaps <= 0.5 + 1e-12)
        assert np.allclose(s.points[0], (0.25, 0))

    def test_hole_chains(self, holed_square):
        s = sample_perimeter(holed_square, 0.5)
        assert len(s) == 6 and s.chains == ((0, 4), (4, 6))
        assert len(s.chain(1)) == 2

    @pytest.mark.parametrize("eps", [0.3, 0.07, 0.013])
    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_count_formula(self, name, eps):
        poly = FIXTURES[name]()
        expect = sum(math.ceil(r.length / (2 * eps) - 1e-9) for r in poly.rings())
        assert len(sample_perimeter(poly, eps)) == expect

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_halving_doubles(self, name):
        poly = FIXTURES[name]()
        a, b = len(sample_perimeter(poly, 0.1)), len(sample_perimeter(poly, 0.05))
        assert b >= 2 * a - len(list(poly.rings()))

    def test_bad_eps(self, square):
        for eps in (0, -1, math.inf):
            with pytest.raises(GeometryError):
                sample_perimeter(square, eps)


class TestRegion:
    def test_square_half(self, square):
        s, g = sample_region(square, 0.5)
        assert g.origin == (0.25, 0.25) and g.shape == (2, 2)
        assert np.allclose(s.points, [(0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)])
        assert s.chains == ()

    def test_square_unit(self, square):
        s, _ = sample_region(square, 1.0)
        assert np.allclose(s.points, [(0.5, 0.5)])

    def test_triangle_closed_convention(self):
        tri = PolygonSet([Ring([(0, 0), (1, 0), (0, 1)])])
        s, _ = sample_region(tri, 0.5)
        # the (0.75, 0.75) cell touches the hypotenuse at its corner
        assert len(s) == 4

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_cells(self, name):
        poly = FIXTURES[name]()
        eps = 0.1 * max(np.subtract(poly.bounds()[2:], poly.bounds()[:2]))
        s, g = sample_region(poly, eps)
        assert np.all(cells_intersect_polygon(s.points, eps, poly))
        centers = g.centers()
        h = eps / 2
        corners_in = np.all([points_in_polygon(centers + d, poly) for d in
                             [(-h, -h), (h, -h), (h, h), (-h, h)]], axis=0)
        # a cell with all four corners inside holds a sample (holes are convex here)
        chosen = {tuple(p) for p in np.round(s.points, 9)}
        for c in centers[corners_in]:
            assert tuple(np.round(c, 9)) in chosen

    def test_grid_covers_bounds(self):
        poly = FIXTURES["castle"]()
        g = grid_for(poly, 0.37)
        x0, y0, x1, y1 = poly.bounds()
        c = g.centers()
        h = g.cell_side / 2
        assert c[:, 0].min() - h <= x0 and c[:, 0].max() + h >= x1
        assert c[:, 1].min() - h <= y0 and c[:, 1].max() + h >= y1


class TestCandidates:
    def test_single(self):
        assert candidate_centers(GridSpec((0, 0), 1, 1, 1)) == [(0, 0)]

    def test_two_by_two(self):
        assert candidate_centers(GridSpec((0, 0), 1, 2, 2)) == [(0, 0), (1, 0), (0, 1), (1, 1)]

    def test_row_major(self):
        c = candidate_centers(GridSpec((0, 0), 1, 2, 3))
        assert len(c) == 6 and c[:3] == [(0, 0), (1, 0), (2, 0)]

    def test_invalid(self):
        with pytest.raises(GeometryError):
            GridSpec((0, 0), 0, 1, 1)


class TestSampleSet:
    def test_chain_partition(self):
        pts = np.zeros((5, 2))
        with pytest.raises(ValueError):
            SampleSet(pts, 0.1, "perimeter", ((0, 2), (3, 5)))
        with pytest.raises(ValueError):
            SampleSet(pts, 0.1, "region", ((0, 5),))

    def test_readonly(self, square):
        s = sample_perimeter(square, 0.5)
        with pytest.raises(ValueError):
            s.points[0, 0] = 3
