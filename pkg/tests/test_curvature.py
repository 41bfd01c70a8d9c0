"""Curvature formulas, grids, flat points, and first fundamental forms."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmcurv import (
    ComplexPoly,
    CurvatureGrid,
    Domain2D,
    GridSizeError,
    IdenticallyFlatError,
    curvature_at,
    curvature_grid,
    curvature_hessian_at,
    curvature_values,
    default_domain,
    first_form_at,
    flat_points,
    grid_to_csv,
)

CUBIC = ComplexPoly([0.0, -3.0, 0.0, 1.0])  # z^3 - 3z
SQUARE = ComplexPoly([0.0, 0.0, 1.0])  # z^2
PLANE = ComplexPoly([0.0, 1.0])  # z

BOX = Domain2D(-2.0, 2.0, -2.0, 2.0)


def coeff_lists(max_degree=6):
    component = st.floats(
        min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False
    )
    entry = st.builds(complex, component, component)
    return st.lists(entry, min_size=2, max_size=max_degree + 1)


points = st.builds(
    complex,
    st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
    st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
)


class TestPointCurvature:
    def test_cubic_at_one(self):
        assert curvature_at(CUBIC, 1.0 + 0j) == -36.0
        assert curvature_hessian_at(CUBIC, 1.0, 0.0) == -36.0

    def test_cubic_at_origin(self):
        assert curvature_at(CUBIC, 0j) == 0.0

    def test_square_at_origin(self):
        assert curvature_at(SQUARE, 0j) == -4.0
        assert curvature_hessian_at(SQUARE, 0.0, 0.0) == -4.0

    def test_square_off_origin(self):
        assert curvature_at(SQUARE, 1 + 1j) == pytest.approx(-4.0 / 81.0, rel=1e-15)

    def test_plane_is_flat(self):
        assert curvature_at(PLANE, 3 - 2j) == 0.0
        assert curvature_hessian_at(PLANE, 3.0, -2.0) == 0.0

    def test_imag_part_same_curvature(self):
        for z in (0.3 + 0.7j, -1.5j, 2.0 + 0j):
            a = curvature_hessian_at(CUBIC, z.real, z.imag, part="real")
            b = curvature_hessian_at(CUBIC, z.real, z.imag, part="imag")
            assert a == pytest.approx(b, rel=1e-14, abs=1e-300)

    @given(coeff_lists(), points)
    @settings(max_examples=120)
    def test_routes_agree(self, coeffs, z):
        p = ComplexPoly(coeffs)
        a = curvature_at(p, z)
        b = curvature_hessian_at(p, z.real, z.imag)
        assert abs(a - b) <= 1e-9 * max(1.0, abs(a))

    @given(coeff_lists(), points)
    @settings(max_examples=120)
    def test_never_positive(self, coeffs, z):
        assert curvature_at(ComplexPoly(coeffs), z) <= 0.0

    @given(points, st.floats(min_value=0.0, max_value=7.0))
    def test_rotation_invariant(self, z, t):
        a = curvature_at(CUBIC, z)
        b = curvature_at(CUBIC.rotate(t), z)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


class TestGrid:
    def test_three_by_three_center(self):
        g = curvature_values(SQUARE, Domain2D(-1.0, 1.0, -1.0, 1.0), 3, 3)
        assert g.shape == (3, 3)
        assert g[1, 1] == -4.0

    def test_matches_point_formula(self):
        g = curvature_values(CUBIC, BOX, 8, 8)
        xs, ys = BOX.cell_axes(8, 8)
        for iy in range(8):
            for ix in range(8):
                want = curvature_at(CUBIC, complex(xs[ix], ys[iy]))
                assert abs(g[iy, ix] - want) <= 1e-12 * max(1.0, abs(want))

    def test_plane_grid_all_zero(self):
        grid = curvature_grid(PLANE, Domain2D(-1.0, 1.0, -1.0, 1.0), 16, 16)
        assert grid.min_value == 0.0
        assert grid.max_value == 0.0
        assert not grid.values.any()

    def test_argmax_hugs_flat_point(self):
        # K = 0 only at the origin, which cell centers straddle; the
        # largest sample sits in one of the four nearest cells
        grid = curvature_grid(CUBIC, BOX, 64, 64)
        iy, ix = np.unravel_index(np.argmax(grid.values), grid.values.shape)
        xs, ys = BOX.cell_axes(64, 64)
        assert abs(xs[ix]) == pytest.approx(1.0 / 32.0)
        assert abs(ys[iy]) == pytest.approx(1.0 / 32.0)
        want = curvature_at(CUBIC, complex(xs[ix], ys[iy]))
        assert grid.max_value == pytest.approx(want, rel=1e-13)

    def test_grid_values_nonpositive(self):
        grid = curvature_grid(CUBIC, BOX, 32, 32)
        assert grid.max_value <= 0.0
        assert grid.values.max() <= 0.0

    def test_values_read_only(self):
        grid = curvature_grid(SQUARE, BOX, 4, 4)
        with pytest.raises(ValueError):
            grid.values[0, 0] = 1.0

    def test_cell_cap(self):
        with pytest.raises(GridSizeError):
            curvature_values(SQUARE, BOX, 8192, 8192)

    def test_cap_boundary_allowed(self):
        # 4096^2 sits exactly at the cap; touch the loop without the cost
        g = curvature_values(PLANE, BOX, 4096, 4096)
        assert g.shape == (4096, 4096)

    def test_csv_shape(self):
        grid = curvature_grid(SQUARE, Domain2D(-1.0, 1.0, -1.0, 1.0), 3, 3)
        lines = grid_to_csv(grid).splitlines()
        assert lines[0] == "x,y,K"
        assert len(lines) == 10
        cells = lines[5].split(",")
        assert float(cells[0]) == 0.0
        assert float(cells[2]) == -4.0


class TestDomain:
    def test_validation(self):
        with pytest.raises(ValueError):
            Domain2D(1.0, -1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            Domain2D(0.0, 1.0, 2.0, 2.0)

    def test_cell_axes_centers(self):
        xs, ys = Domain2D(0.0, 1.0, 0.0, 2.0).cell_axes(2, 4)
        assert list(xs) == [0.25, 0.75]
        assert list(ys) == [0.25, 0.75, 1.25, 1.75]

    def test_cell_of_clips(self):
        d = Domain2D(0.0, 1.0, 0.0, 1.0)
        assert d.cell_of(-5.0, 0.5, 4, 4) == (0, 2)
        assert d.cell_of(0.99, 5.0, 4, 4) == (3, 3)

    def test_default_domain_cubic(self):
        d = default_domain(CUBIC)
        assert d.xmin == pytest.approx(-4.464101615137755)
        assert d.xmax == pytest.approx(4.464101615137755)
        assert d.ymin == pytest.approx(-2.7320508075688776)
        assert d.ymax == pytest.approx(2.7320508075688776)

    def test_default_domain_covers_roots(self):
        p = ComplexPoly([1 - 2j, 0.5j, -3.0, 0j, 1 + 1j])
        d = default_domain(p)
        for q in (p, p.derivative(), p.derivative().derivative()):
            for w in q.roots().locations():
                assert d.xmin < w.real < d.xmax
                assert d.ymin < w.imag < d.ymax


class TestFlatPoints:
    def test_cubic(self):
        rs = flat_points(CUBIC)
        assert rs.locations() == [0j]
        assert rs.roots[0].multiplicity == 1

    def test_square_has_none(self):
        assert flat_points(SQUARE).distinct_count == 0

    def test_quartic_double(self):
        rs = flat_points(ComplexPoly([0.0, 0.0, 0.0, 0.0, 1.0]))
        assert rs.locations() == [0j]
        assert rs.roots[0].multiplicity == 2

    def test_affine_raises(self):
        with pytest.raises(IdenticallyFlatError):
            flat_points(PLANE)
        with pytest.raises(IdenticallyFlatError):
            flat_points(ComplexPoly([2.0 + 1j]))

    def test_curvature_vanishes_there(self):
        p = ComplexPoly([1 - 2j, 0.5j, -3.0, 0j, 1 + 1j])
        for w in flat_points(p).locations():
            assert abs(curvature_at(p, w)) <= 1e-18

    def test_count_bounded_by_degree(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(2, 7))
            cs = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            cs[-1] += 3.0  # keep the leading term honest
            p = ComplexPoly(list(cs))
            rs = flat_points(p)
            assert rs.total_multiplicity == max(p.degree - 2, 0)


class TestFirstForm:
    def test_cubic_frozen(self):
        fu = first_form_at(CUBIC, "real", 1.0, 1.0)
        fv = first_form_at(CUBIC, "imag", 1.0, 1.0)
        assert (fu.E, fu.F, fu.G) == (10.0, 18.0, 37.0)
        assert (fv.E, fv.F, fv.G) == (37.0, -18.0, 10.0)
        assert fu.det == fv.det == 46.0

    def test_square_frozen(self):
        f = first_form_at(SQUARE, "real", 1.0, 1.0)
        assert (f.E, f.F, f.G) == (5.0, -4.0, 5.0)

    @given(points)
    def test_conjugate_dets_match(self, z):
        fu = first_form_at(CUBIC, "real", z.real, z.imag)
        fv = first_form_at(CUBIC, "imag", z.real, z.imag)
        assert fu.det == pytest.approx(fv.det, rel=1e-12)
        assert fu.det >= 1.0
