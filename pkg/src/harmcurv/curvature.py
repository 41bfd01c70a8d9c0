"""Gaussian curvature of the graph of a harmonic part of a polynomial.

For w = Re P (or Im P) the graph z -> (x, y, w(x, y)) has

    K = -|P''|^2 / (1 + |P'|^2)^2
      = (w_xx w_yy - w_xy^2) / (1 + w_x^2 + w_y^2)^2

The two expressions are algebraically identical because the Hessian
determinant of a harmonic part collapses to -|P''|^2; both routes are
implemented and must agree to 1e-9 relative.  Consequences used all over
the package: K <= 0 everywhere, K = 0 exactly at the zeros of P'', and
K is invariant under multiplying P by a unit number or adding a constant.

Grids sample at cell centers in row-major order (y varies slowest) and
are immutable once built.  Evaluation is chunked by rows; output is
identical to serial evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import GridSizeError, IdenticallyFlatError
from .poly import ComplexPoly, RootSet
from .serialize import fmt

_CHUNK_CELLS = 1 << 20


def _abs2(z: complex) -> float:
    return z.real * z.real + z.imag * z.imag


@dataclass(frozen=True)
class Domain2D:
    """Closed axis-aligned rectangle with positive area."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        vals = (self.xmin, self.xmax, self.ymin, self.ymax)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("domain bounds must be finite")
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("domain must have positive width and height")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    def cell_axes(self, nx: int, ny: int):
        """Cell-center coordinates of an nx by ny sampling of the rectangle."""
        dx = self.width / nx
        dy = self.height / ny
        xs = self.xmin + (np.arange(nx) + 0.5) * dx
        ys = self.ymin + (np.arange(ny) + 0.5) * dy
        return xs, ys

    def cell_of(self, x: float, y: float, nx: int, ny: int):
        """Indices (ix, iy) of the cell containing the point, clipped to the grid."""
        ix = int((x - self.xmin) / self.width * nx)
        iy = int((y - self.ymin) / self.height * ny)
        return min(max(ix, 0), nx - 1), min(max(iy, 0), ny - 1)


@dataclass(frozen=True)
class FirstForm:
    """Coefficients of the induced metric of a graph: E, F, G."""

    E: float
    F: float
    G: float

    @property
    def det(self) -> float:
        return self.E * self.G - self.F * self.F


@dataclass(frozen=True, eq=False)
class CurvatureGrid:
    """Curvature samples on a cell-center lattice, with cached extrema."""

    domain: Domain2D
    nx: int
    ny: int
    values: np.ndarray = field(repr=False)
    min_value: float
    max_value: float


def curvature_at(P: ComplexPoly, z: complex, cfg: Tolerances = DEFAULT) -> float:
    """K at a point, through the complex derivatives of P.

    The numerator is a negated square, so the result is nonpositive in
    exact float arithmetic, not just up to rounding.
    """
    z = complex(z)
    d1 = P.derivative()
    num = _abs2(d1.derivative().evaluate(z))
    den = 1.0 + _abs2(d1.evaluate(z))
    return -(num / (den * den))


def curvature_hessian_at(
    P: ComplexPoly, x: float, y: float, part: str = "real", cfg: Tolerances = DEFAULT
) -> float:
    """K at a point, assembled from the Hessian of the selected part."""
    jet = P.jet(x, y)
    if part == "real":
        wx, wy = jet.ux, jet.uy
        det = jet.uxx * jet.uyy - jet.uxy * jet.uxy
    elif part == "imag":
        wx, wy = jet.vx, jet.vy
        det = jet.vxx * jet.vyy - jet.vxy * jet.vxy
    else:
        raise ValueError(f"unknown part {part!r}")
    den = 1.0 + wx * wx + wy * wy
    return det / (den * den)


def curvature_values(
    P: ComplexPoly,
    domain: Domain2D,
    nx: int,
    ny: int,
    cfg: Tolerances = DEFAULT,
) -> np.ndarray:
    """Curvature over the cell-center lattice as an (ny, nx) array."""
    if nx < 1 or ny < 1:
        raise ValueError("grid must have at least one cell per axis")
    if nx * ny > cfg.grid_cell_cap:
        raise GridSizeError(
            f"grid of {nx}x{ny} cells exceeds the cap of {cfg.grid_cell_cap}"
        )
    d1 = P.derivative()
    d2 = d1.derivative()
    xs, ys = domain.cell_axes(nx, ny)
    out = np.empty((ny, nx), dtype=np.float64)
    rows_per_chunk = max(1, _CHUNK_CELLS // nx)
    for start in range(0, ny, rows_per_chunk):
        stop = min(start + rows_per_chunk, ny)
        Z = xs[None, :] + 1j * ys[start:stop, None]
        fp = d1.evaluate_array(Z)
        fpp = d2.evaluate_array(Z)
        num = fpp.real * fpp.real + fpp.imag * fpp.imag
        den = 1.0 + fp.real * fp.real + fp.imag * fp.imag
        out[start:stop] = -(num / (den * den))
    return out


def curvature_grid(
    P: ComplexPoly,
    domain: Domain2D,
    nx: int,
    ny: int,
    cfg: Tolerances = DEFAULT,
) -> CurvatureGrid:
    values = curvature_values(P, domain, nx, ny, cfg)
    values.flags.writeable = False
    return CurvatureGrid(
        domain=domain,
        nx=nx,
        ny=ny,
        values=values,
        min_value=float(values.min()),
        max_value=float(values.max()),
    )


def flat_points(P: ComplexPoly, tol: float = None, cfg: Tolerances = DEFAULT) -> RootSet:
    """Zeros of P'': exactly where the graph curvature vanishes.

    Degree <= 1 means the graph is a plane and the flat set is the whole
    domain, which gets its own error instead of a misleading empty set.
    A quadratic has constant nonzero P'', hence no flat points at all.
    """
    if P.degree <= 1:
        raise IdenticallyFlatError("curvature vanishes identically for degree <= 1")
    d2 = P.derivative().derivative()
    if d2.degree == 0:
        return RootSet(())
    return d2.roots(tol, cfg)


def first_form_at(P: ComplexPoly, part: str, x: float, y: float) -> FirstForm:
    """Induced metric of the selected part's graph at (x, y)."""
    jet = P.jet(x, y)
    if part == "real":
        wx, wy = jet.ux, jet.uy
    elif part == "imag":
        wx, wy = jet.vx, jet.vy
    else:
        raise ValueError(f"unknown part {part!r}")
    return FirstForm(E=1.0 + wx * wx, F=wx * wy, G=1.0 + wy * wy)


def default_domain(P: ComplexPoly, cfg: Tolerances = DEFAULT) -> Domain2D:
    """Rectangle holding all roots of P, P', P'' with generous margin.

    The bounding box of those roots is inflated on every side by half its
    diagonal plus an absolute margin of 1, so the interesting structure
    (critical points, flat points, level crossings) sits well inside.
    """
    pts = []
    Q = P
    for _ in range(3):
        if Q.degree >= 1:
            pts.extend(Q.roots(cfg=cfg).locations())
        Q = Q.derivative()
    if pts:
        xmin = min(p.real for p in pts)
        xmax = max(p.real for p in pts)
        ymin = min(p.imag for p in pts)
        ymax = max(p.imag for p in pts)
    else:
        xmin = xmax = ymin = ymax = 0.0
    margin = 0.5 * math.hypot(xmax - xmin, ymax - ymin) + 1.0
    return Domain2D(xmin - margin, xmax + margin, ymin - margin, ymax + margin)


# ---------------------------------------------------------------------------
# exports


def grid_to_csv(grid: CurvatureGrid) -> str:
    """Row-major x,y,K table with 17 significant digits."""
    xs, ys = grid.domain.cell_axes(grid.nx, grid.ny)
    lines = ["x,y,K"]
    for iy in range(grid.ny):
        row = grid.values[iy]
        sy = fmt(ys[iy])
        for ix in range(grid.nx):
            lines.append(f"{fmt(xs[ix])},{sy},{fmt(row[ix])}")
    return "\n".join(lines) + "\n"


def domain_to_json_dict(domain: Domain2D) -> dict:
    return {
        "xmin": domain.xmin,
        "xmax": domain.xmax,
        "ymin": domain.ymin,
        "ymax": domain.ymax,
    }


def grid_to_json_dict(grid: CurvatureGrid) -> dict:
    return {
        "domain": domain_to_json_dict(grid.domain),
        "nx": grid.nx,
        "ny": grid.ny,
        "min_value": grid.min_value,
        "max_value": grid.max_value,
        "values": [float(v) for v in grid.values.ravel()],
    }
