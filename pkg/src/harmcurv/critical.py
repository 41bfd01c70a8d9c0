"""Critical points of harmonic parts and convex-hull root geometry.

The gradient of u = Re P is (Re P', -Im P'), so u and its conjugate v
share one critical set: the zeros of P'.  At a critical point the Hessian
determinant is -|P''|^2, which can never be positive; a harmonic part has
no local extrema, only saddles and degenerate points.  A critical point
counts as degenerate when |P''| falls below a tolerance scaled by the
coefficients of P''.

The hull machinery exists for the Gauss-Lucas containment report: zeros
of the derivative lie in the convex hull of the zeros.  Hulls are built
with the monotone chain so collinear and single-point degenerate cases
come out as segments and points instead of failures.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .config import DEFAULT, Tolerances
from .curvature import flat_points
from .errors import InsufficientDegreeError
from .poly import ComplexPoly
from .serialize import complex_pair


class CriticalKind(enum.Enum):
    NONDEGENERATE_SADDLE = "nondegenerate_saddle"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class CriticalPoint:
    """One distinct zero of P' with the data needed downstream."""

    location: complex
    u_value: float
    v_value: float
    kind: CriticalKind
    fpp: complex

    @property
    def hessian_det(self) -> float:
        return -(self.fpp.real * self.fpp.real + self.fpp.imag * self.fpp.imag)


@dataclass(frozen=True)
class ConvexHull2D:
    """Convex hull vertices in counterclockwise order.

    A single point keeps one vertex, a collinear set keeps the two extreme
    points; no three consecutive vertices are collinear.
    """

    vertices: tuple

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2


@dataclass(frozen=True)
class GaussLucasReport:
    hull_of_roots: ConvexHull2D
    hull_of_derivative_roots: ConvexHull2D
    derivative_roots_contained: bool
    second_derivative_roots_contained: bool
    max_violation_distance: float


def critical_points(P: ComplexPoly, cfg: Tolerances = DEFAULT) -> tuple:
    """Distinct critical points of the harmonic parts of P, sorted by location.

    Affine polynomials have constant nonzero gradient somewhere, or are
    flat planes; either way there is nothing to report.
    """
    if P.degree <= 1:
        return ()
    d1 = P.derivative()
    d2 = d1.derivative()
    degeneracy = cfg.degeneracy * (1.0 + d2.max_coeff)
    out = []
    for root in d1.roots(cfg=cfg).roots:
        z = root.location
        jet = P.jet(z.real, z.imag)
        fpp = d2.evaluate(z)
        kind = (
            CriticalKind.DEGENERATE
            if abs(fpp) <= degeneracy
            else CriticalKind.NONDEGENERATE_SADDLE
        )
        out.append(
            CriticalPoint(
                location=z, u_value=jet.u, v_value=jet.v, kind=kind, fpp=fpp
            )
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# convex hulls


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points, cfg: Tolerances = DEFAULT) -> ConvexHull2D:
    """Monotone-chain hull with a scale-aware collinearity tolerance."""
    pts = sorted(set((complex(p).real, complex(p).imag) for p in points))
    if not pts:
        raise ValueError("convex hull of an empty set")
    pts = [complex(x, y) for x, y in pts]
    if len(pts) == 1:
        return ConvexHull2D((pts[0],))

    spread_x = pts[-1].real - pts[0].real
    spread_y = max(p.imag for p in pts) - min(p.imag for p in pts)
    scale = max(spread_x, spread_y, 1.0)
    dist_tol = cfg.collinearity * scale

    def chain(seq):
        # strict popping only: any positive slack here can evict a vertex
        # that is near the chord's line but far from the chord itself
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0.0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    vertices = lower[:-1] + upper[:-1]

    # degeneracy is decided after the fact: a hull whose vertices all sit
    # within dist_tol of its diameter chord is reported as that segment
    a, b = max(
        ((p, q) for i, p in enumerate(vertices) for q in vertices[:i]),
        key=lambda pair: abs(pair[0] - pair[1]),
    )
    if all(_segment_distance(v, a, b) <= dist_tol for v in vertices):
        if abs(a - b) <= dist_tol:
            return ConvexHull2D((pts[0],))
        return ConvexHull2D(tuple(sorted((a, b), key=lambda w: (w.real, w.imag))))
    return ConvexHull2D(tuple(vertices))


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = ab.real * ab.real + ab.imag * ab.imag
    if denom == 0:
        return abs(p - a)
    t = ((p.real - a.real) * ab.real + (p.imag - a.imag) * ab.imag) / denom
    t = min(max(t, 0.0), 1.0)
    return abs(p - (a + t * ab))


def hull_distance(p: complex, hull: ConvexHull2D) -> float:
    """Euclidean distance from a point to the hull; zero inside."""
    p = complex(p)
    verts = hull.vertices
    if len(verts) == 1:
        return abs(p - verts[0])
    if len(verts) == 2:
        return _segment_distance(p, verts[0], verts[1])
    inside = True
    for i in range(len(verts)):
        a = verts[i]
        b = verts[(i + 1) % len(verts)]
        if _cross(a, b, p) < 0.0:  # vertices are counterclockwise
            inside = False
            break
    if inside:
        return 0.0
    return min(
        _segment_distance(p, verts[i], verts[(i + 1) % len(verts)])
        for i in range(len(verts))
    )


def point_in_hull(p: complex, hull: ConvexHull2D, slack: float = None,
                  cfg: Tolerances = DEFAULT) -> bool:
    """Membership within an absolute distance slack of the hull."""
    if slack is None:
        slack = cfg.containment_slack
    return hull_distance(p, hull) <= slack


def gauss_lucas_report(
    P: ComplexPoly, slack: float = None, cfg: Tolerances = DEFAULT
) -> GaussLucasReport:
    """Nested containment of derivative roots in root hulls.

    Checks zeros of P' against the hull of zeros of P, and zeros of P''
    against the hull of zeros of P'.  Both containments hold exactly in
    theory; the report records the worst numeric violation distance.
    """
    if P.degree < 2:
        raise InsufficientDegreeError("containment report needs degree >= 2")
    if slack is None:
        slack = cfg.containment_slack
    d1 = P.derivative()
    d2 = d1.derivative()
    hull_roots = convex_hull(P.roots(cfg=cfg).locations(), cfg)
    d1_locs = d1.roots(cfg=cfg).locations()
    hull_d1 = convex_hull(d1_locs, cfg)
    viol_1 = max((hull_distance(z, hull_roots) for z in d1_locs), default=0.0)
    if d2.degree >= 1:
        d2_locs = d2.roots(cfg=cfg).locations()
        viol_2 = max((hull_distance(z, hull_d1) for z in d2_locs), default=0.0)
    else:
        viol_2 = 0.0
    return GaussLucasReport(
        hull_of_roots=hull_roots,
        hull_of_derivative_roots=hull_d1,
        derivative_roots_contained=viol_1 <= slack,
        second_derivative_roots_contained=viol_2 <= slack,
        max_violation_distance=max(viol_1, viol_2),
    )


def flat_set_bound_check(P: ComplexPoly, cfg: Tolerances = DEFAULT) -> bool:
    """Distinct flat points never outnumber degree - 2."""
    if P.degree < 2:
        raise InsufficientDegreeError("flat set bound needs degree >= 2")
    count = flat_points(P, cfg=cfg).distinct_count
    return count <= P.degree - 2


# ---------------------------------------------------------------------------
# exports


def critical_points_to_json(points) -> list:
    return [
        {
            "location": complex_pair(cp.location),
            "u_value": cp.u_value,
            "v_value": cp.v_value,
            "kind": cp.kind.value,
            "fpp": complex_pair(cp.fpp),
        }
        for cp in points
    ]


def report_to_json_dict(report: GaussLucasReport) -> dict:
    return {
        "hull_of_roots": [complex_pair(v) for v in report.hull_of_roots.vertices],
        "hull_of_derivative_roots": [
            complex_pair(v) for v in report.hull_of_derivative_roots.vertices
        ],
        "derivative_roots_contained": report.derivative_roots_contained,
        "second_derivative_roots_contained": report.second_derivative_roots_contained,
        "max_violation_distance": report.max_violation_distance,
    }
