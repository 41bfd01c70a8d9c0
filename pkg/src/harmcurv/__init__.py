"""Curvature and level-set topology of graphs of harmonic polynomial parts.

The real and imaginary parts of a complex polynomial are conjugate
harmonic functions.  This package analyzes the graphs of those parts:
Gaussian curvature fields, critical points and their convex-hull
geometry, level-set fiber connectivity, and the decision problem of when
two polynomials induce the same curvature.
"""

from .config import DEFAULT, Tolerances
from .critical import (
    ConvexHull2D,
    CriticalKind,
    CriticalPoint,
    GaussLucasReport,
    convex_hull,
    critical_points,
    flat_set_bound_check,
    gauss_lucas_report,
    hull_distance,
    point_in_hull,
)
from .curvature import (
    CurvatureGrid,
    Domain2D,
    FirstForm,
    curvature_at,
    curvature_grid,
    curvature_hessian_at,
    curvature_values,
    default_domain,
    first_form_at,
    flat_points,
    grid_to_csv,
    grid_to_json_dict,
)
from .equivalence import (
    Certificate,
    CurvatureWitness,
    EquivalenceVerdict,
    LoopSample,
    decide_equal_curvature,
    joint_default_domain,
    loop_scan,
    numeric_curvature_compare,
)
from .errors import (
    AnalysisError,
    BandTooWideError,
    DifferentLevelsError,
    GridSizeError,
    IdenticallyFlatError,
    InsufficientDegreeError,
    NonConvergenceError,
    PolyFormatError,
    ResolutionInstabilityError,
)
from .levelsets import (
    FiberSignature,
    LevelComponent,
    critical_value,
    default_band_halfwidth,
    fiber_signature,
    level_components,
    part_values,
    same_fiber,
    signatures_equivalent,
)
from .poly import (
    ComplexPoly,
    HarmonicJet,
    Root,
    RootSet,
    load_poly,
    poly_from_json_dict,
    poly_to_json_dict,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "BandTooWideError",
    "Certificate",
    "ComplexPoly",
    "ConvexHull2D",
    "CriticalKind",
    "CriticalPoint",
    "CurvatureGrid",
    "CurvatureWitness",
    "DEFAULT",
    "DifferentLevelsError",
    "Domain2D",
    "EquivalenceVerdict",
    "FiberSignature",
    "FirstForm",
    "GaussLucasReport",
    "GridSizeError",
    "HarmonicJet",
    "IdenticallyFlatError",
    "InsufficientDegreeError",
    "LevelComponent",
    "LoopSample",
    "NonConvergenceError",
    "PolyFormatError",
    "ResolutionInstabilityError",
    "Root",
    "RootSet",
    "Tolerances",
    "convex_hull",
    "critical_points",
    "critical_value",
    "curvature_at",
    "curvature_grid",
    "curvature_hessian_at",
    "curvature_values",
    "decide_equal_curvature",
    "default_band_halfwidth",
    "default_domain",
    "fiber_signature",
    "first_form_at",
    "flat_points",
    "flat_set_bound_check",
    "gauss_lucas_report",
    "grid_to_csv",
    "grid_to_json_dict",
    "hull_distance",
    "joint_default_domain",
    "level_components",
    "load_poly",
    "loop_scan",
    "numeric_curvature_compare",
    "part_values",
    "point_in_hull",
    "poly_from_json_dict",
    "poly_to_json_dict",
    "same_fiber",
    "signatures_equivalent",
]
