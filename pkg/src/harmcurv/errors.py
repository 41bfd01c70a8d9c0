"""Exception types shared by the analysis modules."""

from __future__ import annotations


class AnalysisError(Exception):
    """Base class for every package-specific failure."""


class PolyFormatError(AnalysisError):
    """A polynomial file or coefficient payload is malformed."""


class InsufficientDegreeError(AnalysisError):
    """The operation needs a higher polynomial degree than it was given."""


class NonConvergenceError(AnalysisError):
    """Root iteration exhausted its budget.

    Carries the best iterate seen and its residual so callers can report
    something actionable.
    """

    def __init__(self, message: str, best: complex, residual: float):
        super().__init__(message)
        self.best = best
        self.residual = residual


class IdenticallyFlatError(AnalysisError):
    """The graph is a plane: curvature vanishes everywhere, not at isolated points."""


class DifferentLevelsError(AnalysisError):
    """The two critical points sit on different levels, so the fiber question is vacuous."""


class BandTooWideError(AnalysisError):
    """The level band covers nearly the whole domain and carries no information."""


class ResolutionInstabilityError(AnalysisError):
    """Band connectivity changed when the grid was refined; the answer is not trustworthy."""


class GridSizeError(AnalysisError):
    """A requested sampling grid exceeds the configured resource cap."""
