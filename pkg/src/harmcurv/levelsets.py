"""Level-set bands and fiber connectivity of harmonic parts.

Whether two critical points on a common level lie on the same level
component is decided combinatorially: sample the part on a cell-center
grid, keep cells whose value sits within a band half-width of the level,
and flood-fill the band with 4-connectivity.  The band half-width defaults
to 1.5 times the largest gradient magnitude times the cell diagonal, so a
level line never falls through the gaps between sampled cells.

Connectivity answers must be stable under grid refinement: every query is
run at n and 2n and a disagreement raises instead of guessing.  The fiber
signature collects the level partition of the nondegenerate critical
points, pairwise connectivity inside each level class, and the count of
degenerate points.  Signatures separate surfaces with different level
topology; agreeing signatures prove nothing and are only a necessary
condition.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .critical import CriticalKind, CriticalPoint, critical_points
from .curvature import Domain2D, default_domain
from .errors import (
    BandTooWideError,
    DifferentLevelsError,
    InsufficientDegreeError,
    ResolutionInstabilityError,
)
from .poly import ComplexPoly
from .serialize import complex_pair

# A part selector is "real", "imag", or a float t meaning Re(exp(i t) P).


def part_values(P: ComplexPoly, part, Z: np.ndarray) -> np.ndarray:
    F = P.evaluate_array(Z)
    if isinstance(part, str):
        if part == "real":
            return np.ascontiguousarray(F.real)
        if part == "imag":
            return np.ascontiguousarray(F.imag)
        raise ValueError(f"unknown part {part!r}")
    t = float(part)
    return math.cos(t) * F.real - math.sin(t) * F.imag


def critical_value(cp: CriticalPoint, part) -> float:
    """Value of the selected part at a critical point."""
    if isinstance(part, str):
        if part == "real":
            return cp.u_value
        if part == "imag":
            return cp.v_value
        raise ValueError(f"unknown part {part!r}")
    t = float(part)
    return math.cos(t) * cp.u_value - math.sin(t) * cp.v_value


@dataclass(frozen=True)
class LevelComponent:
    """One 4-connected band component; cells are (iy, ix), sorted."""

    level: float
    cells: tuple
    contains_critical: tuple

    @property
    def cell_count(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class FiberSignature:
    """Topological summary of the critical set of one harmonic part.

    classes groups indices of the nondegenerate critical points by level
    (sorted by level, members sorted by index); pair_same_fiber holds one
    (i, j, connected) entry per unordered pair inside a class.
    """

    saddle_count: int
    degenerate_count: int
    classes: tuple
    class_levels: tuple
    pair_same_fiber: tuple

    def class_sizes(self) -> tuple:
        return tuple(sorted(len(c) for c in self.classes))

    def fiber_patterns(self) -> tuple:
        """Per class, the sorted sizes of its same-fiber groups, as a multiset."""
        connected = {}
        for i, j, same in self.pair_same_fiber:
            connected.setdefault(i, set())
            connected.setdefault(j, set())
            if same:
                connected[i].add(j)
                connected[j].add(i)
        patterns = []
        for cls in self.classes:
            seen = set()
            sizes = []
            for start in cls:
                if start in seen:
                    continue
                queue = [start]
                seen.add(start)
                size = 0
                while queue:
                    node = queue.pop()
                    size += 1
                    for other in connected.get(node, ()):
                        if other in cls and other not in seen:
                            seen.add(other)
                            queue.append(other)
                sizes.append(size)
            patterns.append(tuple(sorted(sizes)))
        return tuple(sorted(patterns))


# ---------------------------------------------------------------------------
# band construction


def _band_labels(W: np.ndarray, c: float, delta: float, limit: float):
    """Label 4-connected components of {|W - c| <= delta}.

    Returns (labels, count) where labels is -1 off the band and components
    are numbered by their smallest row-major cell index.
    """
    mask = np.abs(W - c) <= delta
    covered = int(mask.sum())
    if covered > limit * mask.size:
        raise BandTooWideError(
            f"band covers {covered} of {mask.size} cells; shrink the half-width"
        )
    ny, nx = W.shape
    labels = np.full((ny, nx), -1, dtype=np.int32)
    count = 0
    for flat in np.flatnonzero(mask):
        iy, ix = divmod(int(flat), nx)
        if labels[iy, ix] != -1:
            continue
        queue = deque([(iy, ix)])
        labels[iy, ix] = count
        while queue:
            cy, cx = queue.popleft()
            for ny_, nx_ in ((cy - 1, cx), (cy + 1, cx), (cy, cx - 1), (cy, cx + 1)):
                if 0 <= ny_ < ny and 0 <= nx_ < nx:
                    if mask[ny_, nx_] and labels[ny_, nx_] == -1:
                        labels[ny_, nx_] = count
                        queue.append((ny_, nx_))
        count += 1
    return labels, count


def default_band_halfwidth(
    P: ComplexPoly, domain: Domain2D, n: int, cfg: Tolerances = DEFAULT
) -> float:
    """1.5 x (max gradient magnitude) x (cell diagonal).

    The gradient magnitude of any part of P equals |P'|, so one maximum
    serves every selector.
    """
    xs, ys = domain.cell_axes(n, n)
    Z = xs[None, :] + 1j * ys[:, None]
    grad_max = float(np.abs(P.derivative().evaluate_array(Z)).max())
    diag = math.hypot(domain.width / n, domain.height / n)
    return cfg.band_width_factor * grad_max * diag


def level_components(
    P: ComplexPoly,
    part,
    c: float,
    domain: Domain2D,
    n: int,
    delta: float,
    critical=(),
    cfg: Tolerances = DEFAULT,
) -> tuple:
    """All band components of {|w - c| <= delta} on an n x n grid."""
    if n < 16:
        raise ValueError("grid resolution must be at least 16")
    if not (delta > 0):
        raise ValueError("band half-width must be positive")
    xs, ys = domain.cell_axes(n, n)
    W = part_values(P, part, xs[None, :] + 1j * ys[:, None])
    labels, count = _band_labels(W, c, delta, cfg.band_cover_limit)

    cells_of = [[] for _ in range(count)]
    ny, nx = labels.shape
    for flat in np.flatnonzero(labels.ravel() >= 0):
        iy, ix = divmod(int(flat), nx)
        cells_of[labels[iy, ix]].append((iy, ix))

    crit_of = [[] for _ in range(count)]
    for idx, cp in enumerate(critical):
        ix, iy = domain.cell_of(cp.location.real, cp.location.imag, n, n)
        lab = int(labels[iy, ix])
        if lab >= 0:
            crit_of[lab].append(idx)

    return tuple(
        LevelComponent(
            level=float(c),
            cells=tuple(cells),
            contains_critical=tuple(crit),
        )
        for cells, crit in zip(cells_of, crit_of)
    )


def _connected_on_grid(
    P: ComplexPoly,
    part,
    c: float,
    p1: CriticalPoint,
    p2: CriticalPoint,
    domain: Domain2D,
    n: int,
    delta,
    cfg: Tolerances,
) -> bool:
    if delta is None:
        delta = default_band_halfwidth(P, domain, n, cfg)
    xs, ys = domain.cell_axes(n, n)
    W = part_values(P, part, xs[None, :] + 1j * ys[:, None])
    labels, _ = _band_labels(W, c, delta, cfg.band_cover_limit)
    ix1, iy1 = domain.cell_of(p1.location.real, p1.location.imag, n, n)
    ix2, iy2 = domain.cell_of(p2.location.real, p2.location.imag, n, n)
    lab1 = int(labels[iy1, ix1])
    lab2 = int(labels[iy2, ix2])
    if lab1 < 0 or lab2 < 0:
        return False
    return lab1 == lab2


def same_fiber(
    P: ComplexPoly,
    part,
    p1: CriticalPoint,
    p2: CriticalPoint,
    domain: Domain2D = None,
    n: int = 512,
    delta: float = None,
    cfg: Tolerances = DEFAULT,
) -> bool:
    """Whether two equal-level critical points share one band component.

    The level comparison uses a tolerance scaled by the larger critical
    value; genuinely different levels raise DifferentLevelsError because
    the fiber question does not apply.  The connectivity answer is
    computed at n and 2n and must agree, otherwise the grid is declared
    too coarse.  Points outside the sampled domain cannot be connected
    within it, which yields False rather than an error.
    """
    v1 = critical_value(p1, part)
    v2 = critical_value(p2, part)
    level_tol = cfg.level_equality * (1.0 + max(abs(v1), abs(v2)))
    if abs(v1 - v2) > level_tol:
        raise DifferentLevelsError(
            f"critical values {v1!r} and {v2!r} differ by more than {level_tol!r}"
        )
    if domain is None:
        domain = default_domain(P, cfg)
    c = 0.5 * (v1 + v2)
    coarse = _connected_on_grid(P, part, c, p1, p2, domain, n, delta, cfg)
    fine = _connected_on_grid(P, part, c, p1, p2, domain, 2 * n, delta, cfg)
    if coarse != fine:
        raise ResolutionInstabilityError(
            f"connectivity changed between grids {n} and {2 * n}; refine the grid"
        )
    return coarse


def fiber_signature(
    P: ComplexPoly,
    part,
    domain: Domain2D = None,
    n: int = 512,
    cfg: Tolerances = DEFAULT,
) -> FiberSignature:
    """Level partition and fiber connectivity of the critical set."""
    if P.degree < 2:
        raise InsufficientDegreeError("fiber signature needs degree >= 2")
    if domain is None:
        domain = default_domain(P, cfg)
    cps = critical_points(P, cfg)
    nondeg = [
        i for i, cp in enumerate(cps) if cp.kind is CriticalKind.NONDEGENERATE_SADDLE
    ]
    degenerate_count = len(cps) - len(nondeg)

    values = {i: critical_value(cps[i], part) for i in nondeg}
    level_tol = cfg.level_equality * (
        1.0 + max((abs(v) for v in values.values()), default=0.0)
    )
    ordered = sorted(nondeg, key=lambda i: (values[i], i))
    classes = []
    for i in ordered:
        if classes and values[i] - values[classes[-1][-1]] <= level_tol:
            classes[-1].append(i)
        else:
            classes.append([i])

    pair_results = []
    for cls in classes:
        members = sorted(cls)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                try:
                    same = same_fiber(P, part, cps[i], cps[j], domain, n, cfg=cfg)
                except DifferentLevelsError:
                    # chained grouping can span slightly more than one pair
                    # tolerance; distinct levels are never one fiber
                    same = False
                pair_results.append((i, j, same))

    return FiberSignature(
        saddle_count=len(nondeg),
        degenerate_count=degenerate_count,
        classes=tuple(tuple(sorted(cls)) for cls in classes),
        class_levels=tuple(
            sum(values[i] for i in cls) / len(cls) for cls in classes
        ),
        pair_same_fiber=tuple(pair_results),
    )


def signatures_equivalent(a: FiberSignature, b: FiberSignature) -> bool:
    """Necessary condition for equal level topology; never a proof of it."""
    return (
        a.saddle_count == b.saddle_count
        and a.degenerate_count == b.degenerate_count
        and a.class_sizes() == b.class_sizes()
        and a.fiber_patterns() == b.fiber_patterns()
    )


# ---------------------------------------------------------------------------
# exports


def signature_to_json_dict(sig: FiberSignature, points=()) -> dict:
    doc = {
        "saddle_count": sig.saddle_count,
        "degenerate_count": sig.degenerate_count,
        "classes": [
            {"level": level, "members": list(cls)}
            for cls, level in zip(sig.classes, sig.class_levels)
        ],
        "same_fiber_pairs": [
            {"pair": [i, j], "same_fiber": same} for i, j, same in sig.pair_same_fiber
        ],
    }
    if points:
        doc["critical_points"] = [complex_pair(cp.location) for cp in points]
    return doc
