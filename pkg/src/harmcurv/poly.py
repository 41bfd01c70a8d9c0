"""Complex polynomials: evaluation, calculus, roots, and harmonic jets.

Coefficients are stored in ascending powers: index k holds the coefficient
of z**k.  Construction trims exact trailing zeros only, so the stored
leading coefficient is nonzero unless the polynomial is identically zero
and the degree is structural rather than inferred fuzzily.  Instances are
immutable; every operation returns a new object.

The real and imaginary parts u, v of P(x + iy) are conjugate harmonic
functions, and their partial derivatives fall out of the complex
derivatives:

    u_x = Re P'    u_y = -Im P'    u_xx = Re P''    u_xy = -Im P''

with u_yy = -u_xx by harmonicity, and v_x = -u_y, v_y = u_x.  `jet`
packages values and partials of both parts at a point.

Roots are found by the Ehrlich-Aberth simultaneous iteration started on a
circle at the Cauchy bound, polished with a few Newton steps, and merged
into multiplicity clusters.  Multiple roots limit attainable accuracy to
roughly eps**(1/multiplicity), which is why the cluster radius is much
coarser than the step tolerance.
"""

from __future__ import annotations

import cmath
import json
import math
import sys
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import InsufficientDegreeError, NonConvergenceError, PolyFormatError

_EPS = sys.float_info.epsilon

# Irrational phase for the starting circle: no initial point lands on a
# symmetry axis of the coefficient pattern, which would stall the iteration.
_START_PHASE = 0.6180339887498949


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _horner(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _derive(coeffs: Sequence[complex]) -> tuple:
    if len(coeffs) <= 1:
        return (0j,)
    return tuple(k * coeffs[k] for k in range(1, len(coeffs)))


class ComplexPoly:
    """Immutable complex polynomial in one variable."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[complex] = (0j,)):
        cs = [complex(c) for c in coeffs]
        if not cs:
            cs = [0j]
        for c in cs:
            if not _finite(c):
                raise ValueError("polynomial coefficients must be finite")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    # -- structure ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading(self) -> complex:
        return self._coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self._coeffs[0] == 0

    @property
    def is_affine(self) -> bool:
        """Degree at most one: the graph of either part is a plane."""
        return self.degree <= 1

    @property
    def max_coeff(self) -> float:
        return max(abs(c) for c in self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"ComplexPoly({list(self._coeffs)!r})"

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        n = max(len(a), len(b))
        return ComplexPoly(
            [(a[k] if k < len(a) else 0j) + (b[k] if k < len(b) else 0j) for k in range(n)]
        )

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self + (other * -1)

    def __mul__(self, scalar: complex) -> "ComplexPoly":
        if isinstance(scalar, ComplexPoly):
            return NotImplemented
        return ComplexPoly([c * complex(scalar) for c in self._coeffs])

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexPoly":
        return self * -1

    def affine(self, alpha: complex, beta: complex) -> "ComplexPoly":
        """alpha * P + beta.  alpha = 0 collapses to the constant beta."""
        alpha, beta = complex(alpha), complex(beta)
        if not (_finite(alpha) and _finite(beta)):
            raise ValueError("affine parameters must be finite")
        cs = [c * alpha for c in self._coeffs]
        cs[0] += beta
        return ComplexPoly(cs)

    def rotate(self, t: float) -> "ComplexPoly":
        """Multiply by the unit number exp(i t).

        The real part of the rotated polynomial is cos(t) u - sin(t) v, so
        sweeping t deforms the graph of u into the graph of v and back.
        """
        t = float(t)
        if not math.isfinite(t):
            raise ValueError("rotation angle must be finite")
        return self.affine(complex(math.cos(t), math.sin(t)), 0j)

    def derivative(self) -> "ComplexPoly":
        return ComplexPoly(_derive(self._coeffs))

    # -- evaluation --------------------------------------------------------

    def evaluate(self, z: complex) -> complex:
        z = complex(z)
        if not _finite(z):
            raise ValueError("evaluation point must be finite")
        return _horner(self._coeffs, z)

    __call__ = evaluate

    def evaluate_array(self, Z: np.ndarray) -> np.ndarray:
        """Horner evaluation over a numpy array of complex points."""
        acc = np.zeros_like(Z, dtype=np.complex128)
        for c in reversed(self._coeffs):
            acc = acc * Z
            acc += c
        return acc

    # -- harmonic jet ------------------------------------------------------

    def jet(self, x: float, y: float) -> "HarmonicJet":
        """Values and partials of both harmonic parts at (x, y)."""
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError("jet point must be finite")
        z = complex(x, y)
        d1 = _derive(self._coeffs)
        d2 = _derive(d1)
        f = _horner(self._coeffs, z)
        fp = _horner(d1, z)
        fpp = _horner(d2, z)
        return HarmonicJet(
            u=f.real,
            v=f.imag,
            ux=fp.real,
            uy=-fp.imag,
            uxx=fpp.real,
            uxy=-fpp.imag,
            uyy=-fpp.real,
        )

    # -- roots ---------------------------------------------------------------

    def roots(self, tol: float = None, cfg: Tolerances = DEFAULT) -> "RootSet":
        """All roots with multiplicities, via simultaneous iteration.

        Raises InsufficientDegreeError for constants and
        NonConvergenceError (carrying the best iterate) when the step
        budget runs out.
        """
        if self.degree == 0:
            raise InsufficientDegreeError("constant has no roots")
        if tol is None:
            tol = cfg.root_tol
        coeffs = list(self._coeffs)
        cauchy = _cauchy_radius(coeffs)

        # exact zero roots split off first; they are exact by construction
        zero_mult = 0
        while len(coeffs) > 1 and coeffs[0] == 0:
            coeffs.pop(0)
            zero_mult += 1

        found = [(0j, zero_mult)] if zero_mult else []
        if len(coeffs) > 1:
            approx = _aberth(coeffs, tol, cfg.root_max_iter)
            d1 = _derive(coeffs)
            abs_coeffs = [abs(c) for c in coeffs]
            approx = [
                _newton_polish(coeffs, d1, abs_coeffs, z, cfg.newton_polish_steps)
                for z in approx
            ]
            found.extend((z, 1) for z in approx)

        radius = cfg.cluster_radius_factor * (1.0 + cauchy)
        clustered = _cluster(found, radius)
        roots = tuple(
            Root(
                location=loc,
                multiplicity=mult,
                residual=abs(_horner(self._coeffs, loc)),
            )
            for loc, mult in clustered
        )
        return RootSet(roots)


@dataclass(frozen=True)
class Root:
    location: complex
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class RootSet:
    """Distinct roots sorted by (re, im), with multiplicities and residuals."""

    roots: tuple

    def locations(self) -> list:
        return [r.location for r in self.roots]

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    @property
    def distinct_count(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class HarmonicJet:
    """Second-order data of the conjugate pair u, v at one point.

    u_yy is stored as the exact negation of u_xx; the v partials follow
    from the Cauchy-Riemann equations and are exposed as properties.
    """

    u: float
    v: float
    ux: float
    uy: float
    uxx: float
    uxy: float
    uyy: float

    @property
    def vx(self) -> float:
        return -self.uy

    @property
    def vy(self) -> float:
        return self.ux

    @property
    def vxx(self) -> float:
        return -self.uxy

    @property
    def vxy(self) -> float:
        return self.uxx

    @property
    def vyy(self) -> float:
        return self.uxy


# ---------------------------------------------------------------------------
# root finding internals


def _cauchy_radius(coeffs: Sequence[complex]) -> float:
    lead = coeffs[-1]
    return 1.0 + max(abs(c / lead) for c in coeffs)


def _abs_eval(abs_coeffs: Sequence[float], r: float) -> float:
    # Horner on absolute values: the roundoff scale of evaluating at |z| = r
    acc = 0.0
    for a in reversed(abs_coeffs):
        acc = acc * r + a
    return acc


def _aberth(coeffs: Sequence[complex], tol: float, max_iter: int) -> list:
    """Ehrlich-Aberth iteration for a polynomial with nonzero constant term.

    A root stops moving once its correction passes the relative step
    tolerance or its residual reaches the evaluation roundoff floor; the
    floor is what lets multiple roots terminate, since their corrections
    plateau near eps**(1/m) and never meet the step tolerance alone.
    """
    n = len(coeffs) - 1
    d1 = _derive(coeffs)
    abs_coeffs = [abs(c) for c in coeffs]
    radius = _cauchy_radius(coeffs)
    zs = [
        radius * cmath.exp(1j * (2.0 * math.pi * k / n + _START_PHASE))
        for k in range(n)
    ]
    frozen = [False] * n

    for _ in range(max_iter):
        offsets = [0j] * n
        done = True
        for k in range(n):
            if frozen[k]:
                continue
            z = zs[k]
            p = _horner(coeffs, z)
            if abs(p) <= 4.0 * _EPS * _abs_eval(abs_coeffs, abs(z)):
                frozen[k] = True
                continue
            dp = _horner(d1, z)
            if dp == 0:
                zs[k] = z * (1.0 + 1e-8) + 1e-8  # step off the stationary point
                done = False
                continue
            w = p / dp
            s = 0j
            collided = False
            for j in range(n):
                if j == k:
                    continue
                d = z - zs[j]
                if d == 0:
                    collided = True
                    break
                s += 1.0 / d
            if collided:
                zs[k] = z * (1.0 + 1e-8) + 1e-8
                done = False
                continue
            denom = 1.0 - w * s
            offset = w if denom == 0 else w / denom
            offsets[k] = offset
            if abs(offset) > tol * (1.0 + abs(z)):
                done = False
        for k in range(n):
            if offsets[k] != 0:
                zs[k] = zs[k] - offsets[k]
        if done:
            return zs

    residuals = [abs(_horner(coeffs, z)) for z in zs]
    best = min(range(n), key=residuals.__getitem__)
    raise NonConvergenceError(
        f"root iteration did not converge within {max_iter} steps",
        zs[best],
        residuals[best],
    )


def _newton_polish(
    coeffs: Sequence[complex],
    d1: Sequence[complex],
    abs_coeffs: Sequence[float],
    z: complex,
    steps: int,
) -> complex:
    best = z
    best_res = abs(_horner(coeffs, z))
    for _ in range(steps):
        if best_res <= 4.0 * _EPS * _abs_eval(abs_coeffs, abs(z)):
            break
        dp = _horner(d1, z)
        if dp == 0:
            break
        z = z - _horner(coeffs, z) / dp
        res = abs(_horner(coeffs, z))
        if res < best_res:
            best, best_res = z, res
        else:
            break
    return best


def _cluster(weighted: list, radius: float) -> list:
    """Single-linkage merge of nearby approximants into multiplicity groups."""
    m = len(weighted)
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(weighted[i][0] - weighted[j][0]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    groups: dict = {}
    for i, (z, w) in enumerate(weighted):
        groups.setdefault(find(i), []).append((z, w))

    out = []
    for members in groups.values():
        total = sum(w for _, w in members)
        center = sum(z * w for z, w in members) / total
        out.append((center, total))
    out.sort(key=lambda item: (item[0].real, item[0].imag))
    return out


# ---------------------------------------------------------------------------
# polynomial file format, shared by every command


def poly_from_json_dict(doc) -> ComplexPoly:
    """Parse {"coeffs": [[re, im], ...]} with strict validation."""
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise PolyFormatError('polynomial file must be an object with a "coeffs" key')
    raw = doc["coeffs"]
    if not isinstance(raw, list) or not raw:
        raise PolyFormatError('"coeffs" must be a non-empty array')
    out = []
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise PolyFormatError("each coefficient must be a [re, im] pair")
        parts = []
        for part in entry:
            if isinstance(part, bool) or not isinstance(part, (int, float)):
                raise PolyFormatError("coefficient entries must be numbers")
            if not math.isfinite(part):
                raise PolyFormatError("coefficient entries must be finite")
            parts.append(float(part))
        out.append(complex(parts[0], parts[1]))
    return ComplexPoly(out)


def poly_to_json_dict(poly: ComplexPoly) -> dict:
    return {"coeffs": [[c.real, c.imag] for c in poly.coeffs]}


def load_poly(path) -> ComplexPoly:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise PolyFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PolyFormatError(f"invalid JSON in {path}: {exc}") from exc
    return poly_from_json_dict(doc)
