"""Deciding when two polynomials induce the same graph curvature.

Two polynomials of degree at least two have identical curvature fields
exactly when one is a unit-modulus multiple of the other plus a constant:
Q = alpha P + beta with |alpha| = 1.  Rotating by a unit number and
translating vertically are rigid motions of the graph, which gives
sufficiency; the converse makes the coefficient test a complete decision
procedure, so the decider works on coefficients and only searches for
numeric witnesses when the test fails.

Affine polynomials are the degenerate corner: every plane is flat, all
curvatures vanish identically, and no certificate relation needs to hold.
Distinct degrees can never match because curvature decays like a power of
the radius determined by the degree; witnesses for that case live on
large circles where the asymptotics dominate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .curvature import Domain2D, curvature_at, curvature_values, default_domain
from .errors import InsufficientDegreeError
from .levelsets import FiberSignature, fiber_signature, signature_to_json_dict
from .poly import ComplexPoly, poly_to_json_dict
from .serialize import complex_pair


@dataclass(frozen=True)
class Certificate:
    """Witness of equivalence: Q = alpha P + beta with |alpha| = 1.

    residual is the largest non-constant coefficient mismatch, relative to
    the largest coefficient magnitude of either polynomial.
    """

    alpha: complex
    beta: complex
    residual: float


@dataclass(frozen=True)
class CurvatureWitness:
    """A point where the two curvature fields visibly differ."""

    point: complex
    curvature_p: float
    curvature_q: float

    @property
    def difference(self) -> float:
        return abs(self.curvature_p - self.curvature_q)


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    flat_case: bool
    certificate: Certificate = None
    witness: CurvatureWitness = None


@dataclass(frozen=True)
class LoopSample:
    """One member of the rotation family exp(i t) P."""

    t: float
    poly: ComplexPoly
    curvature_deviation: float
    signature: FiberSignature


def joint_default_domain(P: ComplexPoly, Q: ComplexPoly, cfg: Tolerances = DEFAULT) -> Domain2D:
    a = default_domain(P, cfg)
    b = default_domain(Q, cfg)
    return Domain2D(
        min(a.xmin, b.xmin),
        max(a.xmax, b.xmax),
        min(a.ymin, b.ymin),
        max(a.ymax, b.ymax),
    )


def numeric_curvature_compare(
    P: ComplexPoly, Q: ComplexPoly, domain: Domain2D, n: int, cfg: Tolerances = DEFAULT
):
    """Largest curvature gap over an n x n lattice and where it occurs.

    Ties resolve to the smallest row-major lattice index, so the result is
    deterministic.
    """
    if n < 2:
        raise ValueError("comparison lattice needs at least 2 cells per axis")
    diff = np.abs(
        curvature_values(P, domain, n, n, cfg) - curvature_values(Q, domain, n, n, cfg)
    )
    flat = int(np.argmax(diff))
    iy, ix = divmod(flat, n)
    xs, ys = domain.cell_axes(n, n)
    return float(diff[iy, ix]), complex(xs[ix], ys[iy])


def _grid_witness(
    P: ComplexPoly, Q: ComplexPoly, domain: Domain2D, cfg: Tolerances
) -> CurvatureWitness:
    # coarse pass, then one refinement pass around the argmax
    diff, z = numeric_curvature_compare(P, Q, domain, 64, cfg)
    dx = domain.width / 64
    dy = domain.height / 64
    fine = Domain2D(z.real - dx, z.real + dx, z.imag - dy, z.imag + dy)
    diff2, z2 = numeric_curvature_compare(P, Q, fine, 33, cfg)
    if diff2 > diff:
        z = z2
    return CurvatureWitness(
        point=z,
        curvature_p=curvature_at(P, z, cfg),
        curvature_q=curvature_at(Q, z, cfg),
    )


def _circle_witness(
    P: ComplexPoly, Q: ComplexPoly, cfg: Tolerances
) -> CurvatureWitness:
    """First large-circle point where the relative curvature gap is large.

    Curvature magnitude scales like R**(-2 deg) far out, so distinct
    degrees force the ratio apart; five dyadic radii with 32 angles each
    are plenty.  If no sample clears the threshold the best one found is
    still returned.
    """
    best = None
    best_rel = -1.0
    for j in range(5):
        radius = cfg.witness_radius * (2.0 ** j)
        for k in range(32):
            z = radius * complex(
                math.cos(2.0 * math.pi * k / 32), math.sin(2.0 * math.pi * k / 32)
            )
            kp = curvature_at(P, z, cfg)
            kq = curvature_at(Q, z, cfg)
            scale = max(abs(kp), abs(kq))
            rel = 0.0 if scale == 0.0 else abs(kp - kq) / scale
            if rel > cfg.degree_witness_rel:
                return CurvatureWitness(point=z, curvature_p=kp, curvature_q=kq)
            if rel > best_rel:
                best_rel = rel
                best = CurvatureWitness(point=z, curvature_p=kp, curvature_q=kq)
    return best


def decide_equal_curvature(
    P: ComplexPoly, Q: ComplexPoly, cfg: Tolerances = DEFAULT
) -> EquivalenceVerdict:
    """Decide whether the curvature fields of P and Q coincide.

    Affine versus affine is equivalent with no certificate (both graphs
    are flat planes).  Affine versus curved and distinct curved degrees
    are rejected with a witness.  Equal degrees come down to the
    coefficient test: alpha is fixed by the leading coefficients, must be
    unit modulus, and Q - alpha P must be constant; the constant is beta.
    """
    if P.is_affine and Q.is_affine:
        return EquivalenceVerdict(equivalent=True, flat_case=True)
    if P.is_affine or Q.is_affine:
        curved = Q if P.is_affine else P
        witness = _grid_witness(P, Q, default_domain(curved, cfg), cfg)
        return EquivalenceVerdict(equivalent=False, flat_case=False, witness=witness)
    if P.degree != Q.degree:
        witness = _circle_witness(P, Q, cfg)
        return EquivalenceVerdict(equivalent=False, flat_case=False, witness=witness)

    alpha = Q.leading / P.leading
    scale = max(P.max_coeff, Q.max_coeff)
    if abs(abs(alpha) - 1.0) <= cfg.unit_modulus:
        diff = Q - P * alpha
        tail = diff.coeffs[1:]
        residual = max((abs(c) for c in tail), default=0.0) / scale
        if residual <= cfg.coeff_match:
            return EquivalenceVerdict(
                equivalent=True,
                flat_case=False,
                certificate=Certificate(
                    alpha=alpha, beta=diff.coeffs[0], residual=residual
                ),
            )
    witness = _grid_witness(P, Q, joint_default_domain(P, Q, cfg), cfg)
    return EquivalenceVerdict(equivalent=False, flat_case=False, witness=witness)


def loop_scan(
    P: ComplexPoly,
    num_samples: int,
    domain: Domain2D = None,
    n: int = 256,
    cfg: Tolerances = DEFAULT,
) -> tuple:
    """Sweep the rotation family exp(i t) P around the full circle.

    Each sample records the largest curvature deviation from the base
    polynomial over the lattice (rotation is a rigid motion, so this stays
    at roundoff) and the fiber signature of the sample's real part, which
    is where the family actually changes.
    """
    if num_samples < 1:
        raise ValueError("need at least one loop sample")
    if P.degree < 2:
        raise InsufficientDegreeError("loop scan needs degree >= 2")
    if domain is None:
        domain = default_domain(P, cfg)
    base = curvature_values(P, domain, n, n, cfg)
    out = []
    for k in range(num_samples):
        t = 2.0 * math.pi * k / num_samples
        rotated = P.rotate(t)
        deviation = float(
            np.abs(curvature_values(rotated, domain, n, n, cfg) - base).max()
        )
        sig = fiber_signature(rotated, "real", domain, n, cfg)
        out.append(
            LoopSample(
                t=t, poly=rotated, curvature_deviation=deviation, signature=sig
            )
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# exports


def verdict_to_json_dict(verdict: EquivalenceVerdict) -> dict:
    doc = {
        "equivalent": verdict.equivalent,
        "flat_case": verdict.flat_case,
        "certificate": None,
        "witness": None,
    }
    if verdict.certificate is not None:
        doc["certificate"] = {
            "alpha": complex_pair(verdict.certificate.alpha),
            "beta": complex_pair(verdict.certificate.beta),
            "residual": verdict.certificate.residual,
        }
    if verdict.witness is not None:
        doc["witness"] = {
            "point": complex_pair(verdict.witness.point),
            "curvature_p": verdict.witness.curvature_p,
            "curvature_q": verdict.witness.curvature_q,
            "difference": verdict.witness.difference,
        }
    return doc


def loop_to_json_dict(samples, domain: Domain2D, n: int) -> dict:
    from .curvature import domain_to_json_dict

    return {
        "num_samples": len(samples),
        "grid_n": n,
        "domain": domain_to_json_dict(domain),
        "samples": [
            {
                "t": s.t,
                "poly": poly_to_json_dict(s.poly),
                "curvature_deviation": s.curvature_deviation,
                "signature": signature_to_json_dict(s.signature),
            }
            for s in samples
        ],
    }
