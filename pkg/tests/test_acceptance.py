"""Acceptance suite: one test per shipped guarantee, run with -v for the ledger.

Every ensemble is seeded, so a pass here is reproducible bit for bit.
Polynomial coefficients are drawn uniformly from the unit disk; where a
check feeds the root finder or the decider, the leading coefficient is
redrawn until it clears a conditioning floor (the guarantee is about the
analysis, not about adversarially tiny leading terms).
"""

from __future__ import annotations

import cmath
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from harmcurv import (
    ComplexPoly,
    CriticalKind,
    critical_points,
    curvature_at,
    curvature_hessian_at,
    decide_equal_curvature,
    fiber_signature,
    first_form_at,
    flat_points,
    gauss_lucas_report,
    loop_scan,
    numeric_curvature_compare,
    joint_default_domain,
    poly_to_json_dict,
    same_fiber,
    signatures_equivalent,
)

CUBIC = ComplexPoly([0.0, -3.0, 0.0, 1.0])  # z^3 - 3z


def disk_points(rng, n, radius=1.0):
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    a = rng.uniform(0.0, 2.0 * math.pi, n)
    return r * np.exp(1j * a)


def disk_poly(rng, degree, lead_min=0.0):
    cs = disk_points(rng, degree + 1)
    while abs(cs[-1]) < lead_min:
        cs[-1] = disk_points(rng, 1)[0]
    return ComplexPoly(list(cs))


def ensemble(rng, count, lead_min=0.0, degrees=(2, 7)):
    return [
        disk_poly(rng, int(rng.integers(*degrees)), lead_min) for _ in range(count)
    ]


def test_01_both_curvature_routes_agree_within_1e9():
    rng = np.random.default_rng(101)
    polys = ensemble(rng, 200)
    started = time.perf_counter()
    for p in polys:
        for z in disk_points(rng, 50, radius=2.0):
            a = curvature_at(p, complex(z))
            b = curvature_hessian_at(p, z.real, z.imag)
            assert abs(a - b) <= 1e-9 * (1.0 + abs(a))
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"10k dual-route evaluations took {elapsed:.2f}s"


def test_02_curvature_nonpositive_and_flat_points_bounded():
    rng = np.random.default_rng(102)
    for p in ensemble(rng, 200, lead_min=1e-6):
        for z in disk_points(rng, 50, radius=2.0):
            assert curvature_at(p, complex(z)) <= 1e-12
        rs = flat_points(p)
        assert rs.distinct_count <= p.degree - 2
        for w in rs.locations():
            assert abs(curvature_at(p, w)) <= 1e-18


def test_03_cubic_worked_example_reproduced():
    started = time.perf_counter()
    cps = critical_points(CUBIC)
    assert len(cps) == 2
    assert abs(cps[0].location - (-1.0)) <= 1e-8
    assert abs(cps[1].location - 1.0) <= 1e-8
    assert all(cp.kind is CriticalKind.NONDEGENERATE_SADDLE for cp in cps)
    u_values = sorted(cp.u_value for cp in cps)
    assert abs(u_values[0] - (-2.0)) <= 1e-9
    assert abs(u_values[1] - 2.0) <= 1e-9
    for cp in cps:
        assert abs(cp.v_value) <= 1e-9
    assert same_fiber(CUBIC, "imag", cps[0], cps[1], n=512)
    su = fiber_signature(CUBIC, "real", n=512)
    sv = fiber_signature(CUBIC, "imag", n=512)
    assert not signatures_equivalent(su, sv)
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"worked example took {elapsed:.2f}s at grid 512"


def test_04_conjugate_parts_share_curvature():
    rng = np.random.default_rng(104)
    for _ in range(50):
        p = disk_poly(rng, int(rng.integers(2, 7)))
        for z in disk_points(rng, 10_000, radius=2.0):
            a = curvature_hessian_at(p, z.real, z.imag, part="real")
            b = curvature_hessian_at(p, z.real, z.imag, part="imag")
            assert abs(a - b) <= 1e-9 * (1.0 + abs(a))


def test_05_rotation_translation_family_certified():
    rng = np.random.default_rng(105)
    for _ in range(100):
        p = disk_poly(rng, int(rng.integers(2, 7)), lead_min=0.1)
        alpha = cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        beta = complex(rng.normal(), rng.normal())
        q = p.affine(alpha, beta)
        verdict = decide_equal_curvature(p, q)
        assert verdict.equivalent
        assert verdict.certificate.residual <= 1e-12
        diff, _ = numeric_curvature_compare(p, q, joint_default_domain(p, q), 128)
        assert diff <= 1e-9


def test_06_unrelated_same_degree_pairs_rejected_with_witness():
    rng = np.random.default_rng(106)
    for _ in range(100):
        degree = int(rng.integers(2, 7))
        p = disk_poly(rng, degree, lead_min=0.1)
        q = disk_poly(rng, degree, lead_min=0.1)
        verdict = decide_equal_curvature(p, q)
        assert not verdict.equivalent
        assert abs(verdict.witness.difference) > 1e-6
    # near misses: the right shape, but |alpha| off unity by 1e-3
    for _ in range(20):
        p = disk_poly(rng, int(rng.integers(2, 7)), lead_min=0.1)
        alpha = (1.0 + 1e-3) * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        q = p.affine(alpha, complex(rng.normal(), rng.normal()))
        verdict = decide_equal_curvature(p, q)
        assert not verdict.equivalent
        assert abs(verdict.witness.difference) > 1e-6


def test_07_distinct_degrees_diverge_at_large_radius():
    rng = np.random.default_rng(107)
    for _ in range(50):
        da, db = sorted(rng.choice([2, 3, 4, 5, 6], size=2, replace=False))
        p = disk_poly(rng, int(da), lead_min=0.5)
        q = disk_poly(rng, int(db), lead_min=0.5)
        verdict = decide_equal_curvature(p, q)
        assert not verdict.equivalent
        assert abs(verdict.witness.point) >= 10.0
        means = []
        for radius in (10.0, 20.0, 40.0):
            logs = [
                math.log(abs(curvature_at(p, radius * cmath.exp(2j * math.pi * k / 32))))
                - math.log(abs(curvature_at(q, radius * cmath.exp(2j * math.pi * k / 32))))
                for k in range(32)
            ]
            means.append(sum(logs) / len(logs))
        # deg p < deg q: |K_p| / |K_q| grows like r^(2(db - da))
        assert means[0] < means[1] < means[2]


def test_08_derivative_roots_stay_in_root_hulls():
    rng = np.random.default_rng(108)
    for p in ensemble(rng, 500, lead_min=0.1):
        report = gauss_lucas_report(p)
        assert report.derivative_roots_contained
        assert report.second_derivative_roots_contained
        assert report.max_violation_distance <= 1e-8


def test_09_every_nondegenerate_critical_point_is_a_saddle():
    rng = np.random.default_rng(109)
    polys = ensemble(rng, 150, lead_min=0.1) + ensemble(rng, 150)
    checked = 0
    for p in polys:
        for cp in critical_points(p):
            if cp.kind is CriticalKind.NONDEGENERATE_SADDLE:
                assert cp.hessian_det < 0.0
                checked += 1
    assert checked > 300  # the ensemble really exercised the classifier


def test_10_loop_scan_preserves_curvature_and_flags_quarter_turns():
    samples = loop_scan(CUBIC, 64, n=128)
    assert len(samples) == 64
    for sample in samples:
        assert sample.curvature_deviation <= 1e-12
    paired = [
        k
        for k, sample in enumerate(samples)
        if sample.signature.class_sizes() == (2,)
    ]
    assert paired == [16, 48]
    for k in paired:
        assert all(same for _, _, same in samples[k].signature.pair_same_fiber)
    # quarter turns are exactly the conjugate-part relabelings:
    # Re(i^k P) = u, -v, -u, v for k = 0..3
    for k, factor in zip((0, 16, 32, 48), (1.0, 1j, -1.0, -1j)):
        for got, base in zip(samples[k].poly.coeffs, CUBIC.coeffs):
            assert abs(got - factor * base) <= 1e-12 * (1.0 + abs(base))


def test_11_first_forms_differ_while_curvatures_match():
    fu = first_form_at(CUBIC, "real", 1.0, 1.0)
    fv = first_form_at(CUBIC, "imag", 1.0, 1.0)
    assert abs(fu.E - 10.0) <= 1e-12
    assert abs(fu.F - 18.0) <= 1e-12
    assert abs(fu.G - 37.0) <= 1e-12
    assert abs(fv.E - 37.0) <= 1e-12
    assert abs(fv.F - (-18.0)) <= 1e-12
    assert abs(fv.G - 10.0) <= 1e-12
    assert (fu.E, fu.F, fu.G) != (fv.E, fv.F, fv.G)
    ku = curvature_hessian_at(CUBIC, 1.0, 1.0, part="real")
    kv = curvature_hessian_at(CUBIC, 1.0, 1.0, part="imag")
    assert abs(ku - kv) <= 1e-9 * (1.0 + abs(ku))


def test_12_cli_output_is_byte_deterministic(tmp_path):
    poly_path = tmp_path / "cubic.json"
    poly_path.write_text(json.dumps(poly_to_json_dict(CUBIC)))
    commands = (
        ["roots", str(poly_path)],
        ["curvature", str(poly_path), "--grid", "32", "--format", "csv"],
        ["critical", str(poly_path)],
        ["fibers", str(poly_path), "--part", "imag", "--grid", "64"],
        ["equiv", str(poly_path), str(poly_path)],
        ["loop", str(poly_path), "--t-samples", "4", "--grid", "32"],
    )
    for argv in commands:
        cmd = [sys.executable, "-m", "harmcurv"] + argv
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert first.stdout
