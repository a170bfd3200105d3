"""Contour volumes, branch tracking, quadrature, and the Schlaefli oracle."""

import math

import numpy as np
import pytest

from conevol import volume as vo
from conevol.errors import QuadratureError
from conevol.families import ConeManifoldSpec, KnotFamily
from conevol.geometry import Regime, classify, critical_angle

from oracles import figure_eight_volume

FIG8 = KnotFamily.C2N2


def spec8(alpha):
    return ConeManifoldSpec(FIG8, 1, alpha)


# ------------------------------------------------------------- quadrature

def test_adaptive_quad_exact_smooth():
    val, err = vo.adaptive_quad(lambda t: math.exp(t), 0.0, 1.0)
    assert val == pytest.approx(math.e - 1.0, abs=1e-13)
    assert err < 1e-9


def test_adaptive_quad_complex_and_log_singularity():
    val, _ = vo.adaptive_quad(lambda t: (1 + 2j) * t * t, 0.0, 1.0)
    assert val == pytest.approx((1 + 2j) / 3, abs=1e-12)
    # integrable log singularity at an interior point
    val, _ = vo.adaptive_quad(lambda t: math.log(abs(t - 0.37) + 1e-300), 0.0, 1.0)
    exact = 0.37 * (math.log(0.37) - 1) + 0.63 * (math.log(0.63) - 1)
    assert val == pytest.approx(exact, abs=1e-8)


def test_adaptive_quad_subdivision_cap():
    with pytest.raises(QuadratureError):
        vo.adaptive_quad(
            lambda t: math.log(abs(t - 0.3) + 1e-300), 0.0, 1.0,
            abs_tol=1e-14, max_subdiv=5,
        )


# ------------------------------------------------ singular set bookkeeping

def test_singular_points_are_actual_zeros():
    from conevol.chebyshev import eval_S, eval_f

    for n in (-3, -2, 2, 3):
        pts = vo.real_singular_points(KnotFamily.C2N3, n)
        assert 2.0 in pts
        for s in pts:
            if s == 2.0:
                continue
            vals = [
                abs(eval_S(n - 1, s)),
                abs(eval_S(n, s) - eval_S(n - 1, s)),
                abs(eval_S(n - 1, s) - eval_S(n - 2, s)),
            ]
            assert min(vals) < 1e-12
        with_f = vo.real_singular_points(KnotFamily.C2N3, n, include_f_zeros=True)
        for s in set(with_f) - set(pts):
            assert abs(eval_f(n, s)) < 1e-12


# ------------------------------------------------------------- hyperbolic

def test_complete_structure_limit_matches_lune_series():
    v1 = vo.compute_volume(spec8(0.01)).volume
    v2 = vo.compute_volume(spec8(0.005)).volume
    extrapolated = (4.0 * v2 - v1) / 3.0
    assert extrapolated == pytest.approx(figure_eight_volume(), abs=1e-6)


def test_hyperbolic_result_fields():
    r = vo.compute_volume(spec8(1.0), cross_check=True)
    assert r.regime is Regime.HYPERBOLIC
    assert r.volume > 0
    assert r.error_estimate < 1e-8
    assert r.imaginary_residual <= 1e-7
    assert r.branch_windings == 0
    assert r.volume == pytest.approx(r.schlafli_volume, abs=1e-6)


def test_volume_monotone_decreasing_hyperbolic():
    a_k = critical_angle(FIG8, 1)
    grid = np.arange(0.1, a_k - 0.02, 0.05)
    vols = [vo.compute_volume(spec8(float(a))).volume for a in grid]
    assert all(v1 > v2 for v1, v2 in zip(vols, vols[1:]))


def test_vanishing_at_transition_both_sides():
    a_k = critical_angle(FIG8, 1)
    assert vo.compute_volume(spec8(a_k - 1e-3)).volume < 1e-3
    assert vo.compute_volume(spec8(a_k + 1e-3)).volume < 1e-3


def test_path_independence():
    res = classify(spec8(1.2))
    v0 = vo.volume_hyperbolic(spec8(1.2), res.roots[0]).volume
    for shift in (0.1j, -0.1j):
        v = vo.volume_hyperbolic(spec8(1.2), res.roots[0], anchor_shift=shift).volume
        assert abs(v - v0) <= 1e-8


def test_integrand_vanishes_at_endpoints():
    spec = spec8(1.0)
    res = classify(spec)
    y0 = res.roots[0]
    path = vo._v_path(complex(vo.collision_root(FIG8, 1)), y0)
    integrand = vo._Integrand(FIG8, 1, spec.cot_half, path)
    # the log factor is anchored to zero where the endpoints solve the equation
    for t in (1e-9, 2.0 - 1e-9):
        seg, u = integrand._locate(t)
        log_term = integrand.tracker.log_at(t, integrand._ratio(t))
        assert abs(log_term) < 1e-6


# -------------------------------------------------------------- spherical

def test_fig8_orbifold_volume_at_pi():
    # the angle-pi cone manifold is the quotient of the lens space L(5,2)
    # with its round metric: volume pi^2 / 5
    r = vo.compute_volume(spec8(math.pi))
    assert r.volume == pytest.approx(math.pi**2 / 5.0, abs=1e-8)


def test_spherical_symmetry():
    for alpha in (2.2, 2.6, 3.0):
        v1 = vo.compute_volume(spec8(alpha)).volume
        v2 = vo.compute_volume(spec8(2 * math.pi - alpha)).volume
        assert abs(v1 - v2) <= 1e-8


def test_spherical_derivative_sign_above_transition():
    a_k = critical_angle(FIG8, 1)
    h = 1e-4
    base = a_k + 0.05
    fd = (
        vo.compute_volume(spec8(base + h)).volume
        - vo.compute_volume(spec8(base - h)).volume
    ) / (2 * h)
    assert fd > 0


def test_schlafli_derivative_both_regimes():
    h = 1e-4
    for alpha, sign in ((1.2, -1.0), (2.6, +1.0)):
        r = vo.compute_volume(spec8(alpha))
        fd = (
            vo.compute_volume(spec8(alpha + h)).volume
            - vo.compute_volume(spec8(alpha - h)).volume
        ) / (2 * h)
        assert fd == pytest.approx(sign * r.l_alpha / 2.0, rel=1e-4)


# ------------------------------------------------------------- dispatch

def test_out_of_range_raises():
    a_k = critical_angle(FIG8, 1)
    with pytest.raises(ValueError):
        vo.compute_volume(spec8(2 * math.pi - a_k + 0.05))


def test_euclidean_volume_zero():
    a_k = critical_angle(FIG8, 1)
    r = vo.compute_volume(spec8(a_k))
    assert r.regime is Regime.EUCLIDEAN
    assert r.volume == 0.0


def test_near_transition_regularization_flag():
    a_k = critical_angle(FIG8, 1)
    r = vo.compute_volume(spec8(a_k + 5e-4))
    assert r.diagnostics.get("regularized")
    assert 0 < r.volume < 1e-3


def test_cross_check_all_families():
    for family, n in ((KnotFamily.C2N3, 1), (KnotFamily.C2NMINUS2N, 2),
                      (KnotFamily.C2N2, -2)):
        a_k = critical_angle(family, n)
        for alpha in (0.9, a_k + 0.25):
            r = vo.compute_volume(
                ConeManifoldSpec(family, n, alpha), cross_check=True
            )
            assert r.volume == pytest.approx(r.schlafli_volume, abs=1e-6)
            assert r.volume > 0


def test_staple_contour_member():
    # C(2n,-2n) pinches the contour against a double zero of the log argument;
    # the threading path must still reproduce the Schlaefli value
    spec = ConeManifoldSpec(KnotFamily.C2NMINUS2N, 2, 0.5)
    r = vo.compute_volume(spec, cross_check=True)
    assert r.volume == pytest.approx(r.schlafli_volume, abs=1e-6)
    assert r.imaginary_residual <= 1e-7
