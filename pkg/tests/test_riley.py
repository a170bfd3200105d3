"""Riley polynomials, cone equation assembly, roots, and the Lemma-cd link."""

import math

import numpy as np
import pytest
import sympy as sp

from conevol import riley as ry
from conevol.chebyshev import eval_f
from conevol.families import KnotFamily

from oracles import sympy_cone_polynomial, sympy_phi_even, sympy_phi_odd

ALL_N = (-3, -2, -1, 1, 2, 3)


def test_trace_u_examples():
    assert ry.trace_u(3, 1.7, 2.0) == pytest.approx(2.0, abs=1e-14)
    assert ry.trace_u(1, 2.0, 3.0) == pytest.approx(3.0, abs=1e-14)
    assert ry.trace_u(2, 1.0, 2.5) == pytest.approx(12.9375, abs=1e-12)


def test_trace_v_examples():
    assert ry.trace_v(4, 0.3, 2.0) == pytest.approx(2.0, abs=1e-14)
    assert ry.trace_v(1, 0.0, 3.0) == pytest.approx(7.0, abs=1e-14)
    assert ry.trace_v(1, 1.3, 2.7) == pytest.approx(ry.trace_u(1, 1.3, 2.7), abs=1e-14)


def test_phi_odd_small_cases():
    assert ry.build_phi_odd(1, 0).coeffs == {(0, 0): -1, (0, 1): 1}  # y - 1
    # at x = 0: (y-1) u - 1 with u = 2 + (y-2)(y+2)
    phi = ry.build_phi_odd(1, 1)
    for y in (0.3, 1.7, -2.2):
        u = 2 + (y - 2) * (y + 2)
        assert phi.eval(0.0, y) == pytest.approx((y - 1) * u - 1, abs=1e-12)


def test_phi_even_small_cases():
    phi = ry.build_phi_even(1, 1)
    for x, z in ((0.0, 0.5), (1.2, 2.3), (2.0, -1.0)):
        expected = 1 + (z + 2 - x * x) * (z - 1)
        assert phi.eval(x, z) == pytest.approx(expected, abs=1e-12)
    # figure-eight parabolic locus: z^2 - 3z + 3 at x = 2
    root = (3 + 1j * math.sqrt(3)) / 2
    assert abs(phi.eval(2.0, root)) < 1e-12


def test_phi_hol_small_cases():
    phi = ry.build_phi_hol_minus2n(1)
    assert phi.coeffs == {(0, 0): 1, (0, 1): 1, (1, 0): -1}  # -1 + (z+2-x^2)
    assert phi.eval(2.0, 3.0) == pytest.approx(0.0, abs=1e-14)  # z - 3 at x=2


@pytest.mark.parametrize("n", ALL_N)
@pytest.mark.parametrize("p", (-2, -1, 0, 1, 2))
def test_phi_odd_matches_sympy(n, p):
    expr, x, y = sympy_phi_odd(n, p)
    ours = ry.build_phi_odd(n, p)
    theirs = {}
    for (px, py), c in sp.Poly(expr, x, y).terms():
        assert px % 2 == 0, "odd power of x appeared"
        theirs[(px // 2, py)] = int(c)
    assert ours.coeffs == theirs


@pytest.mark.parametrize("n", ALL_N)
@pytest.mark.parametrize("p", (-2, -1, 1, 2))
def test_phi_even_matches_sympy(n, p):
    expr, x, z = sympy_phi_even(n, p)
    ours = ry.build_phi_even(n, p)
    theirs = {}
    for (px, pz), c in sp.Poly(expr, x, z).terms():
        assert px % 2 == 0
        theirs[(px // 2, pz)] = int(c)
    assert ours.coeffs == theirs


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_hol_factor_times_z_minus_2_is_v_minus_z(n):
    # (z-2) * (-1 + (z+2-x^2) S_{n-1}^2) = v - z  symbolically
    x, z = sp.symbols("x z")
    from oracles import sympy_S

    v = 2 + (z - 2) * (z + 2 - x**2) * sympy_S(n - 1, z) ** 2
    phi = ry.build_phi_hol_minus2n(n)
    phi_expr = sum(
        c * x ** (2 * i) * z**j for (i, j), c in phi.coeffs.items()
    )
    assert sp.expand((z - 2) * phi_expr - (v - z)) == 0


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_full_even_riley_divisible_by_hol_factor(n):
    # the word-exponent p = -n Riley polynomial contains the holonomy factor
    expr, x, z = sympy_phi_even(n, -n)
    phi = ry.build_phi_hol_minus2n(n)
    phi_expr = sum(c * x ** (2 * i) * z**j for (i, j), c in phi.coeffs.items())
    _, rem = sp.div(expr, phi_expr, z)
    assert sp.simplify(rem) == 0


def test_cone_equation_fig8_at_pi():
    eq = ry.build_cone_equation(KnotFamily.C2N2, 1, 0.0)
    # proportional to y^2 + y - 1
    c = np.array(eq.coeffs)
    assert np.allclose(c / c[-1], [-1.0, 1.0, 1.0])
    roots = sorted(r.y.real for r in ry.solve_cone_equation(eq))
    assert roots[0] == pytest.approx((-1 - math.sqrt(5)) / 2, abs=1e-12)
    assert roots[1] == pytest.approx((-1 + math.sqrt(5)) / 2, abs=1e-12)


def test_cone_equation_minus2n_trefoil_at_pi():
    # f^2 = g for C(2,-2) reduces to y^2 = 1; y = 1 is the angle-independent
    # f^2 = 1 parasite (common root of C0 and C1), y = -1 the moving root
    eq = ry.build_cone_equation(KnotFamily.C2NMINUS2N, 1, 0.0)
    c = np.array(eq.coeffs)
    assert np.allclose(c / c[-1], [-1.0, 0.0, 1.0])
    assert list(eq.parasite) == [-1, 1]
    recs = ry.solve_cone_equation(eq)
    moving = [r for r in recs if not r.unit_f]
    parasites = [r for r in recs if r.unit_f]
    assert len(moving) == 1 and moving[0].y == pytest.approx(-1.0, abs=1e-12)
    assert len(parasites) == 1 and parasites[0].y == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("family", list(KnotFamily))
@pytest.mark.parametrize("n", ALL_N)
def test_cone_parts_match_sympy(family, n):
    c0_ref, c1_ref, y = sympy_cone_polynomial(family.value, n)
    eq = ry.build_cone_equation(family, n, 0.7)
    for ours, ref in ((eq.c0, c0_ref), (eq.c1, c1_ref)):
        coeffs = sp.Poly(ref, y).all_coeffs()[::-1]
        assert list(ours) == [int(c) for c in coeffs]


@pytest.mark.parametrize("family", list(KnotFamily))
@pytest.mark.parametrize("n", (-4, -3, -2, -1, 1, 2, 3, 4))
def test_degree_matches_symbolic_prediction(family, n):
    c0_ref, c1_ref, y = sympy_cone_polynomial(family.value, n)
    eq = ry.build_cone_equation(family, n, 0.33)
    predicted = max(sp.degree(c0_ref, y), sp.degree(c1_ref, y))
    assert eq.degree == predicted


@pytest.mark.parametrize("family", list(KnotFamily))
def test_coefficients_even_in_A(family):
    a = 0.8125
    eq_plus = ry.build_cone_equation(family, 2, a)
    eq_minus = ry.build_cone_equation(family, 2, -a)
    assert eq_plus.coeffs == eq_minus.coeffs


def test_conjugation_closure():
    for family in KnotFamily:
        for n in (-2, 2, 3):
            eq = ry.build_cone_equation(family, n, 1.91)
            roots = [r.y for r in ry.solve_cone_equation(eq)]
            for y in roots:
                assert min(abs(y.conjugate() - w) for w in roots) < 1e-9


def test_residuals_at_roots():
    A = 1.0 / math.tan(0.25)
    eq = ry.build_cone_equation(KnotFamily.C2N2, 1, A)
    for r in ry.solve_cone_equation(eq):
        assert abs(eq.residual(r.y)) <= 1e-8


def test_newton_polish_on_constructed_polynomial():
    # (y^2 - 2y + 2)(y + 1): roots 1 +/- i and -1
    coeffs = [2.0, 0.0, -1.0, 1.0]
    roots = sorted(np.roots(list(reversed(coeffs))), key=lambda z: (z.real, z.imag))
    polished = [ry._newton_on_poly(coeffs, complex(z)) for z in roots]
    expected = [(-1 + 0j), (1 - 1j), (1 + 1j)]
    for got, want in zip(polished, expected):
        assert got == pytest.approx(want, abs=1e-12)


def test_lemma_cd_at_roots_and_off_roots():
    for family, n in ((KnotFamily.C2N2, 1), (KnotFamily.C2N3, 2),
                      (KnotFamily.C2NMINUS2N, 2)):
        alpha = 1.1
        A = 1.0 / math.tan(alpha / 2)
        eq = ry.build_cone_equation(family, n, A)
        for r in ry.solve_cone_equation(eq):
            rep = ry.check_lemma_cd(family, n, alpha, r.y)
            assert rep.consistent
            if not r.unit_f:
                assert rep.cone_zero and rep.phi_zero
            # perturbed points are far from both zero sets
            rep_off = ry.check_lemma_cd(family, n, alpha, r.y + 0.1)
            if not rep_off.cone_zero and not rep_off.phi_zero:
                assert abs(rep_off.phi_value) > 1e-4 or abs(rep_off.cone_residual) > 1e-4


def test_unit_f_parasites_are_alpha_independent():
    # parasite roots of C(4,3): zeros of S_1 - S_0 = y - 1
    eqs = [
        ry.build_cone_equation(KnotFamily.C2N3, 2, A) for A in (0.0, 0.5, 2.0)
    ]
    for eq in eqs:
        paras = [r.y for r in ry.solve_cone_equation(eq) if r.unit_f]
        assert len(paras) == 1
        assert paras[0] == pytest.approx(1.0, abs=1e-12)
        fv = eval_f(2, paras[0])
        assert abs(fv * fv - 1.0) < 1e-12


def test_zero_sets_coincide_small_grid():
    rng = np.random.default_rng(17)
    for family in KnotFamily:
        for n in (-2, 1, 2):
            phi = ry.build_phi(family, n)
            for _ in range(5):
                alpha = rng.uniform(0.3, math.pi - 0.3)
                A = 1.0 / math.tan(alpha / 2)
                x = 2.0 * math.cos(alpha / 2)
                cone = [
                    r.y
                    for r in ry.solve_cone_equation(
                        ry.build_cone_equation(family, n, A)
                    )
                    if not r.unit_f
                ]
                phir = np.roots(list(reversed(phi.univariate_in_y(x))))
                assert len(cone) == len(phir)
                for z in phir:
                    assert min(abs(z - w) for w in cone) < 1e-7
