"""Chebyshev recurrences and the rational pair f, g."""

import math

import numpy as np
import pytest
import sympy as sp

from conevol import chebyshev as ch
from conevol.errors import PoleError
from conevol.families import KnotFamily

from oracles import central_diff, sympy_S


def test_base_cases():
    assert ch.eval_S(0, 3.7) == 1.0
    assert ch.eval_S(1, 3.7) == 3.7
    assert ch.eval_S(-1, 0.123) == 0.0
    assert ch.eval_S(-2, 0.123) == -1.0


def test_value_at_two_is_index_plus_one():
    # integer input stays exact through the recurrence
    for k in range(0, 13):
        assert ch.eval_S(k, 2) == k + 1


def test_closed_form_sine_ratio():
    # S_k(2 cos t) = sin((k+1) t) / sin t
    for k in (2, 5, 9):
        for t in (0.3, math.pi / 7, 1.9):
            expected = math.sin((k + 1) * t) / math.sin(t)
            assert ch.eval_S(k, 2.0 * math.cos(t)) == pytest.approx(expected, abs=1e-11)


def test_pell_identity_scaled():
    rng = np.random.default_rng(42)
    for _ in range(200):
        while True:
            y = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            if abs(y) <= 4.0:
                break
        for k in range(-6, 9):
            a, b = ch.eval_S(k, y), ch.eval_S(k - 1, y)
            res = abs(a * a - y * a * b + b * b - 1.0)
            scale = max(1.0, abs(a * a), abs(y * a * b), abs(b * b))
            assert res / scale <= 1e-10


def test_negative_index_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(20):
        y = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        for k in range(0, 9):
            assert ch.eval_S(-k, y) == pytest.approx(-ch.eval_S(k - 2, y), abs=1e-10)


def test_poly_coefficients():
    assert ch.poly_S(2).coeffs == (-1, 0, 1)
    assert ch.poly_S(4).coeffs == (1, 0, -3, 0, 1)
    assert ch.poly_S(-1).coeffs == ()
    assert ch.poly_S(-2).coeffs == (-1,)


def test_poly_matches_sympy():
    y = sp.Symbol("y")
    for k in range(-6, 11):
        expected = sp.Poly(sympy_S(k, y), y).all_coeffs()[::-1] if sympy_S(k, y) != 0 else []
        assert list(ch.poly_S(k).coeffs) == [int(c) for c in expected]


def test_poly_invariants():
    for k in range(0, 11):
        poly = ch.poly_S(k)
        assert poly.degree == k
        assert poly.coeffs[-1] == 1
    # recurrence holds coefficient-wise
    for k in range(-4, 9):
        a = np.zeros(14)
        for j, c in enumerate(ch.poly_S(k).coeffs):
            a[j] += c
        for j, c in enumerate(ch.poly_S(k - 2).coeffs):
            a[j] += c
        for j, c in enumerate(ch.poly_S(k - 1).coeffs):
            a[j + 1] -= c
        assert np.all(a == 0)


def test_poly_horner_matches_eval():
    rng = np.random.default_rng(11)
    for k in range(0, 11):
        poly = ch.poly_S(k)
        for _ in range(20):
            y = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            ref = ch.eval_S(k, y)
            assert poly(y) == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_derivative_base_cases():
    assert ch.eval_S_prime(1, 0.77) == 1.0
    assert ch.eval_S_prime(2, 3.0) == 6.0
    assert ch.eval_S_prime(0, 1.5) == 0.0


def test_derivative_matches_finite_difference():
    rng = np.random.default_rng(8)
    for k in (-5, -3, 4, 7):
        for _ in range(10):
            y = complex(rng.uniform(-3, 3), rng.uniform(-2, 2))
            fd = central_diff(lambda v: ch.eval_S(k, v), y)
            assert ch.eval_S_prime(k, y) == pytest.approx(fd, rel=1e-5, abs=1e-7)


def test_f_values():
    assert ch.eval_f(1, 4.0) == pytest.approx(2.0, abs=1e-14)
    assert ch.eval_f(2, 1.0) == pytest.approx(1.0, abs=1e-14)


def test_f_pole_raises():
    with pytest.raises(PoleError):
        ch.eval_f(1, 2.0)
    with pytest.raises(PoleError):
        ch.eval_f(2, 0.0)  # S_1 vanishes


def test_f_prime_values():
    assert ch.eval_f_prime(1, 4.0) == pytest.approx(-0.5, abs=1e-14)
    assert ch.eval_f_prime(1, 3.0) == pytest.approx(-2.0, abs=1e-14)


def test_f_prime_finite_difference():
    fd = central_diff(lambda v: ch.eval_f(2, v), 1.0 + 0.5j)
    assert ch.eval_f_prime(2, 1.0 + 0.5j) == pytest.approx(fd, rel=1e-6)
    rng = np.random.default_rng(4)
    for n in (-3, -1, 2, 3):
        for _ in range(8):
            y = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.3, 2.0))
            fd = central_diff(lambda v: ch.eval_f(n, v), y)
            assert ch.eval_f_prime(n, y) == pytest.approx(fd, rel=1e-5, abs=1e-8)


def test_g_values():
    assert ch.eval_g(KnotFamily.C2N2, 1, 3.0) == pytest.approx(-2.0, abs=1e-14)
    assert ch.eval_g(KnotFamily.C2NMINUS2N, 1, 3.0) == pytest.approx(1.0, abs=1e-14)
    assert ch.eval_g(KnotFamily.C2N3, 1, 4.0) == pytest.approx(-9.0 / 8.0, abs=1e-14)


def test_g_prime_finite_difference():
    rng = np.random.default_rng(5)
    for family in KnotFamily:
        for n in (-2, 1, 2):
            for _ in range(6):
                y = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.4, 2.0))
                fd = central_diff(lambda v: ch.eval_g(family, n, v), y)
                assert ch.eval_g_prime(family, n, y) == pytest.approx(
                    fd, rel=1e-5, abs=1e-8
                )


def test_rational_pair_wrapper():
    pair = ch.RationalPair(KnotFamily.C2N3, 2)
    y = 1.3 + 0.4j
    assert pair.f(y) == ch.eval_f(2, y)
    assert pair.g(y) == ch.eval_g(KnotFamily.C2N3, 2, y)
    assert pair.f_prime(y) == ch.eval_f_prime(2, y)
    assert pair.g_prime(y) == ch.eval_g_prime(KnotFamily.C2N3, 2, y)


def test_pure_functions_thread_safe_shape():
    # same inputs, same outputs, no state
    y = 0.9 - 1.1j
    assert ch.eval_S(6, y) == ch.eval_S(6, y)
    assert ch.eval_f(3, y) == ch.eval_f(3, y)
