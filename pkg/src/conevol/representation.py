"""Numerical SL(2,C) holonomy oracle.

Everything here is built from literal 2x2 matrix products so it can certify
the Chebyshev shortcuts independently.  The parametrized generator images
are, for meridian eigenvalue m and trace parameter t,

    odd families  (t = tr(ab)):      A = [[m, 1], [0, 1/m]],  B = [[m, 0], [t - m^2 - m^-2, 1/m]]
    even families (t = tr(a b^-1)):  A = [[m, 1], [0, 1/m]],  B = [[m, 0], [2 - t, 1/m]]

with defining words

    odd:   w = (ab)^n [ (a^-1 b^-1)^n (ab)^n ]^p
    even:  w = [ (a^-1 b)^n (a b^-1)^n ]^p

evaluated by binary exponentiation of the repeated blocks.  The longitude is
w w* a^{-4n} for odd families and w w* for even ones (w* = letters of w
reversed); its upper-left eigenvalue comes out of the (1,2)-entry trick
ell = -W~_12 / W_12, where W~ re-evaluates the word at m -> 1/m.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import eval_S, eval_f
from .errors import BranchError, DegenerateLongitudeError
from .families import KnotFamily
from .riley import trace_u, trace_v

RELATION_TOL = 1e-9
_IMAG_WINDOW = 2.0 * math.pi  # lifted holonomy angle lives in [-2*pi, 2*pi)


def mat(a, b, c, d) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=complex)


def mat_inv(M: np.ndarray) -> np.ndarray:
    """Inverse of a determinant-1 matrix, explicitly."""
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=complex)


def mat_pow(M: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        return mat_pow(mat_inv(M), -k)
    out = np.eye(2, dtype=complex)
    base = M
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def build_matrices(family: KnotFamily, m: complex, t: complex):
    """Generator images (A, B) with tr(AB) = t (odd) or tr(A B^-1) = t (even)."""
    if m == 0:
        raise ValueError("meridian eigenvalue m must be nonzero")
    A = mat(m, 1.0, 0.0, 1.0 / m)
    if family.is_odd_presentation:
        low = t - m * m - 1.0 / (m * m)
    else:
        low = 2.0 - t
    B = mat(m, 0.0, low, 1.0 / m)
    return A, B


def word_omega_odd(n: int, p: int, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(AB)^n [ (A^-1 B^-1)^n (AB)^n ]^p."""
    ab_n = mat_pow(A @ B, n)
    inner = mat_pow(mat_inv(A) @ mat_inv(B), n) @ ab_n
    return ab_n @ mat_pow(inner, p)


def word_omega_even(n: int, p: int, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """[ (A^-1 B)^n (A B^-1)^n ]^p."""
    inner = mat_pow(mat_inv(A) @ B, n) @ mat_pow(A @ mat_inv(B), n)
    return mat_pow(inner, p)


def word_value(family: KnotFamily, n: int, p: int, A: np.ndarray, B: np.ndarray):
    if family.is_odd_presentation:
        return word_omega_odd(n, p, A, B)
    return word_omega_even(n, p, A, B)


def _word_reversed(family: KnotFamily, n: int, p: int, A: np.ndarray, B: np.ndarray):
    """The word with its letters written in reversed order."""
    if family.is_odd_presentation:
        # w = P Q^p, P = (ab)^n, Q = (a^-1 b^-1)^n (ab)^n
        # w* = (Q*)^p P*, Q* = (ba)^n (b^-1 a^-1)^n, P* = (ba)^n
        ba_n = mat_pow(B @ A, n)
        q_star = ba_n @ mat_pow(mat_inv(B) @ mat_inv(A), n)
        return mat_pow(q_star, p) @ ba_n
    # w = R^p, R = (a^-1 b)^n (a b^-1)^n; R* = (b^-1 a)^n (b a^-1)^n
    r_star = mat_pow(mat_inv(B) @ A, n) @ mat_pow(B @ mat_inv(A), n)
    return mat_pow(r_star, p)


def longitude_matrix(family: KnotFamily, n: int, p: int, m: complex, t: complex):
    """Literal product rho(w*) rho(w), the reversed word times the word.

    At representation parameters this commutes with the meridian image, so it
    is upper triangular, and its (2,2)-entry equals the eigenvalue ell
    returned by longitude_eigenvalue (for odd families w* w is the canonical
    longitude times a^{4n}, which is where the m^{4n} factor in ell lives).
    """
    A, B = build_matrices(family, m, t)
    W = word_value(family, n, p, A, B)
    W_star = _word_reversed(family, n, p, A, B)
    return W_star @ W


def relation_residual(family: KnotFamily, n: int, p: int, m: complex, t: complex) -> float:
    """Frobenius norm of rho(w a) - rho(b w); zero exactly at Riley roots."""
    A, B = build_matrices(family, m, t)
    W = word_value(family, n, p, A, B)
    return float(np.linalg.norm(W @ A - B @ W))


def relation_residual_matrix(family: KnotFamily, n: int, p: int, m: complex, t: complex):
    A, B = build_matrices(family, m, t)
    W = word_value(family, n, p, A, B)
    return W @ A - B @ W


def word_12(family: KnotFamily, n: int, p: int, m: complex, t: complex) -> complex:
    """(1,2)-entry of the word image, from the literal product."""
    A, B = build_matrices(family, m, t)
    return complex(word_value(family, n, p, A, B)[0, 1])


def w12_closed_form_odd(n: int, p: int, m: complex, y: complex) -> complex:
    """Closed form of the odd-family word (1,2)-entry, valid at Riley roots:

    (m^-1 - m (S_n - S_{n-1}) / (S_{n-1} - S_{n-2})) * S_p(u) * S_{n-1}(y).
    """
    x = m + 1.0 / m
    u = trace_u(n, x, y)
    ratio = (eval_S(n, y) - eval_S(n - 1, y)) / (eval_S(n - 1, y) - eval_S(n - 2, y))
    return (1.0 / m - m * ratio) * eval_S(p, u) * eval_S(n - 1, y)


def w12_closed_form_even(n: int, p: int, m: complex, z: complex) -> complex:
    """Closed form of the even-family word (1,2)-entry, valid at Riley roots:

    (m (S_n - S_{n-1}) - m^-1 (S_{n-1} - S_{n-2})) * S_{n-1}(z) * S_{p-1}(v).
    """
    x = m + 1.0 / m
    v = trace_v(n, x, z)
    lead = m * (eval_S(n, z) - eval_S(n - 1, z)) - (1.0 / m) * (
        eval_S(n - 1, z) - eval_S(n - 2, z)
    )
    return lead * eval_S(n - 1, z) * eval_S(p - 1, v)


def longitude_eigenvalue(
    family: KnotFamily, n: int, p: int, m: complex, t: complex
) -> complex:
    """ell = -W~_12 / W_12 with W~ the word re-evaluated at m -> 1/m.

    For odd families this equals l * m^{4n} with l the longitude eigenvalue
    proper; for even families it is l itself.  Requires representation
    parameters (relation residual <= 1e-8).
    """
    res = relation_residual(family, n, p, m, t)
    if res > 1e-8:
        raise ValueError(
            f"longitude eigenvalue needs a representation point (residual {res:.3e})"
        )
    w12 = word_12(family, n, p, m, t)
    if abs(w12) <= 1e-12:
        raise DegenerateLongitudeError(f"word (1,2)-entry is {w12!r}")
    w12_tilde = word_12(family, n, p, 1.0 / m, t)
    return -w12_tilde / w12


def f_identity_gap(
    family: KnotFamily, n: int, m: complex, t: complex, ell: complex
) -> float:
    """|f_n(t) - ( -(ell+1)/(ell-1) * (m + 1/m)/(m - 1/m) )|.

    The square-root form of the identity is invariant under the branch flip
    ell^(1/2) -> -ell^(1/2); multiplying through gives this branch-free form.
    """
    rhs = -((ell + 1.0) / (ell - 1.0)) * ((m + 1.0 / m) / (m - 1.0 / m))
    return abs(eval_f(n, t) - rhs)


def _longitude_shift(family: KnotFamily, n: int, alpha: float) -> float:
    """Angle shift between ell and e^{gamma/2}: 4*n*alpha for odd words, 0 for even.

    The odd-family longitude carries the a^{-4n} correction, so
    ell = e^{(gamma + 4*n*i*alpha)/2}; the even-family longitude is bare.
    """
    return 4.0 * n * alpha if family.is_odd_presentation else 0.0


def complex_length(
    family: KnotFamily, n: int, alpha: float, y: complex, ell: complex
) -> complex:
    """Complex length gamma = l + i*phi of the singular geodesic, hyperbolic regime.

    Inverts i*coth((gamma + i*shift)/4) * cot(alpha/2) = f_n(y) with the
    branch fixed by Re(gamma) > 0 and Im(gamma) in [-2*pi, 2*pi), then
    cross-checks e^{(gamma + i*shift)/2} against the matrix-derived ell.
    """
    f = eval_f(n, complex(y))
    c = -1j * f * math.tan(0.5 * alpha)
    w = 0.5 * cmath.log((c + 1.0) / (c - 1.0))  # principal arccoth
    shift = _longitude_shift(family, n, alpha)
    base = 4.0 * w - 1j * shift
    if base.real <= 0.0:
        raise BranchError(
            f"no branch with positive real length (Re gamma = {base.real:.3e})"
        )
    gamma = None
    for k in range(-8, 9):
        cand = base + 4.0j * math.pi * k
        if -_IMAG_WINDOW <= cand.imag < _IMAG_WINDOW:
            gamma = cand
            break
    if gamma is None:
        raise BranchError("no 2*pi*i shift lands the holonomy angle in [-2*pi, 2*pi)")
    predicted = cmath.exp(0.5 * (gamma + 1j * shift))
    if abs(predicted - ell) > 1e-6 * max(1.0, abs(ell)):
        raise BranchError(
            f"trig inversion disagrees with longitude eigenvalue: {predicted!r} vs {ell!r}"
        )
    return gamma


@dataclass(frozen=True)
class HolonomyData:
    """Holonomy snapshot at one representation point."""

    family: KnotFamily
    n: int
    p: int
    m: complex
    y_or_z: complex
    longitude_eigenvalue: complex
    complex_length: complex | None = None

    @property
    def real_length(self) -> float:
        """l_alpha = Re(gamma) = 2*log|ell|; branch-free."""
        return 2.0 * math.log(abs(self.longitude_eigenvalue))


def holonomy_data(
    family: KnotFamily,
    n: int,
    alpha: float,
    y: complex,
    with_length: bool = False,
) -> HolonomyData:
    """Build and certify the holonomy data at cone angle alpha and root y."""
    m = cmath.exp(0.5j * alpha)
    p = family.word_exponent(n)
    ell = longitude_eigenvalue(family, n, p, m, y)
    gamma = None
    if with_length:
        gamma = complex_length(family, n, alpha, y, ell)
    return HolonomyData(family, n, p, m, complex(y), ell, gamma)
