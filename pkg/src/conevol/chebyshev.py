"""Second-kind Chebyshev recurrences and the derived rational functions.

The building block is the sequence S_k defined for every integer k by

    S_0(y) = 1,    S_1(y) = y,    S_k(y) = y*S_{k-1}(y) - S_{k-2}(y),

so S_k(2*cos t) = sin((k+1)t)/sin t.  On top of it sit the two rational
functions that drive the whole artifact, for a nonzero twist parameter n:

    f_n(y) = (2*S_n(y) - y*S_{n-1}(y)) / ((y-2)*S_{n-1}(y))

and a family-dependent companion g_n(y):

    C(2n,3):    -(S_n - S_{n-1})^2 / ((y-2)^3 * S_{n-1}^4)
    C(2n,2):    -(S_n - S_{n-1})   / ((y-2)^2 * S_{n-1}^3)
    C(2n,-2n):   1                 / ((y-2)^2 * S_{n-1}^4)

Evaluation runs the recurrence directly (never the closed form in
s = (y +/- sqrt(y^2-4))/2, which needs a branch choice); it is exact for
integer arguments and stable for the moderate |k| <= ~50 used here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PoleError
from .families import KnotFamily

# Denominator guard: |den| below this times the numerator scale is a pole.
POLE_TOL = 1e-14


def eval_S(k: int, y):
    """S_k(y) by the three-term recurrence, any integer k, any complex y.

    Runs forward from (S_0, S_1) for k >= 0 and backward for k < 0
    (S_{k-2} = y*S_{k-1} - S_k).  Python scalar arithmetic throughout, so
    integer input stays exact.
    """
    if k == 0:
        return _one_like(y)
    if k == 1:
        return y
    if k >= 2:
        prev, cur = _one_like(y), y  # S_0, S_1
        for _ in range(k - 1):
            prev, cur = cur, y * cur - prev
        return cur
    # k <= -1: step down from (S_0, S_1)
    cur, above = _one_like(y), y  # S_0, S_1
    for _ in range(-k):
        cur, above = y * cur - above, cur
    return cur


def eval_S_prime(k: int, y):
    """d/dy S_k(y) via the differentiated recurrence S'_k = S_{k-1} + y*S'_{k-1} - S'_{k-2}."""
    if k == 0:
        return _zero_like(y)
    if k == 1:
        return _one_like(y)
    if k >= 2:
        s_prev, s_cur = _one_like(y), y
        d_prev, d_cur = _zero_like(y), _one_like(y)
        for _ in range(k - 1):
            d_prev, d_cur = d_cur, s_cur + y * d_cur - d_prev
            s_prev, s_cur = s_cur, y * s_cur - s_prev
        return d_cur
    # backward: S'_{k-2} = S_{k-1} + y*S'_{k-1} - S'_k
    s_cur, s_above = _one_like(y), y
    d_cur, d_above = _zero_like(y), _one_like(y)
    for _ in range(-k):
        d_cur, d_above = s_cur + y * d_cur - d_above, d_cur
        s_cur, s_above = y * s_cur - s_above, s_cur
    return d_cur


def _one_like(y):
    return 1 if isinstance(y, int) else 1.0 if isinstance(y, float) else complex(1.0)


def _zero_like(y):
    return 0 if isinstance(y, int) else 0.0 if isinstance(y, float) else complex(0.0)


@dataclass(frozen=True)
class ChebyshevPoly:
    """S_k as an exact integer-coefficient polynomial.

    ``coeffs[j]`` is the coefficient of y^j; the zero polynomial (k = -1) has
    an empty coefficient list.  Leading coefficient is 1 for k >= 0.
    """

    index: int
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, y):
        acc = _zero_like(y)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc


def poly_S(k: int) -> ChebyshevPoly:
    """Exact integer coefficients of S_k; uses S_k = -S_{-k-2} for k < 0."""
    if k == -1:
        return ChebyshevPoly(k, ())
    if k < -1:
        base = _poly_coeffs_nonneg(-k - 2)
        return ChebyshevPoly(k, tuple(-c for c in base))
    return ChebyshevPoly(k, tuple(_poly_coeffs_nonneg(k)))


def _poly_coeffs_nonneg(k: int) -> list:
    prev, cur = [1], [0, 1]  # S_0, S_1
    if k == 0:
        return prev
    for _ in range(k - 1):
        shifted = [0] + cur  # y * S_{j}
        nxt = [a - b for a, b in _zip_pad(shifted, prev)]
        prev, cur = cur, nxt
    return cur


def _zip_pad(a, b):
    m = max(len(a), len(b))
    a = a + [0] * (m - len(a))
    b = b + [0] * (m - len(b))
    return zip(a, b)


def _guard(num, den, tol):
    if abs(den) <= tol * max(1.0, abs(num)):
        raise PoleError(f"denominator {den!r} vanishes relative to numerator {num!r}")


def eval_f(n: int, y, pole_tol: float = POLE_TOL):
    """f_n(y); raises PoleError at y = 2 and at zeros of S_{n-1}.

    pole_tol is the relative denominator guard; contour evaluation passes a
    tiny value because its paths are kept off the poles geometrically (a
    fourth-power denominator is legitimately ~1e-15 at distance 1e-4).
    """
    s_nm1 = eval_S(n - 1, y)
    s_n = eval_S(n, y)
    num = 2 * s_n - y * s_nm1
    den = (y - 2) * s_nm1
    _guard(num, den, pole_tol)
    return num / den


def eval_f_prime(n: int, y, pole_tol: float = POLE_TOL):
    """d/dy f_n(y), assembled by the quotient rule from S and S'."""
    s_nm1 = eval_S(n - 1, y)
    s_n = eval_S(n, y)
    d_nm1 = eval_S_prime(n - 1, y)
    d_n = eval_S_prime(n, y)
    num = 2 * s_n - y * s_nm1
    den = (y - 2) * s_nm1
    _guard(num, den, pole_tol)
    num_p = 2 * d_n - s_nm1 - y * d_nm1
    den_p = s_nm1 + (y - 2) * d_nm1
    return (num_p * den - num * den_p) / (den * den)


def _g_parts(family: KnotFamily, n: int, y):
    """(numerator, denominator) of g_n for the family, unreduced."""
    s_nm1 = eval_S(n - 1, y)
    s_n = eval_S(n, y)
    if family is KnotFamily.C2N3:
        return -((s_n - s_nm1) ** 2), (y - 2) ** 3 * s_nm1**4
    if family is KnotFamily.C2N2:
        return -(s_n - s_nm1), (y - 2) ** 2 * s_nm1**3
    return _one_like(y), (y - 2) ** 2 * s_nm1**4


def eval_g(family: KnotFamily, n: int, y, pole_tol: float = POLE_TOL):
    """Family-specific g_n(y); raises PoleError on the shared denominator zeros."""
    num, den = _g_parts(family, n, y)
    _guard(num, den, pole_tol)
    return num / den


def eval_g_prime(family: KnotFamily, n: int, y, pole_tol: float = POLE_TOL):
    """d/dy g_n(y) by the quotient rule (needed by Newton polish, not an integrand)."""
    s_nm1 = eval_S(n - 1, y)
    s_n = eval_S(n, y)
    d_nm1 = eval_S_prime(n - 1, y)
    d_n = eval_S_prime(n, y)
    num, den = _g_parts(family, n, y)
    _guard(num, den, pole_tol)
    if family is KnotFamily.C2N3:
        num_p = -2 * (s_n - s_nm1) * (d_n - d_nm1)
        den_p = 3 * (y - 2) ** 2 * s_nm1**4 + 4 * (y - 2) ** 3 * s_nm1**3 * d_nm1
    elif family is KnotFamily.C2N2:
        num_p = -(d_n - d_nm1)
        den_p = 2 * (y - 2) * s_nm1**3 + 3 * (y - 2) ** 2 * s_nm1**2 * d_nm1
    else:
        num_p = _zero_like(y)
        den_p = 2 * (y - 2) * s_nm1**4 + 4 * (y - 2) ** 2 * s_nm1**3 * d_nm1
    return (num_p * den - num * den_p) / (den * den)


@dataclass(frozen=True)
class RationalPair:
    """The pair (f_n, g_n) for one family member, as evaluable callables."""

    family: KnotFamily
    n: int

    def f(self, y):
        return eval_f(self.n, y)

    def f_prime(self, y):
        return eval_f_prime(self.n, y)

    def g(self, y):
        return eval_g(self.family, self.n, y)

    def g_prime(self, y):
        return eval_g_prime(self.family, self.n, y)
