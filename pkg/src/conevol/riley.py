"""Riley polynomials and the cone equation.

Two exact objects are assembled here with integer arithmetic:

* the Riley polynomial Phi of the family member, a bivariate polynomial in
  (x^2, y) whose zeros parametrize the nonabelian SL(2,C) representations
  (for C(2n,-2n) the factor carrying the holonomy component is used, the
  reducible factor z-2 is dropped);

* the cone equation  f_n^2(y) + A^2 = (1+A^2) g_n(y)  with A = cot(alpha/2),
  cleared of denominators with the minimal powers of (y-2) and S_{n-1}.  The
  cleared polynomial splits as C0(y) + A^2*C1(y) with exact integer C0, C1,
  so one symbolic assembly per (family, n) serves every angle.

Roots of the cleared polynomial come from the companion matrix and are
polished by Newton iteration on the rational residual itself, which avoids
error amplification from the cleared factors.  Three kinds of parasite are
flagged: roots sitting on the cleared denominators, roots that fail to
polish, and the angle-independent roots with f_n(y)^2 = 1 (where the
equivalence with Phi = 0 breaks down; they are common zeros of C0 and C1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import exactpoly as xp
from .chebyshev import eval_S, eval_f, eval_f_prime, eval_g, eval_g_prime
from .errors import NonConvergenceError, PoleError
from .families import KnotFamily, validate_twist

# Proximity threshold to cleared denominators; 10x it flags for review.
SPURIOUS_EPS = 1e-8
RESIDUAL_TOL = 1e-8
UNIT_F_TOL = 1e-8
NEWTON_MAX_STEPS = 100


def trace_u(n: int, x, y):
    """Trace of the inner word block ((ab)^-n conjugate pattern): 2 + (y-2)(y+2-x^2)S_{n-1}^2(y)."""
    s = eval_S(n - 1, y)
    return 2 + (y - 2) * (y + 2 - x * x) * s * s


def trace_v(n: int, x, z):
    """Even-family inner block trace; same expression in the variable z."""
    s = eval_S(n - 1, z)
    return 2 + (z - 2) * (z + 2 - x * x) * s * s


@dataclass(frozen=True)
class BivariatePoly:
    """Integer polynomial in (x^2, y); coeffs maps (i, j) -> coefficient of (x^2)^i y^j."""

    coeffs: dict

    def eval(self, x, y):
        return xp.b_eval(self.coeffs, x * x, y)

    def eval_xsq(self, x_sq, y):
        return xp.b_eval(self.coeffs, x_sq, y)

    def univariate_in_y(self, x):
        """Coefficient list in y at fixed numeric x (ascending)."""
        return xp.b_uni_in_y(self.coeffs, complex(x) * complex(x))

    @property
    def degree_y(self) -> int:
        return xp.b_degree_y(self.coeffs)


def _u_block(n: int) -> dict:
    """u = 2 + (y-2)(y+2-x^2) S_{n-1}^2(y) as an exact bivariate polynomial."""
    s = xp.b_from_uni(xp.s_poly(n - 1), "y")
    y_minus_2 = xp.b_from_uni([-2, 1], "y")
    y_plus_2_minus_x2 = xp.b_sub(xp.b_from_uni([2, 1], "y"), xp.b_from_uni([0, 1], "X"))
    out = xp.b_mul(xp.b_mul(y_minus_2, y_plus_2_minus_x2), xp.b_mul(s, s))
    return xp.b_add(xp.b_const(2), out)


@lru_cache(maxsize=None)
def build_phi_odd(n: int, p: int) -> BivariatePoly:
    """Riley polynomial of C(2n, 2p+1):  (S_n - S_{n-1}) S_p(u) - (S_{n-1} - S_{n-2}) S_{p-1}(u)."""
    validate_twist(n)
    u = _u_block(n)
    sp_u = xp.b_compose_S(p, u)
    spm1_u = xp.b_compose_S(p - 1, u)
    a = xp.b_from_uni(xp.p_sub(xp.s_poly(n), xp.s_poly(n - 1)), "y")
    b = xp.b_from_uni(xp.p_sub(xp.s_poly(n - 1), xp.s_poly(n - 2)), "y")
    return BivariatePoly(xp.b_sub(xp.b_mul(a, sp_u), xp.b_mul(b, spm1_u)))


@lru_cache(maxsize=None)
def build_phi_even(n: int, p: int) -> BivariatePoly:
    """Riley polynomial of C(2n, 2p):  [1 + (z+2-x^2) S_{n-1}(S_n - S_{n-1})] S_{p-1}(v) - S_{p-2}(v)."""
    validate_twist(n)
    v = _u_block(n)  # same shape in the variable z
    z_plus_2_minus_x2 = xp.b_sub(xp.b_from_uni([2, 1], "y"), xp.b_from_uni([0, 1], "X"))
    s_nm1 = xp.b_from_uni(xp.s_poly(n - 1), "y")
    diff = xp.b_from_uni(xp.p_sub(xp.s_poly(n), xp.s_poly(n - 1)), "y")
    bracket = xp.b_add(xp.b_const(1), xp.b_mul(z_plus_2_minus_x2, xp.b_mul(s_nm1, diff)))
    return BivariatePoly(
        xp.b_sub(xp.b_mul(bracket, xp.b_compose_S(p - 1, v)), xp.b_compose_S(p - 2, v))
    )


@lru_cache(maxsize=None)
def build_phi_hol_minus2n(n: int) -> BivariatePoly:
    """Holonomy factor for C(2n,-2n):  -1 + (z+2-x^2) S_{n-1}^2(z).

    The full even Riley polynomial at word exponent p = -n contains this as a
    factor; (z-2) times it equals v - z, with z-2 carrying only reducible
    representations.
    """
    validate_twist(n)
    z_plus_2_minus_x2 = xp.b_sub(xp.b_from_uni([2, 1], "y"), xp.b_from_uni([0, 1], "X"))
    s = xp.b_from_uni(xp.s_poly(n - 1), "y")
    return BivariatePoly(
        xp.b_add(xp.b_const(-1), xp.b_mul(z_plus_2_minus_x2, xp.b_mul(s, s)))
    )


def build_phi(family: KnotFamily, n: int) -> BivariatePoly:
    """The Phi used for this family member (holonomy factor for C(2n,-2n))."""
    if family is KnotFamily.C2N3:
        return build_phi_odd(n, 1)
    if family is KnotFamily.C2N2:
        return build_phi_even(n, 1)
    return build_phi_hol_minus2n(n)


# ------------------------------------------------------------- cone equation

@lru_cache(maxsize=None)
def _cone_parts(family: KnotFamily, n: int):
    """Exact integer parts of the cleared equation C0(y) + A^2 * C1(y) = 0.

    The common factor d = gcd(C0, C1) holds exactly the angle-independent
    f^2 = 1 parasite roots; the deflated pair (C0/d, C1/d) carries the moving
    roots.  Returns (c0, c1, parasite, c0_red, c1_red, cleared).
    """
    s_nm1 = xp.s_poly(n - 1)
    s_n = xp.s_poly(n)
    n_f = xp.p_sub(xp.p_scale(s_n, 2), xp.p_mul([0, 1], s_nm1))
    y_minus_2 = [-2, 1]
    diff = xp.p_sub(s_n, s_nm1)
    if family is KnotFamily.C2N3:
        # common denominator (y-2)^3 S^4
        c0 = xp.p_add(
            xp.p_mul(xp.p_mul(xp.p_pow(n_f, 2), y_minus_2), xp.p_pow(s_nm1, 2)),
            xp.p_pow(diff, 2),
        )
        c1 = xp.p_add(
            xp.p_mul(xp.p_pow(y_minus_2, 3), xp.p_pow(s_nm1, 4)), xp.p_pow(diff, 2)
        )
        cleared = {"y_minus_2": 3, "s_nm1": 4}
    elif family is KnotFamily.C2N2:
        # common denominator (y-2)^2 S^3
        c0 = xp.p_add(xp.p_mul(xp.p_pow(n_f, 2), s_nm1), diff)
        c1 = xp.p_add(
            xp.p_mul(xp.p_pow(y_minus_2, 2), xp.p_pow(s_nm1, 3)), diff
        )
        cleared = {"y_minus_2": 2, "s_nm1": 3}
    else:
        # common denominator (y-2)^2 S^4
        c0 = xp.p_sub(xp.p_mul(xp.p_pow(n_f, 2), xp.p_pow(s_nm1, 2)), [1])
        c1 = xp.p_sub(xp.p_mul(xp.p_pow(y_minus_2, 2), xp.p_pow(s_nm1, 4)), [1])
        cleared = {"y_minus_2": 2, "s_nm1": 4}
    parasite = xp.p_gcd(c0, c1)
    if len(parasite) > 1:
        c0_red = xp.p_divexact(c0, parasite)
        c1_red = xp.p_divexact(c1, parasite)
    else:
        parasite = [1]
        c0_red, c1_red = c0, c1
    return c0, c1, parasite, c0_red, c1_red, cleared


@dataclass(frozen=True)
class ConeEquation:
    """The cleared real-coefficient polynomial equivalent of f^2 + A^2 = (1+A^2) g."""

    family: KnotFamily
    n: int
    A: float
    coeffs: tuple  # ascending float coefficients of C0 + A^2*C1
    c0: tuple  # exact integer part independent of the angle
    c1: tuple  # exact integer part multiplying A^2
    parasite: tuple  # gcd(C0, C1): exact minimal polynomial of the f^2 = 1 roots
    moving_coeffs: tuple  # deflated (C0 + A^2*C1)/parasite, float ascending
    spurious_factors: dict = field(hash=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def poly_eval(self, y):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def residual(self, y):
        """The rational residual f^2 + A^2 - (1+A^2) g at y."""
        fv = eval_f(self.n, y)
        gv = eval_g(self.family, self.n, y)
        return fv * fv + self.A * self.A - (1.0 + self.A * self.A) * gv

    def residual_prime(self, y):
        fv = eval_f(self.n, y)
        fp = eval_f_prime(self.n, y)
        gp = eval_g_prime(self.family, self.n, y)
        return 2.0 * fv * fp - (1.0 + self.A * self.A) * gp


def build_cone_equation(family: KnotFamily, n: int, A: float) -> ConeEquation:
    """Clear denominators of f^2 + A^2 = (1+A^2) g into a real polynomial in y.

    Coefficients depend on the angle only through A^2, so the equation is
    invariant under A -> -A (hence under alpha -> 2*pi - alpha).
    """
    validate_twist(n)
    if not math.isfinite(A):
        raise ValueError("A = cot(alpha/2) must be finite")
    c0, c1, parasite, c0_red, c1_red, cleared = _cone_parts(family, n)
    a2 = A * A

    def combine(p0, p1):
        m = max(len(p0), len(p1))
        out = [0.0] * m
        for i, c in enumerate(p0):
            out[i] += float(c)
        for i, c in enumerate(p1):
            out[i] += a2 * float(c)
        while out and out[-1] == 0.0:
            out.pop()
        return tuple(out)

    return ConeEquation(
        family,
        n,
        float(A),
        combine(c0, c1),
        tuple(c0),
        tuple(c1),
        tuple(parasite),
        combine(c0_red, c1_red),
        cleared,
    )


@dataclass
class RootRecord:
    """One root of a cone equation with its provenance flags."""

    y: complex
    residual: float
    spurious: bool = False
    flags: frozenset = frozenset()
    selected: bool = False

    @property
    def unit_f(self) -> bool:
        return "unit_f" in self.flags


def _near_denominator(family: KnotFamily, n: int, y: complex, eps: float) -> bool:
    if abs(y - 2.0) <= eps:
        return True
    return abs(eval_S(n - 1, y)) <= eps


def _polish(eq: ConeEquation, y: complex):
    """Newton iteration on the rational residual; returns (y, |residual|)."""
    best_y, best_r = y, abs(eq.residual(y))
    cur = y
    for _ in range(NEWTON_MAX_STEPS):
        r = eq.residual(cur)
        if abs(r) < best_r:
            best_y, best_r = cur, abs(r)
        if abs(r) <= 1e-14:
            break
        rp = eq.residual_prime(cur)
        if rp == 0:
            break
        step = r / rp
        cur = cur - step
        if abs(step) <= 1e-16 * max(1.0, abs(cur)):
            r = eq.residual(cur)
            if abs(r) < best_r:
                best_y, best_r = cur, abs(r)
            break
    return best_y, best_r


def solve_cone_equation(eq: ConeEquation, keep_spurious: bool = False):
    """All roots of the cleared polynomial, polished and flagged.

    Returns RootRecords sorted by (real, imag).  Roots within SPURIOUS_EPS of
    y = 2 or a zero of S_{n-1}, and roots whose polished rational residual
    exceeds RESIDUAL_TOL, are spurious and dropped unless keep_spurious.
    Roots with f^2 = 1 (angle-independent parasites, common zeros of C0 and
    C1) are kept but flagged 'unit_f'.
    """
    if eq.degree < 1:
        raise ValueError("cone equation degree must be >= 1")
    records = []
    for y0 in np.roots(list(reversed(eq.moving_coeffs))):
        y0 = complex(y0)
        flags = set()
        if _near_denominator(eq.family, eq.n, y0, SPURIOUS_EPS):
            records.append(
                RootRecord(y0, float("inf"), True, frozenset({"near_denominator"}))
            )
            continue
        if _near_denominator(eq.family, eq.n, y0, 10.0 * SPURIOUS_EPS):
            flags.add("review")
        try:
            y_pol, res = _polish(eq, y0)
        except PoleError:
            records.append(
                RootRecord(y0, float("inf"), True, frozenset(flags | {"near_denominator"}))
            )
            continue
        if res > RESIDUAL_TOL and not _double_root_excused(eq, y_pol, res):
            raise NonConvergenceError(
                f"root {y0} failed to polish below {RESIDUAL_TOL} (residual {res:.3e})"
            )
        try:
            fv = eval_f(eq.n, y_pol)
            if abs(fv * fv - 1.0) <= UNIT_F_TOL:
                flags.add("unit_f")
        except PoleError:
            pass
        records.append(RootRecord(y_pol, res, False, frozenset(flags)))
    if len(eq.parasite) > 1:
        for y0 in np.roots(list(reversed(eq.parasite))):
            y0 = _newton_on_poly(eq.parasite, complex(y0))
            try:
                res = abs(eq.residual(y0))
            except PoleError:
                res = float("inf")
            records.append(RootRecord(y0, res, False, frozenset({"unit_f"})))
    records.sort(key=lambda r: (r.y.real, r.y.imag))
    if keep_spurious:
        return records
    return [r for r in records if not r.spurious]


def _newton_on_poly(coeffs, y: complex, steps: int = 50) -> complex:
    deriv = [i * c for i, c in enumerate(coeffs)][1:]

    def ev(p, v):
        acc = 0j
        for c in reversed(p):
            acc = acc * v + c
        return acc

    for _ in range(steps):
        pv = ev(coeffs, y)
        dv = ev(deriv, y)
        if dv == 0:
            break
        step = pv / dv
        y -= step
        if abs(step) <= 1e-16 * max(1.0, abs(y)):
            break
    return y


def _double_root_excused(eq: ConeEquation, y: complex, res: float) -> bool:
    """Near a root collision the polynomial is fine but Newton stalls; accept then."""
    return res <= 1e-6 and abs(eq.residual_prime(y)) <= 1e-3


@dataclass(frozen=True)
class LemmaCdReport:
    """Simultaneous-vanishing check of Phi(2cos(alpha/2), y) and the cone residual."""

    phi_value: complex
    cone_residual: complex
    phi_zero: bool
    cone_zero: bool
    unit_f: bool

    @property
    def consistent(self) -> bool:
        if self.unit_f:
            # f^2 = 1 parasites satisfy the cone equation for every angle but
            # are not representation points; the equivalence presumes f^2 != 1.
            return True
        return self.phi_zero == self.cone_zero


def check_lemma_cd(
    family: KnotFamily, n: int, alpha: float, y: complex, tol: float = 1e-8
) -> LemmaCdReport:
    """Evaluate Phi and the rational cone residual at the same point.

    Away from f^2 = 1 the two vanish simultaneously; the report says whether
    each is below tol.
    """
    x = 2.0 * math.cos(0.5 * alpha)
    A = 1.0 / math.tan(0.5 * alpha)
    phi = build_phi(family, n).eval(x, complex(y))
    eq = build_cone_equation(family, n, A)
    res = eq.residual(complex(y))
    try:
        fv = eval_f(n, complex(y))
        unit = abs(fv * fv - 1.0) <= UNIT_F_TOL
    except PoleError:
        unit = False
    return LemmaCdReport(phi, res, abs(phi) <= tol, abs(res) <= tol, unit)
