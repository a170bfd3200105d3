"""Volume integrals and the Schlaefli cross-oracle.

The volume of the cone-manifold is the contour integral

    hyperbolic:  Vol = Re[ i * INT_{conj(y0)}^{y0} log(R(y)) f'(y)/(f(y)^2-1) dy ]
    spherical:   Vol = Re[     INT_{y+}^{y-}       log(R(y)) f'(y)/(f(y)^2-1) dy ]

with R(y) = (f(y)^2 + A^2) / ((1+A^2) g(y)) and A = cot(alpha/2).  R equals 1
at the integration endpoints (they solve the cone equation), which anchors
the logarithm branch: the argument is unwrapped continuously along the path
starting from log = 0.

Paths.  All integrand singularities lie on the real axis (denominator zeros
y = 2 and S_{n-1} = 0, the f = +/-1 points, and the zeros of g).  The
hyperbolic contour therefore runs in two straight legs conj(y0) -> x_c -> y0
through a fixed real anchor x_c: the collision root of the member, nudged
off any singular point.  Anchoring the real-axis crossing makes the homotopy
class independent of the cone angle (a straight chord would sweep across
fixed singular points as the endpoints move, changing the value by a
monodromy jump).  The spherical contour runs along the real segment from y+
to y- with small semicircular detours into the upper half-plane around any
singular point in between.

Quadrature is adaptive Gauss 15/7 per segment (the embedded 7-point rule
supplies the error estimate), absolute tolerance 1e-9, at most 2000
subdivisions.  Within 1e-3 of the transition angle the endpoints nearly
coincide and the contour loses relative accuracy, so the Schlaefli integral
is used there instead.

The Schlaefli oracle integrates the real length of the singular geodesic:
kappa * dVol = (1/2) l_alpha d(alpha) with Vol -> 0 at the transition, i.e.
Vol = INT_alpha^{a_K} l/2 (hyperbolic) and INT_{a_K}^alpha l/2 (spherical,
folded about pi by the A^2 symmetry).  The substitution beta = a_K -/+ t^2
absorbs the square-root behaviour of l at the transition.  The hyperbolic
length is 2*log|ell| (branch-free); the spherical length is the unwrapped
longitude phase difference tracked by the geometry module.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import eval_f, eval_f_prime, eval_g
from .errors import PathBlockedError, QuadratureError
from .families import ConeManifoldSpec, KnotFamily
from .geometry import (
    Regime,
    classify,
    collision_root,
    critical_angle,
    hyperbolic_root_at,
    spherical_length,
)
from .representation import holonomy_data

R_EXCL = 1e-4
QUAD_ABS_TOL = 1e-9
QUAD_MAX_SUBDIV = 2000
IMAG_RESIDUAL_TOL = 1e-7
TRANSITION_WINDOW = 1e-3

_GL15 = np.polynomial.legendre.leggauss(15)
_GL7 = np.polynomial.legendre.leggauss(7)


# ------------------------------------------------------------- singular set

def _s_zeros(m: int):
    """Real zeros of S_m: 2*cos(k*pi/(m+1)); S_m = -S_{-m-2} for m < -1."""
    if m in (-1, 0):
        return []
    if m < -1:
        return _s_zeros(-m - 2)
    return [2.0 * math.cos(k * math.pi / (m + 1)) for k in range(1, m + 1)]


def _s_diff_zeros(j: int):
    """Real zeros of S_j - S_{j-1}: 2*cos((2k+1)*pi/(2j+1))."""
    if j == 0:
        return []
    if j < 0:
        return _s_diff_zeros(-j - 1)
    return [2.0 * math.cos((2 * k + 1) * math.pi / (2 * j + 1)) for k in range(j)]


def real_singular_points(family: KnotFamily, n: int, include_f_zeros: bool = False):
    """Real singularities of the integrand: poles of f and g, f = +/-1, g = 0.

    All are exact cosines: y = 2 and the zeros of S_{n-1} (poles), the zeros
    of S_n - S_{n-1} (f = -1, also zeros of g for two families) and of
    S_{n-1} - S_{n-2} (f = +1).

    With include_f_zeros the zeros of f join the list (2*S_n - y*S_{n-1}
    equals 2*cos(n*theta) at y = 2*cos(theta)).  At cone angle pi the log
    argument vanishes there, pinching the contour; real paths must pass
    straight through them (the ratio stays positive, so there is no branch
    jump and the log singularity is integrable), but the hyperbolic anchor
    is kept away from them.
    """
    pts = {2.0}
    pts.update(_s_zeros(n - 1))
    pts.update(_s_diff_zeros(n))
    pts.update(_s_diff_zeros(n - 1))
    if include_f_zeros:
        m = abs(n)
        pts.update(2.0 * math.cos((2 * k + 1) * math.pi / (2 * m)) for k in range(m))
    return sorted(pts)


# ------------------------------------------------------------ path geometry

@dataclass(frozen=True)
class _Line:
    z0: complex
    z1: complex

    def point(self, t: float) -> complex:
        return self.z0 + (self.z1 - self.z0) * t

    def deriv(self, t: float) -> complex:
        return self.z1 - self.z0


@dataclass(frozen=True)
class _Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def point(self, t: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * t
        return self.center + self.radius * cmath.exp(1j * th)

    def deriv(self, t: float) -> complex:
        th = self.theta0 + (self.theta1 - self.theta0) * t
        return 1j * (self.theta1 - self.theta0) * self.radius * cmath.exp(1j * th)


@dataclass(frozen=True)
class IntegrationPath:
    """Connected chain of segments from the lower to the upper endpoint."""

    segments: tuple
    start: complex
    end: complex
    deformations: int = 0


def _dist_point_segment(p: complex, z0: complex, z1: complex) -> float:
    d = z1 - z0
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(p - z0)
    t = max(0.0, min(1.0, ((p - z0) * d.conjugate()).real / L2))
    return abs(p - (z0 + t * d))


def _nudge_anchor(x: float, obstacles, keepout: float) -> float:
    """Move a real anchor off any singular point by at least keepout."""
    for _ in range(16):
        clash = [s for s in obstacles if abs(x - s) < keepout]
        if not clash:
            return x
        s = min(clash, key=lambda v: abs(x - v))
        x = s + 1.25 * keepout if x >= s else s - 1.25 * keepout
    raise PathBlockedError(f"could not place the real anchor away from {clash}")


def _log_zero_points(n: int, A: float):
    """All zeros of f^2 + A^2 in the plane: roots of N_f^2 + A^2 D_f^2.

    These are the points where the log argument of the integrand vanishes;
    they come in conjugate pairs hugging the real f-poles for large A.
    """
    from .exactpoly import p_mul, p_scale, p_sub, s_poly

    s_nm1 = s_poly(n - 1)
    s_n = s_poly(n)
    n_f = p_sub(p_scale(s_n, 2), p_mul([0, 1], s_nm1))
    d_f = p_mul([-2, 1], s_nm1)
    m = max(2 * len(n_f) - 1, 2 * len(d_f) - 1)
    coeffs = [0.0] * m
    for i, c in enumerate(p_mul(n_f, n_f)):
        coeffs[i] += float(c)
    for i, c in enumerate(p_mul(d_f, d_f)):
        coeffs[i] += A * A * float(c)
    while coeffs and coeffs[-1] == 0.0:
        coeffs.pop()
    return [complex(z) for z in np.roots(list(reversed(coeffs)))]


def _v_path(x_c: complex, y0: complex) -> IntegrationPath:
    lower, upper = y0.conjugate(), y0
    return IntegrationPath((_Line(lower, x_c), _Line(x_c, upper)), lower, upper)


def _staple_path(x_c: float, height: float, y0: complex,
                 shift: complex = 0.0) -> IntegrationPath:
    """conj(y0) -> top -> bottom -> y0 with a vertical mid-leg through x_c.

    The vertical descent threads the corridor between a conjugate pair of
    log-argument zeros and the adjacent real singular point; the outer legs
    fly over the pair.  (Endpoint order follows the lower/upper convention
    of the endpoints themselves.)
    """
    lower, upper = y0.conjugate(), y0
    first = complex(x_c, math.copysign(height, lower.imag)) + shift
    second = complex(x_c, math.copysign(height, upper.imag)) + shift
    return IntegrationPath(
        (_Line(lower, first), _Line(first, second), _Line(second, upper)),
        lower,
        upper,
    )


def _candidate_paths(family: KnotFamily, n: int, A: float, y0: complex,
                     shift: complex = 0.0):
    """Deterministic contour candidates, collision-anchored V first.

    The correct homotopy class has the tracked log returning to zero at the
    far endpoint; the caller scans candidates until one passes.  Straight
    two-leg Vs handle simple real zeros of the log argument (side selection
    by anchor interval); staple paths thread the pinch corridors next to
    higher-order zeros, whose conjugate companion pair squeezes onto the
    axis as the angle shrinks.
    """
    reals = real_singular_points(family, n, include_f_zeros=True)
    y_star = collision_root(family, n)
    zeros = [z for z in _log_zero_points(n, A) if z.imag > 1e-9]
    verticals = sorted(
        set(reals)
        | {z.real for z in zeros if abs(z.real) < abs(reals[-1]) + 1.0}
    )
    xs = [_nudge_anchor(y_star, reals, 2.0 * R_EXCL)]
    xs.extend(
        0.5 * (a + b) for a, b in zip(verticals, verticals[1:]) if b - a > 1e-7
    )
    xs.append(verticals[0] - 0.5)
    xs.append(verticals[-1] + 0.5)
    seen = set()
    ordered = [xs[0]] + sorted(xs[1:], key=lambda c: abs(c - y_star))
    for x in ordered:
        key = round(x, 12)
        if key in seen:
            continue
        seen.add(key)
        yield _v_path(complex(x) + shift, y0)
        h_local = max(
            (z.imag for z in zeros if abs(z.real - x) < 0.6), default=0.0
        )
        if h_local > 0.0:
            yield _staple_path(x, 1.4 * h_local + 0.05, y0, shift)


def _path_clear(path: IntegrationPath, obstacles, margin: float = 1e-7) -> bool:
    for s in obstacles:
        for leg in path.segments:
            if abs(complex(s) - leg.z0) < 1e-15 or abs(complex(s) - leg.z1) < 1e-15:
                continue
            if _dist_point_segment(complex(s), leg.z0, leg.z1) < margin:
                return False
    return True


def spherical_path(family: KnotFamily, n: int, y_from: float, y_to: float):
    """Real segment y_from -> y_to with upper-half-plane arcs over singularities."""
    obstacles = real_singular_points(family, n)
    lo, hi = min(y_from, y_to), max(y_from, y_to)
    inside = [s for s in obstacles if lo + 1e-12 < s < hi - 1e-12]
    for s in obstacles:
        if abs(s - y_from) < R_EXCL or abs(s - y_to) < R_EXCL:
            raise PathBlockedError(
                f"singular point {s:.8f} within the exclusion radius of an endpoint"
            )
    inside.sort()
    gaps = [lo] + inside + [hi]
    min_gap = min(b - a for a, b in zip(gaps, gaps[1:])) if inside else hi - lo
    radius = min(2.0 * R_EXCL, 0.4 * min_gap)
    forward = y_to >= y_from
    pts = sorted(inside, reverse=not forward)
    segments = []
    cur = complex(y_from)
    for s in pts:
        near = complex(s - radius if forward else s + radius)
        far = complex(s + radius if forward else s - radius)
        if abs(near - cur) > 1e-15:
            segments.append(_Line(cur, near))
        # semicircle through the upper half-plane
        th0 = math.pi if forward else 0.0
        th1 = 0.0 if forward else math.pi
        segments.append(_Arc(complex(s), radius, th0, th1))
        cur = far
    if abs(complex(y_to) - cur) > 1e-15 or not segments:
        segments.append(_Line(cur, complex(y_to)))
    return IntegrationPath(tuple(segments), complex(y_from), complex(y_to), len(pts))


# ------------------------------------------------- branch-tracked integrand

class BranchTracker:
    """Continuous branch of log(R) along a path, anchored to 0 at the start.

    Samples the argument of R along the path, refines until adjacent
    unwrapped steps are small, and serves the winding offset at any
    parameter, making the tracked logarithm a pure function of position
    (safe for out-of-order adaptive quadrature).
    """

    MAX_SAMPLES = 200_000

    def __init__(self, ratio, n_segments: int, init_per_segment: int = 33):
        self.ratio = ratio
        ts: list = []
        for k in range(n_segments):
            ts.extend(k + i / (init_per_segment - 1) for i in range(init_per_segment - 1))
        ts.append(float(n_segments))
        vals = [ratio(t) for t in ts]
        args = [cmath.phase(v) for v in vals]
        # refine intervals until the principal-argument step is small
        work = list(range(len(ts) - 1))
        while work:
            if len(ts) > self.MAX_SAMPLES:
                raise QuadratureError("branch tracking exceeded the sample budget")
            nxt = []
            insertions = []
            for i in work:
                d = _wrap(args[i + 1] - args[i])
                if abs(d) > 0.5 and ts[i + 1] - ts[i] > 1e-13:
                    tm = 0.5 * (ts[i] + ts[i + 1])
                    insertions.append((i, tm))
            if not insertions:
                break
            offset = 0
            for i, tm in insertions:
                v = ratio(tm)
                ts.insert(i + 1 + offset, tm)
                args.insert(i + 1 + offset, cmath.phase(v))
                nxt.extend((i + offset, i + offset + 1))
                offset += 1
            work = nxt
        unwrapped = [args[0]]
        for i in range(1, len(ts)):
            unwrapped.append(unwrapped[-1] + _wrap(args[i] - args[i - 1]))
        self.ts = ts
        self.unwrapped = unwrapped
        if abs(unwrapped[0]) > 1e-5:
            raise QuadratureError(
                f"log argument not anchored at the start endpoint "
                f"(arg = {unwrapped[0]:.3e})"
            )
        self.windings = round((unwrapped[-1] - unwrapped[0]) / (2.0 * math.pi))

    def log_at(self, t: float, value: complex) -> complex:
        import bisect

        i = bisect.bisect_right(self.ts, t) - 1
        i = max(0, min(i, len(self.ts) - 2))
        t0, t1 = self.ts[i], self.ts[i + 1]
        w = (t - t0) / (t1 - t0) if t1 > t0 else 0.0
        est = self.unwrapped[i] * (1 - w) + self.unwrapped[i + 1] * w
        principal = cmath.phase(value)
        k = round((est - principal) / (2.0 * math.pi))
        return math.log(abs(value)) + 1j * (principal + 2.0 * math.pi * k)


def _wrap(d: float) -> float:
    while d > math.pi:
        d -= 2.0 * math.pi
    while d <= -math.pi:
        d += 2.0 * math.pi
    return d


class _Integrand:
    """log(R(y)) * f'(y) / (f(y)^2 - 1) evaluated along a path parameter."""

    def __init__(self, family: KnotFamily, n: int, A: float, path: IntegrationPath):
        self.family = family
        self.n = n
        self.A = A
        self.path = path
        self.tracker = BranchTracker(self._ratio, len(path.segments))

    def _locate(self, t: float):
        k = min(int(t), len(self.path.segments) - 1)
        return self.path.segments[k], t - k

    POLE_TOL = 1e-60  # clearance is enforced geometrically on the path

    def _ratio(self, t: float) -> complex:
        seg, u = self._locate(t)
        y = seg.point(u)
        fv = eval_f(self.n, y, self.POLE_TOL)
        gv = eval_g(self.family, self.n, y, self.POLE_TOL)
        a2 = self.A * self.A
        val = (fv * fv + a2) / ((1.0 + a2) * gv)
        if abs(val) < 1e-100:
            raise QuadratureError(
                f"log argument vanishes on the path at y = {y:.8f}"
            )
        return val

    def __call__(self, t: float) -> complex:
        seg, u = self._locate(t)
        y = seg.point(u)
        fv = eval_f(self.n, y, self.POLE_TOL)
        log_term = self.tracker.log_at(t, self._ratio(t))
        return (
            log_term
            * eval_f_prime(self.n, y, self.POLE_TOL)
            / (fv * fv - 1.0)
            * seg.deriv(u)
        )


# ----------------------------------------------------------- adaptive quad

def _gauss_pair(f, a: float, b: float):
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    v15 = [f(mid + half * x) for x in _GL15[0]]
    i15 = half * sum(w * v for w, v in zip(_GL15[1], v15))
    i7 = half * sum(w * f(mid + half * x) for w, x in zip(_GL7[1], _GL7[0]))
    return i15, abs(i15 - i7)


def adaptive_quad(f, a: float, b: float, abs_tol: float = QUAD_ABS_TOL,
                  max_subdiv: int = QUAD_MAX_SUBDIV):
    """Adaptive Gauss 15/7 on [a, b]; returns (integral, error estimate)."""
    val, err = _gauss_pair(f, a, b)
    heap = [(-err, 0, a, b, val, err)]
    total_val, total_err = val, err
    count = 0
    serial = 1
    while total_err > abs_tol and heap:
        if count >= max_subdiv:
            raise QuadratureError(
                f"tolerance {abs_tol:.1e} not reached after {max_subdiv} "
                f"subdivisions (error {total_err:.1e})"
            )
        _, _, lo, hi, v_old, e_old = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gauss_pair(f, lo, mid)
        v2, e2 = _gauss_pair(f, mid, hi)
        total_val += v1 + v2 - v_old
        total_err += e1 + e2 - e_old
        heapq.heappush(heap, (-e1, serial, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, serial + 1, mid, hi, v2, e2))
        serial += 2
        count += 1
    return total_val, total_err


# --------------------------------------------------------------- results

@dataclass
class VolumeResult:
    """A computed cone-manifold volume with its certificate trail."""

    spec: ConeManifoldSpec
    regime: Regime
    volume: float
    error_estimate: float
    imaginary_residual: float = 0.0
    branch_windings: int = 0
    l_alpha: float | None = None
    schlafli_volume: float | None = None
    diagnostics: dict = field(default_factory=dict)


def _contour_value(family: KnotFamily, n: int, A: float, path: IntegrationPath,
                   quad_tol: float):
    integrand = _Integrand(family, n, A, path)
    total = 0j
    err = 0.0
    for k in range(len(path.segments)):
        v, e = adaptive_quad(integrand, float(k), float(k + 1), quad_tol)
        total += v
        err += e
    return total, err, integrand.tracker.windings


def volume_hyperbolic(spec: ConeManifoldSpec, y0: complex,
                      quad_tol: float = QUAD_ABS_TOL,
                      anchor_shift: complex = 0.0) -> VolumeResult:
    """Contour volume at a hyperbolic angle from the selected root y0.

    anchor_shift displaces the mid-path control point (used by the
    path-independence certificate); any shift keeping the path clear of the
    singular set leaves the value unchanged.
    """
    family, n, alpha = spec.family, spec.n, spec.alpha
    A = spec.cot_half
    obstacles = real_singular_points(family, n, include_f_zeros=True)
    integrand = None
    last_err = None
    for path in _candidate_paths(family, n, A, y0, anchor_shift):
        if not _path_clear(path, obstacles):
            continue
        try:
            cand = _Integrand(family, n, A, path)
        except QuadratureError as exc:
            last_err = exc
            continue
        if abs(cand.tracker.unwrapped[-1]) <= 1e-5:
            integrand = cand
            break
    if integrand is None:
        raise PathBlockedError(
            f"no anchored contour with endpoint-closed branch found for "
            f"{family.value} n={n} at alpha={alpha:.6f}"
            + (f" (last tracker error: {last_err})" if last_err else "")
        )
    path = integrand.path
    total = 0j
    err = 0.0
    for k in range(len(path.segments)):
        v, e = adaptive_quad(integrand, float(k), float(k + 1), quad_tol)
        total += v
        err += e
    windings = integrand.tracker.windings
    value = 1j * total
    if abs(value.imag) > IMAG_RESIDUAL_TOL:
        raise QuadratureError(
            f"volume has imaginary residual {value.imag:.3e} (branch tracking "
            f"inconsistent)"
        )
    data = holonomy_data(family, n, alpha, y0)
    return VolumeResult(
        spec,
        Regime.HYPERBOLIC,
        value.real,
        err,
        abs(value.imag),
        windings,
        l_alpha=data.real_length,
        diagnostics={"y0": y0, "anchor": path.segments[0].z1},
    )


def volume_spherical(spec: ConeManifoldSpec, y_plus: float, y_minus: float,
                     quad_tol: float = QUAD_ABS_TOL) -> VolumeResult:
    """Contour volume at a spherical angle from the selected real pair."""
    family, n = spec.family, spec.n
    A = spec.cot_half
    path = spherical_path(family, n, y_plus, y_minus)
    total, err, windings = _contour_value(family, n, A, path, quad_tol)
    flipped = False
    if total.real < 0.0:
        total = -total
        flipped = True
    if abs(total.imag) > IMAG_RESIDUAL_TOL:
        raise QuadratureError(
            f"volume has imaginary residual {total.imag:.3e} (branch tracking "
            f"inconsistent)"
        )
    return VolumeResult(
        spec,
        Regime.SPHERICAL,
        total.real,
        err,
        abs(total.imag),
        windings,
        l_alpha=spherical_length(family, n, spec.alpha),
        diagnostics={
            "y_plus": y_plus,
            "y_minus": y_minus,
            "orientation_flipped": flipped,
            "deformations": path.deformations,
        },
    )


def volume_schlafli(spec: ConeManifoldSpec, quad_tol: float = 1e-8) -> float:
    """Volume by integrating the singular geodesic length from the transition.

    Independent of the contour machinery: only root continuation and the
    longitude eigenvalue enter.  The substitution beta = a_K -/+ t^2 removes
    the square-root vanishing of the length at the transition.
    """
    family, n, alpha = spec.family, spec.n, spec.alpha
    a_k = critical_angle(family, n)
    folded = alpha if alpha <= math.pi else 2.0 * math.pi - alpha
    if folded == a_k:
        return 0.0
    if folded < a_k:
        span = math.sqrt(a_k - folded)

        def integrand(t):
            beta = a_k - t * t
            y = hyperbolic_root_at(family, n, beta)
            data = holonomy_data(family, n, beta, y)
            return data.real_length * t
    else:
        span = math.sqrt(folded - a_k)

        def integrand(t):
            beta = a_k + t * t
            return spherical_length(family, n, beta) * t

    val, _ = adaptive_quad(integrand, 0.0, span, quad_tol)
    return float(val)


def compute_volume(spec: ConeManifoldSpec, cross_check: bool = False,
                   quad_tol: float = QUAD_ABS_TOL) -> VolumeResult:
    """Classify the angle and evaluate the volume (Schlaefli near transitions)."""
    result = classify(spec)
    if result.regime is Regime.OUT_OF_RANGE:
        raise ValueError(
            f"cone angle {spec.alpha} is beyond the spherical band "
            f"(alpha_K = {result.critical_angle:.6f})"
        )
    if result.regime is Regime.EUCLIDEAN:
        return VolumeResult(
            spec, Regime.EUCLIDEAN, 0.0, 0.0, diagnostics={"transition": True}
        )
    a_k = result.critical_angle
    folded = spec.alpha if spec.alpha <= math.pi else 2.0 * math.pi - spec.alpha
    if abs(folded - a_k) < TRANSITION_WINDOW:
        vol = volume_schlafli(spec)
        out = VolumeResult(
            spec,
            result.regime,
            vol,
            1e-7,
            l_alpha=_length_at(spec, result),
            diagnostics={"regularized": True},
        )
    elif result.regime is Regime.HYPERBOLIC:
        out = volume_hyperbolic(spec, result.roots[0], quad_tol)
    else:
        out = volume_spherical(spec, result.roots[0], result.roots[1], quad_tol)
    if cross_check:
        out.schlafli_volume = volume_schlafli(spec)
    return out


def _length_at(spec: ConeManifoldSpec, result) -> float:
    if result.regime is Regime.HYPERBOLIC:
        data = holonomy_data(spec.family, spec.n, spec.alpha, result.roots[0])
        return data.real_length
    return spherical_length(spec.family, spec.n, spec.alpha)
