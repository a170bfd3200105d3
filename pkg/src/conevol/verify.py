"""Built-in verification suites (surfaced by the CLI's verify subcommand).

Each suite exercises one invariant web with deterministic sampling and
returns a SuiteResult; the whole battery passes only if every suite does.
Torus-knot members are skipped where a hyperbolic regime is required.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import eval_S
from .families import KnotFamily, is_torus_member
from .geometry import critical_angle
from .families import ConeManifoldSpec
from .representation import (
    relation_residual,
    w12_closed_form_even,
    w12_closed_form_odd,
    word_12,
)
from .riley import build_cone_equation, build_phi, solve_cone_equation
from .volume import compute_volume


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


def _default_members(n_values):
    return [
        (family, n)
        for family in KnotFamily
        for n in n_values
        if not is_torus_member(family, n)
    ]


def suite_pell(tol: float = 1e-10, samples: int = 200, seed: int = 7) -> SuiteResult:
    """S_k^2 - y S_k S_{k-1} + S_{k-1}^2 = 1, scaled residual, k in [-6, 8]."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        while True:
            y = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            if abs(y) <= 4.0:
                break
        for k in range(-6, 9):
            a, b = eval_S(k, y), eval_S(k - 1, y)
            res = abs(a * a - y * a * b + b * b - 1.0)
            scale = max(1.0, abs(a * a), abs(y * a * b), abs(b * b))
            worst = max(worst, res / scale)
    return SuiteResult("pell-identity", worst <= tol, f"max scaled residual {worst:.2e}")


def suite_lemma_cd(n_values=(-2, -1, 1, 2), angles: int = 20, tol: float = 1e-7,
                   seed: int = 11) -> SuiteResult:
    """Zero sets of Phi(2cos(alpha/2), .) and of the cone equation coincide."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    checked = 0
    for family in KnotFamily:
        for n in n_values:
            phi = build_phi(family, n)
            for _ in range(angles):
                alpha = rng.uniform(0.2, math.pi - 0.2)
                A = 1.0 / math.tan(0.5 * alpha)
                x = 2.0 * math.cos(0.5 * alpha)
                eq = build_cone_equation(family, n, A)
                cone_roots = [
                    r.y for r in solve_cone_equation(eq) if not r.unit_f
                ]
                phi_roots = [
                    complex(z) for z in np.roots(
                        list(reversed(phi.univariate_in_y(x)))
                    )
                ]
                if len(cone_roots) != len(phi_roots):
                    return SuiteResult(
                        "lemma-cd",
                        False,
                        f"{family.value} n={n} alpha={alpha:.4f}: "
                        f"{len(cone_roots)} cone roots vs {len(phi_roots)} Phi roots",
                    )
                for z in phi_roots:
                    worst = max(worst, min(abs(z - w) for w in cone_roots))
                for w in cone_roots:
                    worst = max(worst, min(abs(w - z) for z in phi_roots))
                checked += 1
    return SuiteResult(
        "lemma-cd", worst <= tol, f"{checked} angle sets, max matching gap {worst:.2e}"
    )


def suite_representation(n_values=(-2, -1, 1, 2), angles: int = 6,
                         tol: float = 1e-9) -> SuiteResult:
    """Selected geometric roots satisfy the defining matrix relation."""
    worst = 0.0
    checked = 0
    for family, n in _default_members(n_values):
        a_k = critical_angle(family, n)
        p = family.word_exponent(n)
        grid = list(np.linspace(0.1, a_k - 0.05, angles)) + list(
            np.linspace(a_k + 0.05, math.pi, angles)
        )
        for alpha in grid:
            from .geometry import classify

            res = classify(ConeManifoldSpec(family, n, float(alpha)))
            m = cmath.exp(0.5j * alpha)
            for y in res.roots:
                worst = max(worst, relation_residual(family, n, p, m, complex(y)))
                checked += 1
    return SuiteResult(
        "representation-oracle",
        worst <= tol,
        f"{checked} selected roots, max relation residual {worst:.2e}",
    )


def suite_w12(n_values=(-2, -1, 1, 2), tol: float = 1e-9, seed: int = 13) -> SuiteResult:
    """Closed-form word (1,2)-entries match literal products at Riley roots."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    checked = 0
    for family in KnotFamily:
        for n in n_values:
            phi = build_phi(family, n)
            p = family.word_exponent(n)
            for _ in range(6):
                alpha = rng.uniform(0.3, math.pi - 0.3)
                m = cmath.exp(0.5j * alpha)
                x = 2.0 * math.cos(0.5 * alpha)
                for z in np.roots(list(reversed(phi.univariate_in_y(x)))):
                    z = complex(z)
                    lit = word_12(family, n, p, m, z)
                    if family.is_odd_presentation:
                        closed = w12_closed_form_odd(n, p, m, z)
                    else:
                        closed = w12_closed_form_even(n, p, m, z)
                    worst = max(worst, abs(lit - closed))
                    checked += 1
    return SuiteResult(
        "w12-closed-form", worst <= tol, f"{checked} roots, max gap {worst:.2e}"
    )


def suite_schlafli(n_values=(-2, -1, 1, 2), tol: float = 1e-6) -> SuiteResult:
    """Contour volumes match the Schlaefli length integral."""
    worst = 0.0
    checked = 0
    for family, n in _default_members(n_values):
        a_k = critical_angle(family, n)
        for alpha in (0.6 * a_k, a_k + 0.6 * (math.pi - a_k)):
            r = compute_volume(
                ConeManifoldSpec(family, n, float(alpha)), cross_check=True
            )
            worst = max(worst, abs(r.volume - r.schlafli_volume))
            checked += 1
    return SuiteResult(
        "schlafli-consistency",
        worst <= tol,
        f"{checked} volumes, max |contour - schlafli| {worst:.2e}",
    )


def suite_symmetry(n_values=(-2, -1, 1, 2), tol: float = 1e-8) -> SuiteResult:
    """Vol(alpha) = Vol(2*pi - alpha) across the spherical band."""
    worst = 0.0
    checked = 0
    for family, n in _default_members(n_values):
        a_k = critical_angle(family, n)
        for frac in (0.25, 0.6):
            alpha = a_k + frac * (math.pi - a_k)
            v1 = compute_volume(ConeManifoldSpec(family, n, alpha)).volume
            v2 = compute_volume(
                ConeManifoldSpec(family, n, 2.0 * math.pi - alpha)
            ).volume
            worst = max(worst, abs(v1 - v2))
            checked += 1
    return SuiteResult(
        "symmetry", worst <= tol, f"{checked} pairs, max |Vol(a) - Vol(2pi-a)| {worst:.2e}"
    )


ALL_SUITES = {
    "pell-identity": suite_pell,
    "lemma-cd": suite_lemma_cd,
    "representation-oracle": suite_representation,
    "w12-closed-form": suite_w12,
    "schlafli-consistency": suite_schlafli,
    "symmetry": suite_symmetry,
}


def run_suites(names=None, n_values=(-2, -1, 1, 2)):
    """Run the requested suites (all by default); returns list of SuiteResult."""
    results = []
    for name, fn in ALL_SUITES.items():
        if names and name not in names:
            continue
        if name == "pell-identity":
            results.append(fn())
        else:
            results.append(fn(n_values=n_values))
    return results
