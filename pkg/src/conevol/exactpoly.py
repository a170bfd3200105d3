"""Minimal exact-integer polynomial arithmetic.

Dense univariate polynomials are plain lists of Python ints (coefficient of
y^j at index j), so coefficient growth is unbounded and exact.  Bivariate
polynomials in (X, y) with X standing for x^2 are dicts mapping (i, j) ->
int for the monomial X^i * y^j.  Only what the cone-equation and Riley
assembly need lives here.
"""

from __future__ import annotations


# ---------------------------------------------------------------- univariate

def p_add(a, b):
    m = max(len(a), len(b))
    out = [0] * m
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return p_trim(out)


def p_sub(a, b):
    return p_add(a, [-c for c in b])


def p_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return p_trim(out)


def p_scale(a, s):
    return p_trim([s * c for c in a])


def p_pow(a, k: int):
    out = [1]
    base = list(a)
    while k:
        if k & 1:
            out = p_mul(out, base)
        base = p_mul(base, base)
        k >>= 1
    return out


def p_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def p_eval(a, y):
    acc = 0.0 if not isinstance(y, complex) else complex(0.0)
    for c in reversed(a):
        acc = acc * y + c
    return acc


def p_degree(a) -> int:
    return len(a) - 1


def p_gcd(a, b):
    """Primitive gcd of two integer polynomials, positive leading coefficient.

    Euclid over the rationals, then denominators cleared and content divided
    out (Gauss's lemma keeps everything integral).
    """
    from fractions import Fraction
    from math import gcd as int_gcd

    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    fa, fb = trim(fa), trim(fb)
    while fb:
        da, db = len(fa) - 1, len(fb) - 1
        if da < db:
            fa, fb = fb, fa
            continue
        r = fa[-1] / fb[-1]
        for i in range(db + 1):
            fa[da - db + i] -= r * fb[i]
        trim(fa)
        if len(fa) - 1 < db:
            fa, fb = fb, fa
    if not fa:
        return []
    lcm = 1
    for c in fa:
        lcm = lcm * c.denominator // int_gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fa]
    content = 0
    for c in ints:
        content = int_gcd(content, abs(c))
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def p_divexact(a, d):
    """Exact quotient a / d for integer polynomials; raises if not exact/integral."""
    from fractions import Fraction

    rem = [Fraction(c) for c in a]
    q = [Fraction(0)] * (len(a) - len(d) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + len(d) - 1] / d[-1]
        q[i] = c
        if c:
            for j, dc in enumerate(d):
                rem[i + j] -= c * dc
    if any(c != 0 for c in rem):
        raise ValueError("polynomial division not exact")
    out = []
    for c in q:
        if c.denominator != 1:
            raise ValueError("quotient not integral")
        out.append(int(c))
    return p_trim(out)


def s_poly(k: int):
    """Coefficient list of the second-kind sequence S_k (S_{-1} = 0, S_k = -S_{-k-2})."""
    if k == -1:
        return []
    if k < -1:
        return [-c for c in s_poly(-k - 2)]
    prev, cur = [1], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, p_sub([0] + cur, prev)
    return cur


# ----------------------------------------------------------------- bivariate

def b_from_uni(a, var: str):
    """Lift a univariate int poly into (X, y) coordinates; var is 'X' or 'y'."""
    if var == "y":
        return {(0, j): c for j, c in enumerate(a) if c}
    return {(i, 0): c for i, c in enumerate(a) if c}


def b_const(c):
    return {(0, 0): c} if c else {}


def b_add(a, b):
    out = dict(a)
    for key, c in b.items():
        out[key] = out.get(key, 0) + c
        if out[key] == 0:
            del out[key]
    return out


def b_sub(a, b):
    return b_add(a, {k: -c for k, c in b.items()})


def b_mul(a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
            if out[key] == 0:
                del out[key]
    return out


def b_eval(a, x_sq, y):
    """Evaluate at numeric x^2 and y."""
    acc = 0j
    for (i, j), c in a.items():
        acc += c * x_sq**i * y**j
    return acc


def b_compose_S(p: int, u, *_):
    """S_p(u) for a bivariate argument u, by running the recurrence on polys."""
    if p == -1:
        return {}
    if p < -1:
        return {k: -c for k, c in b_compose_S(-p - 2, u).items()}
    prev, cur = b_const(1), dict(u)
    if p == 0:
        return prev
    for _ in range(p - 1):
        prev, cur = cur, b_sub(b_mul(u, cur), prev)
    return cur


def b_degree_y(a) -> int:
    return max((j for (_, j) in a), default=-1)


def b_uni_in_y(a, x_sq):
    """Collapse to a univariate float-coefficient list in y at fixed numeric x^2."""
    if not a:
        return []
    out = [0j] * (b_degree_y(a) + 1)
    for (i, j), c in a.items():
        out[j] += c * x_sq**i
    while out and out[-1] == 0:
        out.pop()
    return out
