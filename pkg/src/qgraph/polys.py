"""Dense univariate polynomials with Fraction coefficients, ascending order.

Support code for the resonance root finder: exact gcd, square-free
(Yun) decomposition and rational-root extraction, plus complex Horner
evaluation for the numerical stages.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)

Poly = list[Fraction]


def trim(p: Poly) -> Poly:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def degree(p: Poly) -> int:
    p = trim(p)
    return len(p) - 1


def derivative(p: Poly) -> Poly:
    if len(p) <= 1:
        return [ZERO]
    return trim([c * i for i, c in enumerate(p)][1:])


def mul(p: Poly, q: Poly) -> Poly:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return trim(out)


def divmod_exact(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Polynomial division over Q; exact, no floating point."""
    p = trim([Fraction(c) for c in p])
    q = trim([Fraction(c) for c in q])
    if q == [ZERO]:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(rem) - 1 < dq:
        return [ZERO], trim(rem)
    quot = [ZERO] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        if rem[i]:
            f = rem[i] / lead
            quot[i - dq] = f
            for j in range(dq + 1):
                rem[i - dq + j] -= f * q[j]
    return trim(quot), trim(rem)


def monic(p: Poly) -> Poly:
    p = trim(p)
    lead = p[-1]
    if lead == 0:
        return p
    return [c / lead for c in p]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q via the Euclidean algorithm."""
    a, b = trim(p), trim(q)
    while b != [ZERO]:
        _, r = divmod_exact(a, b)
        a, b = b, r
    if a == [ZERO]:
        return a
    return monic(a)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lead * prod f_i^i with the f_i square-free, monic.

    Returns [(f_i, i)] for the factors of positive degree.
    """
    p = monic(trim(p))
    if degree(p) == 0:
        return []
    out: list[tuple[Poly, int]] = []
    dp = derivative(p)
    g = poly_gcd(p, dp)
    c, _ = divmod_exact(p, g)
    d_part, _ = divmod_exact(dp, g)
    d = sub(d_part, derivative(c))
    i = 1
    while degree(c) > 0:
        f = poly_gcd(c, d)
        if degree(f) > 0:
            out.append((monic(f), i))
        c, _ = divmod_exact(c, f)
        d_part, _ = divmod_exact(d, f)
        d = sub(d_part, derivative(c))
        i += 1
    return out


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    out = [ZERO] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return trim(out)


def to_integer_coeffs(p: Poly) -> list[int]:
    """Clear denominators and content; sign fixed so the leading term is positive."""
    p = trim(p)
    lcm = 1
    for c in p:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of p, each listed once (p need not be square-free)."""
    ints = to_integer_coeffs(p)
    if len(ints) == 1:
        return []
    # strip powers of x
    k = 0
    while ints[k] == 0:
        k += 1
    roots: list[Fraction] = [] if k == 0 else [ZERO]
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    for q in _divisors(ints[-1]):
        for r in _divisors(ints[0]):
            for cand in (Fraction(r, q), Fraction(-r, q)):
                if cand not in roots and eval_fraction(ints, cand) == 0:
                    roots.append(cand)
    return roots


def eval_fraction(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def eval_complex(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + complex(c)
    return acc


def deflate_by_root(p: Poly, root: Fraction) -> Poly:
    """Exact division of p by (x - root); root must be an exact root."""
    q, rem = divmod_exact(p, [-root, ONE])
    if rem != [ZERO]:
        raise ValueError("not a root")
    return q
