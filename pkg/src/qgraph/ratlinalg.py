"""Exact linear algebra over the rationals.

Matrices are plain lists of lists of Fraction. Everything here is exact;
floating point never enters. Sizes stay small (a few dozen rows), so the
naive cubic algorithms are the right tool.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = ONE
    return out


def as_fraction_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai, oi = a[i], out[i]
        for t in range(k):
            f = ai[t]
            if f:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += f * bt[j]
    return out


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def rank(rows: Matrix) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        for i in range(r + 1, nr):
            if m[i][c]:
                f = m[i][c] / inv
                mi, mr = m[i], m[r]
                for j in range(c, nc):
                    mi[j] -= f * mr[j]
        r += 1
        if r == nr:
            break
    return r


def solve(a: Matrix, b: list[Fraction]) -> list[Fraction]:
    """Solve a*x = b for square nonsingular a. Raises ValueError if singular."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        m[c], m[piv] = m[piv], m[c]
        inv = m[c][c]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c] / inv
                mi, mc = m[i], m[c]
                for j in range(c, n + 1):
                    mi[j] -= f * mc[j]
    return [m[i][n] / m[i][i] for i in range(n)]


def charpoly(a: Matrix) -> list[Fraction]:
    """Characteristic polynomial of a, leading coefficient first.

    Returns [c0, c1, ..., cn] with c0 = 1 such that
    det(x*I - a) = sum_j c_j x^(n-j). Equivalently
    det(I - z*a) = sum_j c_j z^j, which is how the resonance code uses it.
    Faddeev-LeVerrier recursion; the divisions by k are exact over Q.
    """
    n = len(a)
    coeffs = [ONE]
    m = identity(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        coeffs.append(c)
        for i in range(n):
            m[i][i] += c
    return coeffs


def zero_eigenvalue_multiplicity(a: Matrix) -> int:
    """Algebraic multiplicity of the eigenvalue 0, exactly.

    Equals n - rank(a^e) for any e at least the size n (the rank of powers
    stabilizes once the nilpotent part of the zero eigenspace is exhausted).
    """
    n = len(a)
    p = [row[:] for row in a]
    e = 1
    while e < n:
        p = mat_mul(p, p)
        e *= 2
    return n - rank(p)


# -- determinants of matrices with univariate polynomial entries ------------
#
# Polynomials are sparse dicts {exponent: Fraction}. Used for the exact
# determinant route det(I - diag(z^n_r) * S) on commensurable graphs.


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, ZERO) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_scale(p: dict, f: Fraction) -> dict:
    if not f:
        return {}
    return {e: c * f for e, c in p.items()}


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            s = out.get(e, ZERO) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def poly_matrix_det(m: list[list[dict]]) -> dict:
    """Determinant of a matrix of sparse polynomials.

    Subset dynamic programming over column choices, O(2^n * n) polynomial
    operations; intended for n <= 16.
    """
    n = len(m)
    if n == 0:
        return {0: ONE}
    if n > 16:
        raise ValueError("polynomial determinant limited to 16 rows")
    full = (1 << n) - 1
    table: list[dict | None] = [None] * (full + 1)
    table[0] = {0: ONE}
    for mask in range(full):
        acc = table[mask]
        if acc is None or not acc:
            continue
        row = mask.bit_count()
        for c in range(n):
            bit = 1 << c
            if mask & bit:
                continue
            entry = m[row][c]
            if not entry:
                continue
            term = poly_mul(acc, entry)
            if (mask >> (c + 1)).bit_count() & 1:
                term = poly_scale(term, -ONE)
            prev = table[mask | bit]
            table[mask | bit] = term if prev is None else poly_add(prev, term)
    return table[full] or {}
