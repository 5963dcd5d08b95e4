"""Exponential polynomials and the exact algebra underneath them."""

import cmath
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgraph import ExponentialPolynomial
from qgraph import polys, ratlinalg
from qgraph.solver import rational_gcd

F = Fraction

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)
positive_rationals = st.fractions(
    min_value=F(1, 12), max_value=10, max_denominator=12
)


def test_exact_zero_coefficients_dropped():
    p = ExponentialPolynomial({F(0): F(1), F(2): F(1, 4) - F(1, 4), F(3): F(1, 3)})
    assert [l for l, _ in p.terms] == [F(0), F(3)]
    assert p.coefficient(2) == 0
    assert p.coefficient(F(3)) == F(1, 3)
    assert p.max_length == F(3)


def test_coefficient_vector_dense_padding():
    p = ExponentialPolynomial({F(0): F(1), F(2): F(-1)})
    assert p.coefficient_vector(F(1), F(4)) == [F(1), F(0), F(-1), F(0), F(0)]
    with pytest.raises(ValueError):
        p.coefficient_vector(F(3), F(4))


def test_evaluate_matches_manual_sum():
    p = ExponentialPolynomial({F(0): F(1), F(1, 2): F(-3, 4)})
    k = 1.3 - 0.2j
    manual = 1 - 0.75 * cmath.exp(1j * k * 0.5)
    assert abs(p.evaluate(k) - manual) < 1e-14


@given(
    st.dictionaries(
        st.fractions(min_value=0, max_value=6, max_denominator=6),
        rationals,
        max_size=6,
    ),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
)
@settings(max_examples=60, deadline=None)
def test_conjugate_symmetry(terms, z):
    # real coefficients: p(conj k) relates to conj p(-conj k); in z-plane
    # form the reduced polynomial has real coefficients, so p(conj z) = conj p(z)
    coeffs = list(terms.values()) or [F(1)]
    value = polys.eval_complex(coeffs, z)
    mirrored = polys.eval_complex(coeffs, z.conjugate())
    assert cmath.isclose(mirrored, value.conjugate(), rel_tol=0, abs_tol=1e-9 * (1 + abs(value)))


@given(positive_rationals, positive_rationals)
@settings(max_examples=100, deadline=None)
def test_rational_gcd_properties(x, y):
    g = rational_gcd(x, y)
    assert g > 0
    assert (x / g).denominator == 1
    assert (y / g).denominator == 1
    # matches gcd(a*d, c*b) / (b*d)
    from math import gcd

    expected = F(
        gcd(x.numerator * y.denominator, y.numerator * x.denominator),
        x.denominator * y.denominator,
    )
    assert g == expected


def test_rank_and_zero_multiplicity():
    m = [
        [F(1), F(2), F(3)],
        [F(2), F(4), F(6)],
        [F(0), F(0), F(1)],
    ]
    assert ratlinalg.rank(m) == 2
    nilpotent = [[F(0), F(1)], [F(0), F(0)]]
    assert ratlinalg.zero_eigenvalue_multiplicity(nilpotent) == 2
    assert ratlinalg.rank(nilpotent) == 1


def test_solve_exact():
    a = [[F(2), F(1)], [F(1), F(3)]]
    x = ratlinalg.solve(a, [F(5), F(10)])
    assert x == [F(1), F(3)]
    with pytest.raises(ValueError):
        ratlinalg.solve([[F(1), F(2)], [F(2), F(4)]], [F(1), F(1)])


def test_charpoly_matches_numpy_and_poly_det():
    rng = random.Random(17)
    for _ in range(15):
        n = rng.randint(1, 5)
        m = [[F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        coeffs = ratlinalg.charpoly(m)
        numeric = np.poly(np.array(m, dtype=float))
        assert np.allclose([float(c) for c in coeffs], numeric, atol=1e-8)
        # det(I - z*m) through the polynomial determinant
        entries = []
        for r in range(n):
            row = []
            for c in range(n):
                e = {}
                if r == c:
                    e[0] = F(1)
                if m[r][c]:
                    e[1] = e.get(1, F(0)) - m[r][c]
                row.append(e)
            entries.append(row)
        det = ratlinalg.poly_matrix_det(entries)
        for j, cj in enumerate(coeffs):
            assert det.get(j, F(0)) == cj


def test_poly_det_size_guard():
    with pytest.raises(ValueError):
        ratlinalg.poly_matrix_det([[{} for _ in range(17)] for _ in range(17)])


def test_squarefree_decomposition_reconstructs():
    rng = random.Random(23)
    for _ in range(20):
        # random monic factors assembled with random multiplicities
        factors = []
        poly = [F(1)]
        for _ in range(rng.randint(1, 3)):
            root = F(rng.randint(-4, 4), rng.randint(1, 3))
            mult = rng.randint(1, 3)
            factors.append(([-root, F(1)], mult))
            for _ in range(mult):
                poly = polys.mul(poly, [-root, F(1)])
        decomposition = polys.squarefree_decomposition(poly)
        rebuilt = [F(1)]
        for f, mult in decomposition:
            for _ in range(mult):
                rebuilt = polys.mul(rebuilt, f)
        assert polys.monic(rebuilt) == polys.monic(poly)
        for f, _ in decomposition:
            assert polys.degree(polys.poly_gcd(f, polys.derivative(f))) == 0


def test_triangle_factorization_by_exact_division():
    # -4 * (1 - (3/4) z^2 - (1/4) z^3) = z^3 + 3 z^2 - 4 = (z - 1)(z + 2)^2
    p = [F(1), F(0), F(-3, 4), F(-1, 4)]
    negated = [c * -4 for c in p]
    product = polys.mul(polys.mul([F(-1), F(1)], [F(2), F(1)]), [F(2), F(1)])
    assert polys.trim(negated) == product
    quotient, remainder = polys.divmod_exact(negated, [F(2), F(1)])
    quotient, remainder2 = polys.divmod_exact(quotient, [F(2), F(1)])
    assert remainder == [F(0)] and remainder2 == [F(0)]
    assert polys.monic(quotient) == [F(-1), F(1)]


def test_rational_roots_extraction():
    # (2z - 1)(z + 3) = 2z^2 + 5z - 3
    assert sorted(polys.rational_roots([F(-3), F(5), F(2)])) == [F(-3), F(1, 2)]
    assert polys.rational_roots([F(1), F(0), F(1)]) == []  # z^2 + 1
    assert polys.rational_roots([F(0), F(1)]) == [F(0)]


def test_deflate_by_root():
    p = polys.mul([F(-1), F(1)], [F(2), F(1)])
    assert polys.deflate_by_root(p, F(1)) == [F(2), F(1)]
    with pytest.raises(ValueError):
        polys.deflate_by_root(p, F(5))
