from fractions import Fraction as F

import pytest

from bernmeasure.legendre import legendre_coeff_det, shifted_legendre
from bernmeasure.measure_core import integrate_poly_via_moments, moments_recurrence

P_GRID = [F(0), F(1, 7), F(1, 3), F(1, 2), F(2, 3), F(9, 10), F(1)]


def test_first_polynomials():
    assert shifted_legendre(0).coeffs == (1,)
    assert shifted_legendre(1).coeffs == (-1, 2)
    assert shifted_legendre(2).coeffs == (1, -6, 6)


@pytest.mark.parametrize("N", range(16))
def test_endpoint_value_and_integer_coefficients(N):
    S = shifted_legendre(N)
    assert all(isinstance(c, int) for c in S.coeffs)
    assert S(1) == 1
    assert S(0) == (-1) ** N


def test_coefficient_examples():
    c0 = legendre_coeff_det(F(2, 5), 0)
    assert (c0.exact, c0.normalizer) == (1, 1)
    for p in [F(1, 3), F(3, 4)]:
        c1 = legendre_coeff_det(p, 1)
        assert c1.exact == 1 - 2 * p
        assert c1.scale_squared == 3
    for N in range(1, 10):
        assert legendre_coeff_det(F(1, 2), N).exact == 0


@pytest.mark.parametrize("p", P_GRID)
def test_determinant_matches_moment_dot_product(p):
    J = moments_recurrence(p, 15)
    for N in range(16):
        expected = integrate_poly_via_moments(shifted_legendre(N).as_polynomial(), J)
        assert legendre_coeff_det(p, N).exact == expected


def test_orthonormality_under_lebesgue():
    # int S_N S_M dx = delta_NM / (2N+1), so sqrt((2N+1)(2M+1)) S_N S_M integrates to delta.
    J = moments_recurrence(F(1, 2), 16)
    for N in range(9):
        for M in range(9):
            gram = integrate_poly_via_moments(
                shifted_legendre(N).as_polynomial() * shifted_legendre(M).as_polynomial(), J
            )
            if N == M:
                assert gram * (2 * N + 1) == 1
            else:
                assert gram == 0


@pytest.mark.parametrize("p", [F(1, 5), F(2, 3), 0.9])
def test_partial_parseval_sums_nondecreasing(p):
    partial = 0.0
    for N in range(15):
        v = legendre_coeff_det(p, N).value
        new = partial + abs(v) ** 2
        assert new >= partial
        partial = new


def test_value_combines_parts():
    c = legendre_coeff_det(F(1, 3), 1)
    assert c.value == pytest.approx(float(F(1, 3)) / 3 ** 0.5)
