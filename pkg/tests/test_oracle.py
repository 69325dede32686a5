import math
from fractions import Fraction as F

import numpy as np
import pytest

from bernmeasure.entire_fn import ip_product
from bernmeasure.errors import DomainError, ResourceError
from bernmeasure.measure_core import moments_recurrence
from bernmeasure.oracle import (
    cylinder_weights,
    cylinders,
    dyadic_integrate,
    dyadic_split,
    mc_integrate,
)


def test_cylinders_known_masses():
    p = F(1, 3)
    cs = list(cylinders(p, 2))
    assert [c.bits for c in cs] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [c.weight for c in cs] == [p * p, p * (1 - p), (1 - p) * p, (1 - p) ** 2]
    assert cs[2].interval == (F(1, 2), F(3, 4))
    assert cs[2].midpoint == F(5, 8)


def test_weights_normalized_exactly():
    for depth in range(15):
        assert sum(cylinder_weights(F(2, 7), depth)) == 1
    for depth in range(15, 21):
        assert dyadic_integrate(lambda x: 1, F(2, 7), depth, exact=True).value == 1


def test_weights_match_enumeration():
    p = F(3, 5)
    assert cylinder_weights(p, 6) == [c.weight for c in cylinders(p, 6)]
    assert np.allclose(cylinder_weights(0.6, 6), [float(c.weight) for c in cylinders(p, 6)])


def test_constant_integrand():
    assert dyadic_integrate(lambda x: 1, F(1, 3), 12, exact=True).value == 1
    assert dyadic_integrate(lambda x: np.ones_like(x), 0.3, 14).value == pytest.approx(1, abs=1e-13)


@pytest.mark.parametrize("p", [0.1, 0.3, 0.75])
def test_identity_integrand(p):
    r = dyadic_integrate(lambda x: x, p, 20, lipschitz=1)
    assert r.error_bound == 2.0 ** -21
    assert abs(r.value - (1 - p)) <= r.error_bound


def test_exp_against_product():
    r = dyadic_integrate(np.exp, 1 / 3, 22)
    assert abs(r.value - ip_product(1 / 3, 1).real) < 1e-5
    assert r.bound_estimated


def test_refinement_consistency():
    f = np.sin
    prev = dyadic_integrate(f, 0.3, 8, lipschitz=1)
    for d in range(9, 16):
        cur = dyadic_integrate(f, 0.3, d, lipschitz=1)
        assert abs(cur.value - prev.value) <= prev.error_bound
        prev = cur


def test_split_reproduces_self_similarity():
    p = F(2, 5)
    f = lambda x: x ** 3 - 2 * x + F(1, 3)
    left, right = dyadic_split(f, p, 10)
    assert left + right == dyadic_integrate(f, p, 10, exact=True).value


def test_exact_mode_converges_to_moments():
    # Midpoint sums of x^2 at depth d differ from J_2 by O(2^-d).
    p = F(1, 3)
    J2 = moments_recurrence(p, 2)[2]
    errs = [abs(dyadic_integrate(lambda x: x * x, p, d, exact=True).value - J2) for d in (6, 10, 14)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < F(1, 2 ** 14)


def test_limits():
    with pytest.raises(ResourceError):
        dyadic_integrate(np.exp, 0.3, 27)
    with pytest.raises(ResourceError):
        dyadic_integrate(lambda x: x, F(1, 3), 21, exact=True)
    with pytest.raises(DomainError):
        dyadic_integrate(lambda x: x, 0.3, 4, exact=True)


def test_scalar_only_integrand_is_vectorized():
    r = dyadic_integrate(lambda x: math.cos(x), 0.5, 10, lipschitz=1)
    assert abs(r.value - math.sin(1)) < 1e-6


def test_mc_constant():
    r = mc_integrate(lambda x: np.ones_like(x), 0.4, 1000, seed=3)
    assert r.estimate == 1
    assert r.std_error == 0


def test_mc_lebesgue_mean():
    r = mc_integrate(lambda x: x, 0.5, 10 ** 6, seed=11)
    assert abs(r.estimate - 0.5) < 4 * r.std_error


def test_mc_second_moment():
    r = mc_integrate(lambda x: x * x, 1 / 3, 10 ** 6, seed=2021)
    assert abs(r.estimate - 14 / 27) < 4 * r.std_error


def test_mc_reproducible():
    a = mc_integrate(np.exp, 0.2, 5000, seed=99)
    b = mc_integrate(np.exp, 0.2, 5000, seed=99)
    assert a == b
    assert mc_integrate(np.exp, 0.2, 5000, seed=100) != a


@pytest.mark.parametrize("p", [0, 1, 1.5])
def test_mc_domain(p):
    with pytest.raises(DomainError):
        mc_integrate(lambda x: x, p, 100, seed=0)
