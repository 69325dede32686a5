"""Integrals of ``e^{wx}``, ``log(1 - wx)`` and ``(1 + wx)^a`` against ``mu_p``.

Each integrand is truncated to its degree-``N`` Taylor polynomial and
integrated two ways: as a moment series (primary) and as a bordered
Hessenberg determinant.  The determinant reproduces the truncated series
exactly, so for exact inputs the two routes are compared for equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import mpmath

from ._mp import to_mp
from .errors import DomainError
from .hessenberg import integrate_polynomial_det
from .measure_core import DEFAULT_DIGITS, MeasureParam, Polynomial, is_exact, moments_recurrence

__all__ = [
    "exp_integral_det",
    "exp_integral_series",
    "generalized_binomial",
    "log_integral",
    "log_integral_det",
    "log_integral_series",
    "power_integral",
    "power_integral_det",
    "power_integral_series",
]


def generalized_binomial(alpha, n: int):
    """``alpha (alpha-1) ... (alpha-n+1) / n!`` by the falling-factorial product."""
    out = alpha * 0 + 1
    for k in range(n):
        out = out * (alpha - k) / (k + 1)
    return out


def _exp_row(w, N):
    row = [w * 0 + 1]
    for n in range(1, N + 1):
        row.append(row[-1] * w / n)
    return row


def _log_row(w, N):
    # Taylor coefficients of -log(1 - w x); the overall sign is applied later.
    row = [w * 0]
    power = w * 0 + 1
    for n in range(1, N + 1):
        power = power * w
        row.append(power / n)
    return row


def _power_row(alpha, w, N):
    row = []
    power = w * 0 + 1
    for n in range(N + 1):
        row.append(generalized_binomial(alpha, n) * power)
        power = power * w
    return row


def _check_disc(w) -> None:
    if abs(complex(to_mp(w))) >= 1:
        raise DomainError(f"|omega| must be < 1, got {abs(complex(to_mp(w))):.6g}")


def _norm(a):
    if isinstance(a, MeasureParam):
        a = a.value
    if isinstance(a, int) and not isinstance(a, bool):
        return Fraction(a)
    return a


class _Route:
    """Runs a computation in exact arithmetic, or in mpmath for floating inputs."""

    def __init__(self, *args, digits: int = DEFAULT_DIGITS):
        self.exact = all(is_exact(_norm(a)) for a in args)
        self.digits = digits

    def run(self, fn: Callable, *args):
        if self.exact:
            return fn(*(_norm(a) for a in args))
        with mpmath.workdps(self.digits):
            return complex(fn(*(to_mp(a) for a in args)))


def _series(p, coeffs):
    moments = moments_recurrence(p, len(coeffs) - 1, digits=mpmath.mp.dps).moments
    total = 0
    for c, j in zip(coeffs, moments):
        total += c * j
    return total


def _det(p, coeffs):
    return integrate_polynomial_det(Polynomial(coeffs), p)


# -- exponential ------------------------------------------------------------


def exp_integral_series(p, omega, N: int, digits: int = DEFAULT_DIGITS):
    """``sum_{n<=N} J_n w^n / n!``."""
    return _Route(p, omega, digits=digits).run(lambda p, w: _series(p, _exp_row(w, N)), p, omega)


def exp_integral_det(p, omega, N: int, digits: int = DEFAULT_DIGITS):
    """Bordered determinant with last row ``[1, w, w^2/2!, ..., w^N/N!]``."""
    return _Route(p, omega, digits=digits).run(lambda p, w: _det(p, _exp_row(w, N)), p, omega)


# -- logarithm --------------------------------------------------------------


def log_integral_series(p, omega, N: int, digits: int = DEFAULT_DIGITS):
    """``-sum_{n=1}^{N} w^n J_n / n``."""
    _check_disc(omega)
    return _Route(p, omega, digits=digits).run(lambda p, w: -_series(p, _log_row(w, N)), p, omega)


def log_integral_det(p, omega, N: int, digits: int = DEFAULT_DIGITS):
    """Minus the bordered determinant with last row ``[0, w, w^2/2, ..., w^N/N]``."""
    _check_disc(omega)
    return _Route(p, omega, digits=digits).run(lambda p, w: -_det(p, _log_row(w, N)), p, omega)


def _consistent(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(complex(a) - complex(b)) <= 1e-12 * max(1.0, abs(complex(a)))


def log_integral(p, omega, N: int, digits: int = DEFAULT_DIGITS):
    """Truncated ``int log(1 - w x) dmu_p`` for ``|w| < 1``, cross-checked by both routes."""
    series = log_integral_series(p, omega, N, digits)
    det = log_integral_det(p, omega, N, digits)
    if not _consistent(series, det, _Route(p, omega).exact):
        raise ArithmeticError(f"series {series!r} and determinant {det!r} disagree")
    return series


# -- binomial power ---------------------------------------------------------


def power_integral_series(p, omega, alpha, N: int, digits: int = DEFAULT_DIGITS):
    """``sum_{n<=N} C(alpha, n) w^n J_n``."""
    _check_disc(omega)
    return _Route(p, omega, alpha, digits=digits).run(
        lambda p, w, a: _series(p, _power_row(a, w, N)), p, omega, alpha
    )


def power_integral_det(p, omega, alpha, N: int, digits: int = DEFAULT_DIGITS):
    """Bordered determinant with last row ``[1, C(a,1) w, ..., C(a,N) w^N]``."""
    _check_disc(omega)
    return _Route(p, omega, alpha, digits=digits).run(
        lambda p, w, a: _det(p, _power_row(a, w, N)), p, omega, alpha
    )


def power_integral(p, omega, alpha, N: int, digits: int = DEFAULT_DIGITS):
    """Truncated ``int (1 + w x)^alpha dmu_p`` for ``|w| < 1``, cross-checked by both routes."""
    series = power_integral_series(p, omega, alpha, N, digits)
    det = power_integral_det(p, omega, alpha, N, digits)
    if not _consistent(series, det, _Route(p, omega, alpha).exact):
        raise ArithmeticError(f"series {series!r} and determinant {det!r} disagree")
    return series
