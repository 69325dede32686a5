"""Shifted Legendre polynomials and the coefficients of ``mu_p`` in that basis.

``S_N(x) = (-1)^N sum_n C(N,n) C(N+n,n) (-x)^n`` is the shifted Legendre
polynomial with ``S_N(1) = 1``.  The basis element used for the expansion is
``P_N = S_N / sqrt(2N+1)``; results keep the rational ``int S_N dmu_p``
apart from the irrational ``1/sqrt(2N+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from ._mp import to_mp
from .hessenberg import MatrixForm, _resolve_form, build_matrix, hessenberg_det, prefactor
from .measure_core import MeasureParam, Polynomial, binomial

__all__ = ["LegendreCoefficient", "ShiftedLegendre", "legendre_coeff_det", "shifted_legendre"]


@dataclass(frozen=True)
class ShiftedLegendre:
    index: int
    coeffs: tuple[int, ...]

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def __call__(self, x):
        return self.as_polynomial()(x)


def _signed_row(N: int) -> list[int]:
    # C(N,n) C(N+n,n) (-1)^n, the sum without the leading (-1)^N
    return [(-1) ** n * binomial(N, n) * binomial(N + n, n) for n in range(N + 1)]


def shifted_legendre(N: int) -> ShiftedLegendre:
    if N < 0:
        raise ValueError("N must be nonnegative")
    sign = (-1) ** N
    return ShiftedLegendre(N, tuple(sign * c for c in _signed_row(N)))


@dataclass(frozen=True)
class LegendreCoefficient:
    """``int P_N dmu_p = exact * normalizer`` with ``normalizer = 1/sqrt(scale_squared)``."""

    index: int
    exact: object
    scale_squared: int

    @property
    def normalizer(self) -> float:
        return 1 / math.sqrt(self.scale_squared)

    @property
    def value(self) -> complex | float:
        with mpmath.workdps(20):
            v = complex(to_mp(self.exact))
        if v.imag == 0:
            return v.real * self.normalizer
        return v * self.normalizer


def legendre_coeff_det(p, N: int, form: MatrixForm | str | None = None) -> LegendreCoefficient:
    """Coefficient of ``mu_p`` along ``P_N`` from a bordered determinant.

    The last row is ``[1, -C(N,1)C(N+1,1), C(N,2)C(N+2,2), ...]`` and the
    Pascal-layout prefactor is ``(p - 1)^N / prod (2^n - 1)``.  At ``p = 1``
    the regularized layout is used (``form=None``) or required.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    pv = MeasureParam.coerce(p).value
    form = _resolve_form(pv, form)
    matrix = build_matrix(Polynomial(_signed_row(N)), pv, form)
    det = hessenberg_det(matrix)
    if form is MatrixForm.PASCAL:
        denom = 1
        for n in range(1, N + 1):
            denom *= 2 ** n - 1
        exact = (pv - 1) ** N * det / denom
    else:
        exact = (-1) ** N * prefactor(N, pv, form) * det
    return LegendreCoefficient(N, exact, 2 * N + 1)
