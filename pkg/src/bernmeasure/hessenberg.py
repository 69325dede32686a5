"""Bordered Pascal-Hessenberg matrices and their determinants.

Two layouts of the same linear system are supported:

``MatrixForm.PASCAL``
    row ``n`` (1 <= n <= N) is ``[1, C(n,1), ..., C(n,n-1), (1-2^n)/(1-p), 0, ...]``,
    prefactor ``(1-p)^N / prod (2^n - 1)``.  Undefined at ``p = 1``.
``MatrixForm.REGULARIZED``
    row ``n`` is ``[(1-p)C(n,0)/2^n, ..., (1-p)C(n,n-1)/2^n, 1/2^n - 1, 0, ...]``,
    prefactor ``1 / prod (1 - 2^-n)``.  Valid for every ``p``.

In both the final row carries the coefficients ``r_0..r_N`` of the integrand.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import SingularParameterError
from .measure_core import MeasureParam, Polynomial, pascal_row

__all__ = [
    "MatrixForm",
    "PascalHessenbergMatrix",
    "build_matrix",
    "hessenberg_det",
    "integrate_polynomial_det",
    "moment_det",
    "prefactor",
]


class MatrixForm(enum.Enum):
    PASCAL = "pascal"
    REGULARIZED = "regularized"


@dataclass(frozen=True)
class PascalHessenbergMatrix:
    entries: tuple
    form: MatrixForm | None = None

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def _resolve_form(p, form: MatrixForm | str | None) -> MatrixForm:
    if form is None:
        return MatrixForm.REGULARIZED if p == 1 else MatrixForm.PASCAL
    return MatrixForm(form)


def _pascal_rows(N: int, p) -> list[list]:
    q = 1 - p
    rows = []
    for n in range(1, N + 1):
        row = list(pascal_row(n)[:n])
        row.append((1 - 2 ** n) / q)
        rows.append(row + [0] * (N - n))
    return rows


def _regularized_rows(N: int, p) -> list[list]:
    q = 1 - p
    rows = []
    for n in range(1, N + 1):
        scale = Fraction(1, 2 ** n)
        row = [q * c * scale for c in pascal_row(n)[:n]]
        row.append(scale - 1)
        rows.append(row + [0] * (N - n))
    return rows


def build_matrix(R: Polynomial | Sequence, p, form: MatrixForm | str | None = MatrixForm.PASCAL) -> PascalHessenbergMatrix:
    """Lay out the ``(N+1) x (N+1)`` bordered matrix for the integrand ``R``."""
    if not isinstance(R, Polynomial):
        R = Polynomial(R)
    p = MeasureParam.coerce(p).value
    form = _resolve_form(p, form)
    N = R.degree
    if form is MatrixForm.PASCAL:
        if p == 1:
            raise SingularParameterError(
                "the Pascal layout has a pole at p = 1; use MatrixForm.REGULARIZED"
            )
        rows = _pascal_rows(N, p)
    else:
        rows = _regularized_rows(N, p)
    rows.append(list(R.coeffs))
    return PascalHessenbergMatrix(tuple(tuple(r) for r in rows), form)


def _check_hessenberg(rows) -> None:
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError("matrix must be square")
        for j in range(i + 2, n):
            if row[j] != 0:
                raise ValueError(f"entry ({i}, {j}) above the first superdiagonal is nonzero")


def hessenberg_det(M: PascalHessenbergMatrix | Sequence[Sequence[Any]]):
    """Determinant of a lower-Hessenberg matrix by the leading-minor recurrence.

    With ``D_0 = 1`` and ``h`` the matrix entries,

        D_k = sum_{j=1}^{k} (-1)^(k-j) h[k,j] (h[j,j+1] ... h[k-1,k]) D_{j-1}.

    Division-free and O(N^2), so exact entries give an exact result.
    """
    rows = M.entries if isinstance(M, PascalHessenbergMatrix) else tuple(tuple(r) for r in M)
    _check_hessenberg(rows)
    n = len(rows)
    if n == 0:
        return 1
    minors = [1]
    for k in range(n):
        total = 0
        chain = 1  # product of superdiagonal entries h[j,j+1]..h[k-1,k]
        sign = 1
        for j in range(k, -1, -1):
            total += sign * rows[k][j] * chain * minors[j]
            if j > 0:
                chain = chain * rows[j - 1][j]
                sign = -sign
        minors.append(total)
    return minors[-1]


def prefactor(N: int, p, form: MatrixForm | str):
    form = MatrixForm(form)
    if form is MatrixForm.PASCAL:
        q = 1 - MeasureParam.coerce(p).value
        denom = 1
        for n in range(1, N + 1):
            denom *= 2 ** n - 1
        return q ** N / denom
    out = Fraction(1)
    for n in range(1, N + 1):
        out /= 1 - Fraction(1, 2 ** n)
    return out


def integrate_polynomial_det(R: Polynomial | Sequence, p, form: MatrixForm | str | None = None):
    """``int R dmu_p`` as prefactor times a bordered Hessenberg determinant.

    ``form=None`` picks the Pascal layout, falling back to the regularized one
    at ``p = 1``.
    """
    if not isinstance(R, Polynomial):
        R = Polynomial(R)
    pv = MeasureParam.coerce(p).value
    form = _resolve_form(pv, form)
    matrix = build_matrix(R, pv, form)
    return prefactor(R.degree, pv, form) * hessenberg_det(matrix)


def moment_det(N: int, p, form: MatrixForm | str | None = None):
    """``J_N`` through the determinant of the bordered Pascal matrix."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return integrate_polynomial_det(Polynomial.monomial(N), p, form)

