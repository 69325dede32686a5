"""Exact moments of the Bernoulli measure and polynomial integration.

The moments ``J_k = int x^k dmu_p`` obey

    J_0 = 1,   J_k = (1 - p) / (2^k - 1) * sum_{n<k} C(k, n) J_n,

which comes from splitting ``[0, 1]`` at the first binary digit.  The
recurrence is rational in ``p``, so it runs unchanged over ``Fraction``,
Gaussian rationals, floats, complex numbers and mpmath types.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

import mpmath

from .errors import MomentOrderError

__all__ = [
    "DEFAULT_DIGITS",
    "MeasureParam",
    "MomentTable",
    "Polynomial",
    "binomial",
    "is_exact",
    "moments_recurrence",
    "integrate_poly_via_moments",
    "pascal_row",
    "poly_compose_affine",
]

#: Significant decimal digits used when the recurrence runs on floating ``p``.
DEFAULT_DIGITS = 34


@lru_cache(maxsize=None)
def _pascal_rows(n_max: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for _ in range(n_max):
        prev = rows[-1]
        rows.append((1,) + tuple(a + b for a, b in zip(prev, prev[1:])) + (1,))
    return tuple(rows)


def _rows_upto(n: int) -> tuple[tuple[int, ...], ...]:
    # Round the cache key up so neighbouring requests share one table.
    size = max(32, 1 << max(n, 1).bit_length())
    return _pascal_rows(size)


def pascal_row(n: int) -> tuple[int, ...]:
    """Row ``n`` of Pascal's triangle, built by integer addition."""
    if n < 0:
        raise ValueError("row index must be nonnegative")
    return _rows_upto(n)[n]


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return pascal_row(n)[k]


def is_exact(x: Any) -> bool:
    """True for rationals and Gaussian rationals (anything not floating)."""
    if isinstance(x, bool):
        return True
    if isinstance(x, (numbers.Rational, Fraction)):
        return True
    if isinstance(x, (float, complex, mpmath.mpf, mpmath.mpc)):
        return False
    if isinstance(x, numbers.Number):
        return False
    # sympy domain elements (QQ_I, QQ) and the like.
    return True


@dataclass(frozen=True)
class MeasureParam:
    """The parameter ``p`` of the measure, exact or approximate.

    No range restriction is imposed: values outside ``(0, 1)`` and complex
    values are legitimate inputs for every analytic formula.
    """

    value: Any
    kind: str

    def __post_init__(self):
        if self.kind not in ("exact", "approximate"):
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def coerce(cls, p: Any) -> "MeasureParam":
        if isinstance(p, MeasureParam):
            return p
        if isinstance(p, bool):
            raise TypeError("p must be numeric")
        if isinstance(p, int):
            return cls(Fraction(p), "exact")
        if is_exact(p):
            return cls(p, "exact")
        return cls(p, "approximate")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"


def _unwrap(p: Any) -> Any:
    return p.value if isinstance(p, MeasureParam) else p


@dataclass(frozen=True)
class Polynomial:
    """Monomial-basis polynomial ``r_0 + r_1 x + ... + r_N x^N``.

    Trailing zero coefficients are stripped on construction, except that the
    zero polynomial keeps the single coefficient ``0``.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = [Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else c for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def scale(self, c) -> "Polynomial":
        return Polynomial(c * r for r in self.coeffs)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls([0] * n + [c])


@dataclass(frozen=True)
class MomentTable:
    """``p`` together with the moments ``J_0 .. J_N``."""

    p: MeasureParam
    moments: tuple

    def __len__(self) -> int:
        return len(self.moments)

    def __getitem__(self, k: int):
        return self.moments[k]

    @property
    def order(self) -> int:
        return len(self.moments) - 1


def _to_mp(x):
    if isinstance(x, (complex, mpmath.mpc)):
        return mpmath.mpc(x)
    return mpmath.mpf(x)


def _recurrence(p, n: int) -> list:
    q = 1 - p
    moments = [p * 0 + 1]
    for k in range(1, n + 1):
        row = pascal_row(k)
        s = 0
        for c, j in zip(row, moments):
            s += c * j
        moments.append(q * s / (2 ** k - 1))
    return moments


def moments_recurrence(p, N: int, digits: int = DEFAULT_DIGITS) -> MomentTable:
    """Moments ``J_0..J_N`` of ``mu_p``.

    Exact ``p`` (int, ``Fraction``, Gaussian rational) gives exact moments.
    Floating ``p`` is promoted to mpmath at ``digits`` significant digits and
    the table holds mpmath numbers.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    param = MeasureParam.coerce(p)
    if param.exact:
        return MomentTable(param, tuple(_recurrence(param.value, N)))
    with mpmath.workdps(digits):
        moments = _recurrence(_to_mp(param.value), N)
    return MomentTable(param, tuple(moments))


def integrate_poly_via_moments(R: Polynomial | Sequence, M: MomentTable):
    """``int R dmu_p`` as the dot product ``sum r_n J_n``."""
    if not isinstance(R, Polynomial):
        R = Polynomial(R)
    if R.degree >= len(M):
        raise MomentOrderError(R.degree, len(M))
    total = 0
    for r, j in zip(R.coeffs, M.moments):
        total += r * j
    return total


def poly_compose_affine(R: Polynomial | Sequence, a, b) -> Polynomial:
    """The polynomial ``x -> R(a x + b)``, expanded by the binomial theorem."""
    if not isinstance(R, Polynomial):
        R = Polynomial(R)
    out = [0] * len(R.coeffs)
    for n, r in enumerate(R.coeffs):
        if r == 0:
            continue
        row = pascal_row(n)
        for k in range(n + 1):
            out[k] += r * row[k] * a ** k * b ** (n - k)
    return Polynomial(out)
