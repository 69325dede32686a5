"""The entire function ``I_p(w) = int e^{w x} dmu_p`` on complex ``(p, w)``.

Three evaluation routes are provided:

* :func:`ip_product` truncates ``prod_{n>=1} (p + (1-p) e^{w/2^n})``;
* :func:`ip_taylor` sums ``J_N w^N / N!`` using the moment recurrence;
* :func:`ip_reduce` peels factors with ``I_p(w) = (p + (1-p)e^{w/2}) I_p(w/2)``
  and finishes with a short Taylor sum.

The ``residual_*`` functions measure how far the product route is from
satisfying each functional identity of ``I_p``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import mpmath

from ._mp import to_mp
from .errors import ConditioningError, DomainError
from .measure_core import MeasureParam, moments_recurrence

__all__ = [
    "PRECISION_ENV_VAR",
    "ComplexPoint",
    "DEFAULT_GRID",
    "RECIPROCAL_GRID",
    "EvalConfig",
    "IdentityCheck",
    "fourier_coefficient",
    "identity_report",
    "ip_product",
    "ip_reduce",
    "ip_taylor",
    "product_truncation",
    "residual_functional",
    "residual_param_split",
    "residual_reciprocal",
    "residual_remark1",
    "residual_symmetry",
]

#: Environment variable overriding the default working precision (decimal digits).
PRECISION_ENV_VAR = "BERNMEASURE_DPS"


def _default_digits() -> int:
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return 15
    try:
        digits = int(raw)
    except ValueError:
        raise ValueError(f"{PRECISION_ENV_VAR} must be a positive integer, got {raw!r}") from None
    if digits < 1:
        raise ValueError(f"{PRECISION_ENV_VAR} must be a positive integer, got {raw!r}")
    return digits


@dataclass(frozen=True)
class EvalConfig:
    """Truncation and precision settings for approximate evaluations.

    ``precision_digits=15`` is plain double precision; larger values switch
    the internal arithmetic to that many significant digits.
    """

    product_tol: float = 1e-17
    taylor_terms: int = 60
    reduce_depth: int = 20
    precision_digits: int = field(default_factory=_default_digits)

    def __post_init__(self):
        if not self.product_tol > 0:
            raise ValueError("product_tol must be positive")
        if self.taylor_terms < 1:
            raise ValueError("taylor_terms must be >= 1")
        if self.reduce_depth < 1:
            raise ValueError("reduce_depth must be >= 1")
        if self.precision_digits < 1:
            raise ValueError("precision_digits must be >= 1")


@dataclass(frozen=True)
class ComplexPoint:
    p: complex
    omega: complex

    def __post_init__(self):
        for name in ("p", "omega"):
            v = complex(to_mp(getattr(self, name)))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite")


def _cfg(cfg: EvalConfig | None) -> EvalConfig:
    return cfg if cfg is not None else EvalConfig()


def _unwrap(p):
    return p.value if isinstance(p, MeasureParam) else p


# -- product route -----------------------------------------------------------


def product_truncation(p, omega, tol: float) -> int:
    """Number of factors needed so the product's relative tail is below ``tol``.

    Each factor is ``1 + x_n`` with ``|x_n| <= 2^-n C``,
    ``C = |p - 1| (e^{|w|} - 1)``; since ``|log(1+x)| ~ |x|`` the tail of
    the log-sum is bounded by ``2^-M C``, so ``M`` is the least integer with
    ``2^-M C <= tol``.
    """
    with mpmath.workdps(20):
        p, omega = to_mp(p), to_mp(omega)
        a = abs(omega)
        c = abs(p - 1) * mpmath.expm1(a)
        if c == 0:
            return 0
        m = mpmath.ceil(mpmath.log(c / tol, 2))
    return max(1, int(m))


def _factor(p, w):
    return p + (1 - p) * mpmath.exp(w)


def _product(p, omega, tol):
    m = product_truncation(p, omega, tol)
    acc = mpmath.mpf(1)
    scale = mpmath.mpf(1)
    for _ in range(m):
        scale /= 2
        acc *= _factor(p, omega * scale)
    return acc


def ip_product(p, omega, cfg: EvalConfig | None = None) -> complex:
    """``I_p(w)`` from the truncated infinite product."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        return complex(_product(to_mp(_unwrap(p)), to_mp(omega), cfg.product_tol))


# -- Taylor route ------------------------------------------------------------


@lru_cache(maxsize=256)
def _moments_mp(p, terms: int, digits: int) -> tuple:
    return moments_recurrence(p, terms, digits=digits).moments


def _taylor(p, omega, terms: int):
    moments = _moments_mp(p, terms, mpmath.mp.dps)
    acc = mpmath.mpf(0)
    power = mpmath.mpf(1)
    for n, j in enumerate(moments):
        if n:
            power = power * omega / n
        acc += j * power
    return acc


def ip_taylor(p, omega, cfg: EvalConfig | None = None) -> complex:
    """``sum_{N=0}^{taylor_terms} J_N w^N / N!``; complex ``p`` runs the recurrence in complex arithmetic."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        return complex(_taylor(to_mp(_unwrap(p)), to_mp(omega), cfg.taylor_terms))


def _reduce(p, omega, depth: int, terms: int):
    acc = mpmath.mpf(1)
    scale = mpmath.mpf(1)
    for _ in range(depth):
        scale /= 2
        acc *= _factor(p, omega * scale)
    return acc * _taylor(p, omega * scale, terms)


def ip_reduce(p, omega, cfg: EvalConfig | None = None) -> complex:
    """Halve the argument ``reduce_depth`` times, then use ``taylor_terms`` Taylor terms."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        return complex(_reduce(to_mp(_unwrap(p)), to_mp(omega), cfg.reduce_depth, cfg.taylor_terms))


# -- identity residuals ------------------------------------------------------


def residual_functional(p, omega, cfg: EvalConfig | None = None) -> float:
    """``|I_p(w) - (p + (1-p)e^{w/2}) I_p(w/2)|``."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        p, w = to_mp(_unwrap(p)), to_mp(omega)
        lhs = _product(p, w, cfg.product_tol)
        rhs = _factor(p, w / 2) * _product(p, w / 2, cfg.product_tol)
        return float(abs(lhs - rhs))


def residual_symmetry(p, omega, cfg: EvalConfig | None = None) -> float:
    """``|I_p(-w) - e^{-w} I_{1-p}(w)|``."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        p, w = to_mp(_unwrap(p)), to_mp(omega)
        lhs = _product(p, -w, cfg.product_tol)
        rhs = mpmath.exp(-w) * _product(1 - p, w, cfg.product_tol)
        return float(abs(lhs - rhs))


def residual_reciprocal(p, omega, M: int = 30, cfg: EvalConfig | None = None) -> float:
    """``|prod_{m<=M} I_{exp(p/2^m)}(w) - prod_{m<=M} I_{exp(w/2^m)}(p)|``.

    Both sides converge as ``M`` grows because their factors tend to
    ``I_1(.) = 1``; the truncation error of either side is about
    ``|p w| 2^-M`` relative.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        p, w = to_mp(_unwrap(p)), to_mp(omega)
        lhs = mpmath.mpf(1)
        rhs = mpmath.mpf(1)
        for m in range(1, M + 1):
            s = mpmath.mpf(2) ** -m
            lhs *= _product(mpmath.exp(p * s), w, cfg.product_tol)
            rhs *= _product(mpmath.exp(w * s), p, cfg.product_tol)
        return float(abs(lhs - rhs))


def _check_split_param(p) -> None:
    if 2 * p - 1 == 0:
        raise DomainError("p = 1/2 makes 2p - 1 vanish; the parameter-splitting identity is undefined")


def residual_param_split(p, omega, cfg: EvalConfig | None = None) -> float:
    """``|I_p(w/2) I_{p/(2p-1)}(w/2) - I_{p^2/(2p-1)}(w)|`` for ``p != 1/2``."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        p, w = to_mp(_unwrap(p)), to_mp(omega)
        _check_split_param(p)
        d = 2 * p - 1
        lhs = _product(p, w / 2, cfg.product_tol) * _product(p / d, w / 2, cfg.product_tol)
        rhs = _product(p * p / d, w, cfg.product_tol)
        return float(abs(lhs - rhs))


def residual_remark1(p, omega, cfg: EvalConfig | None = None, min_denominator: float = 1e-14) -> float:
    """Residual of ``I_p(w) = (p+(1-p)e^{w/2}) I_{p^2/(2p-1)}(w) / I_{p/(2p-1)}(w/2)``."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        p, w = to_mp(_unwrap(p)), to_mp(omega)
        _check_split_param(p)
        d = 2 * p - 1
        denom = _product(p / d, w / 2, cfg.product_tol)
        if abs(denom) < min_denominator:
            raise ConditioningError(
                f"I_(p/(2p-1))(w/2) = {complex(denom)} is too close to zero"
            )
        rhs = _factor(p, w / 2) * _product(p * p / d, w, cfg.product_tol) / denom
        return float(abs(_product(p, w, cfg.product_tol) - rhs))


def fourier_coefficient(p, k: int, cfg: EvalConfig | None = None) -> complex:
    """Trigonometric Fourier coefficient ``I_p(2 pi i k)``."""
    cfg = _cfg(cfg)
    with mpmath.workdps(cfg.precision_digits):
        w = 2j * mpmath.pi * int(k)
        return complex(_product(to_mp(_unwrap(p)), w, cfg.product_tol))


# -- grid report -------------------------------------------------------------

GRID_P = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1 + 0.5j, 1 - 0.5j)
GRID_OMEGA = (1, -1, 4, -4, 2j, 3 + 2j)
DEFAULT_GRID = tuple((p, w) for p in GRID_P for w in GRID_OMEGA)
# The reciprocal identity at finite M is off by roughly |p w| 2^-M, so with
# M = 30 it is checked on small arguments only.
RECIPROCAL_GRID = ((0.5, 0.5), (0.3, 0.7), (1 + 1j, 1 - 1j), (0.2, 0.1), (0.5j, 0.25))

SUITES = ("functional", "symmetry", "reciprocal", "split", "remark1")
SUITE_TOLERANCE = {
    "functional": 1e-10,
    "symmetry": 1e-10,
    "reciprocal": 1e-8,
    "split": 1e-10,
    "remark1": 1e-10,
}


@dataclass(frozen=True)
class IdentityCheck:
    suite: str
    p: complex
    omega: complex
    residual: float | None
    tolerance: float
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.residual is not None and self.residual < self.tolerance

    @property
    def skipped(self) -> bool:
        return self.residual is None


def identity_report(
    suites: Iterable[str] = SUITES,
    grid: Iterable[tuple] | None = None,
    cfg: EvalConfig | None = None,
    reciprocal_terms: int = 30,
) -> list[IdentityCheck]:
    """Evaluate each identity residual over ``grid``.

    ``grid=None`` uses :data:`DEFAULT_GRID`, except for the reciprocal suite
    which then uses :data:`RECIPROCAL_GRID`.  Points where an identity is
    undefined (``p = 1/2`` for the splitting identities, vanishing
    denominators) are reported as skipped.
    """
    cfg = _cfg(cfg)
    funcs = {
        "functional": residual_functional,
        "symmetry": residual_symmetry,
        "reciprocal": lambda p, w, c: residual_reciprocal(p, w, reciprocal_terms, c),
        "split": residual_param_split,
        "remark1": residual_remark1,
    }
    fixed = list(grid) if grid is not None else None
    out = []
    for suite in suites:
        if suite not in funcs:
            raise ValueError(f"unknown suite {suite!r}")
        if fixed is not None:
            points = fixed
        else:
            points = RECIPROCAL_GRID if suite == "reciprocal" else DEFAULT_GRID
        for p, w in points:
            tol = SUITE_TOLERANCE[suite]
            try:
                r = funcs[suite](p, w, cfg)
            except (DomainError, ConditioningError) as exc:
                out.append(IdentityCheck(suite, complex(p), complex(w), None, tol, str(exc)))
                continue
            out.append(IdentityCheck(suite, complex(p), complex(w), r, tol))
    return out
