"""The polynomials ``Q_n(p)`` and the logarithmic series of ``I_p``.

``Q_1 = 1 - p`` and ``Q_{n+1} = p (p - 1) Q_n'``.  They are the Taylor
coefficients of ``J(p, w) = log(p + (1-p) e^w)`` in ``w``, and summing
``J(p, w/2^n)`` over ``n`` gives

    log I_p(w) = sum_n Q_n(p) w^n / ((2^n - 1) n!).

Root locations are certified with exact Sturm sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

import mpmath

from ._mp import to_mp
from .errors import DomainError

__all__ = [
    "QPolynomial",
    "RootCertificate",
    "j_expansion",
    "j_resummation",
    "log_series_eval",
    "log_series_radius",
    "q_sequence",
    "root_certificate",
    "sturm_sequence",
    "count_roots",
]

#: Fraction of the convergence radius accepted by :func:`log_series_eval`.
RADIUS_SAFETY = 0.8
_SINGULAR_RTOL = 1e-15


@dataclass(frozen=True)
class QPolynomial:
    """``Q_n`` as integer coefficients in ascending powers of ``p``."""

    index: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, p):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * p + c
        return acc

    def derivative(self) -> tuple[int, ...]:
        return _derivative(self.coeffs)


def _derivative(cs):
    return tuple(k * c for k, c in enumerate(cs))[1:] or (0,)


def _times_p_pm1(cs):
    # p (p - 1) * sum c_k p^k = sum c_k (p^{k+2} - p^{k+1})
    out = [0] * (len(cs) + 2)
    for k, c in enumerate(cs):
        out[k + 2] += c
        out[k + 1] -= c
    return _trim(out)


def _trim(cs):
    cs = list(cs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@lru_cache(maxsize=None)
def _q_coeffs(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1, -1)
    return _times_p_pm1(_derivative(_q_coeffs(n - 1)))


def q_sequence(n_max: int) -> list[QPolynomial]:
    """``[Q_1, ..., Q_{n_max}]`` with exact integer coefficients."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    for n in range(1, n_max + 1):  # fill the cache bottom-up, no deep recursion
        _q_coeffs(n)
    return [QPolynomial(n, _q_coeffs(n)) for n in range(1, n_max + 1)]


# -- series ------------------------------------------------------------------


def log_series_radius(p) -> float:
    """Convergence radius ``2 |log((p-1)/p)|`` (principal branch); ``inf`` at ``p`` in {0, 1}."""
    with mpmath.workdps(30):
        p = to_mp(p)
        if p == 0 or p == 1:
            return math.inf
        return float(2 * abs(mpmath.log((p - 1) / p)))


def log_series_eval(p, omega, terms: int, digits: int = 15) -> complex:
    """Partial sum ``sum_{n<=terms} Q_n(p) w^n / ((2^n - 1) n!)``.

    Raises :class:`DomainError` unless ``|w|`` is within ``RADIUS_SAFETY``
    of the convergence radius.  The sum is accumulated with extra guard
    digits because ``Q_n`` has large alternating coefficients.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    radius = log_series_radius(p)
    if abs(complex(to_mp(omega))) >= RADIUS_SAFETY * radius:
        raise DomainError(
            f"|omega| = {abs(complex(to_mp(omega))):.6g} is outside the accepted disc "
            f"(radius {radius:.6g}, safety factor {RADIUS_SAFETY})"
        )
    qs = q_sequence(terms)
    with mpmath.workdps(digits + 10 + terms // 2):
        p, w = to_mp(p), to_mp(omega)
        acc = mpmath.mpf(0)
        power = mpmath.mpf(1)
        for q in qs:
            n = q.index
            power = power * w / n
            acc += q(p) * power / (2 ** n - 1)
        return complex(acc)


def j_expansion(p, omega) -> complex:
    """``J(p, w) = log(p + (1-p) e^w)`` on the principal branch.

    An argument that vanishes to within double-precision rounding of its two
    terms is treated as the singularity.
    """
    with mpmath.workdps(20):
        p, w = to_mp(p), to_mp(omega)
        second = (1 - p) * mpmath.exp(w)
        arg = p + second
        if abs(arg) <= _SINGULAR_RTOL * (abs(p) + abs(second)):
            raise DomainError("p + (1-p) e^w vanishes; log is singular here")
        return complex(mpmath.log(arg))


def j_resummation(p, omega, K: int = 40) -> complex:
    """``sum_{n=1}^{K} J(p, w / 2^n)``, which tends to ``log I_p(w)``."""
    total = 0j
    w = complex(to_mp(omega))
    for n in range(1, K + 1):
        total += j_expansion(p, w / 2 ** n)
    return total


# -- exact Sturm sequences ---------------------------------------------------


def _primitive(cs):
    """Scale by a positive rational to integer coefficients with unit content."""
    cs = [Fraction(c) for c in cs]
    den = reduce(math.lcm, (c.denominator for c in cs), 1)
    ints = [int(c * den) for c in cs]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return (0,)
    return _trim(i // g for i in ints)


def _rem(a, b):
    a = [Fraction(c) for c in a]
    lead = Fraction(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        shift = len(a) - 1 - db
        f = a[-1] / lead
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
    return _trim(a) if a else (0,)


def sturm_sequence(coeffs) -> list[tuple[int, ...]]:
    """Sturm chain of a polynomial given in ascending coefficients.

    Each member is rescaled by a positive constant (content stripping), which
    leaves all sign patterns unchanged.
    """
    p0 = _primitive(coeffs)
    if len(p0) == 1:
        return [p0]
    chain = [p0, _primitive(_derivative(p0))]
    while len(chain[-1]) > 1:
        r = _rem(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append(_primitive([-c for c in r]))
    return chain


def _eval(cs, x):
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _variations(chain, x) -> int:
    signs = [v > 0 for v in (_eval(c, x) for c in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(coeffs, a, b, chain=None) -> int:
    """Number of distinct real roots in the closed interval ``[a, b]``.

    ``V(a) - V(b)`` counts roots in ``(a, b]``; a root at ``a`` is added
    separately.
    """
    a, b = Fraction(a), Fraction(b)
    chain = chain if chain is not None else sturm_sequence(coeffs)
    n = _variations(chain, a) - _variations(chain, b)
    if _eval(chain[0], a) == 0:
        n += 1
    return n


@dataclass(frozen=True)
class RootCertificate:
    degree: int
    root_count_in_unit_interval: int
    all_simple: bool

    @property
    def all_roots_in_unit_interval(self) -> bool:
        return self.all_simple and self.root_count_in_unit_interval == self.degree


def root_certificate(Q: QPolynomial) -> RootCertificate:
    """Count roots of ``Q`` in ``[0, 1]`` and certify simplicity via ``gcd(Q, Q')``.

    The last member of the Sturm chain is ``gcd(Q, Q')`` up to a constant,
    so it has degree 0 exactly when every root is simple.
    """
    chain = sturm_sequence(Q.coeffs)
    simple = len(chain[-1]) == 1
    return RootCertificate(
        degree=Q.degree,
        root_count_in_unit_interval=count_roots(Q.coeffs, 0, 1, chain),
        all_simple=simple,
    )
