"""Brute-force integrators against ``mu_p`` that do not use any closed form.

A depth-``d`` dyadic cylinder fixes the first ``d`` binary digits and has
mass ``prod p^{1-x_i} (1-p)^{x_i}``.  :func:`dyadic_integrate` sums
``weight * f(midpoint)`` over all ``2^d`` cylinders; :func:`mc_integrate`
averages ``f`` over random points whose digits are independent biased bits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

import numpy as np

from .errors import DomainError, ResourceError
from .measure_core import MeasureParam

__all__ = [
    "MAX_DEPTH",
    "MAX_EXACT_DEPTH",
    "DyadicCylinder",
    "MonteCarloResult",
    "OracleResult",
    "cylinder_weights",
    "cylinders",
    "dyadic_integrate",
    "dyadic_split",
    "mc_integrate",
]

MAX_DEPTH = 26
MAX_EXACT_DEPTH = 20
_BLOCK_BITS = 18
_MC_CHUNK = 65536


@dataclass(frozen=True)
class DyadicCylinder:
    bits: tuple[int, ...]
    weight: object

    @property
    def depth(self) -> int:
        return len(self.bits)

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        left = Fraction(int("".join(map(str, self.bits)) or "0", 2), 2 ** self.depth)
        return left, left + Fraction(1, 2 ** self.depth)

    @property
    def midpoint(self) -> Fraction:
        a, b = self.interval
        return (a + b) / 2


def cylinders(p, depth: int) -> Iterator[DyadicCylinder]:
    """All depth-``depth`` cylinders in left-to-right order."""
    if depth > MAX_EXACT_DEPTH:
        raise ResourceError(f"enumerating cylinders is limited to depth {MAX_EXACT_DEPTH}")
    p = _value(p)
    q = 1 - p
    for bits in itertools.product((0, 1), repeat=depth):
        ones = sum(bits)
        yield DyadicCylinder(bits, p ** (depth - ones) * q ** ones)


def _value(p):
    p = MeasureParam.coerce(p).value
    return p


def cylinder_weights(p, depth: int):
    """Masses of the ``2^depth`` cylinders, index ``k`` having digits = binary of ``k``.

    Exact ``p`` yields a list of ``Fraction``; floating ``p`` a numpy array.
    """
    p = _value(p)
    if isinstance(p, Fraction):
        if depth > MAX_EXACT_DEPTH:
            raise ResourceError(f"exact weights are limited to depth {MAX_EXACT_DEPTH}")
        num, den = _exact_weight_numerators(p, depth)
        return [Fraction(n, den) for n in num]
    if depth > MAX_DEPTH:
        raise ResourceError(f"depth {depth} exceeds the supported maximum {MAX_DEPTH}")
    return _float_weights(p, depth)


def _exact_weight_numerators(p: Fraction, depth: int) -> tuple[list[int], int]:
    a, b = p.numerator, p.denominator
    c = b - a
    num = [1]
    for _ in range(depth):
        num = [x * f for x in num for f in (a, c)]
    return num, b ** depth


def _float_weights(p, depth: int) -> np.ndarray:
    dtype = complex if isinstance(p, complex) else float
    w = np.ones(1, dtype=dtype)
    pair = np.array([p, 1 - p], dtype=dtype)
    for _ in range(depth):
        w = np.outer(w, pair).ravel()
    return w


def _apply(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x))
    except (TypeError, ValueError):
        y = None
    if y is None or y.shape != x.shape:
        y = np.vectorize(f, otypes=[complex])(x)
        if np.all(y.imag == 0):
            y = y.real
    return y


@dataclass(frozen=True)
class OracleResult:
    value: object
    error_bound: float
    depth: int
    bound_estimated: bool = False


def _modulus_bound(f, depth, lipschitz, modulus) -> tuple[float, bool]:
    h = 2.0 ** (-depth - 1)
    if lipschitz is not None:
        return float(lipschitz) * h, False
    if modulus is not None:
        return float(modulus(h)), False
    grid = np.linspace(0.0, 1.0, 4097)
    vals = _apply(f, grid)
    slope = float(np.max(np.abs(np.diff(vals))) / (grid[1] - grid[0]))
    return slope * h, True


def dyadic_integrate(
    f: Callable,
    p,
    depth: int,
    *,
    lipschitz: Optional[float] = None,
    modulus: Optional[Callable[[float], float]] = None,
    exact: bool = False,
) -> OracleResult:
    """``sum_k weight_k f(midpoint_k)`` over the depth-``depth`` cylinders.

    The error bound is ``omega_f(2^{-depth-1})`` where ``omega_f`` is the
    modulus of continuity: ``lipschitz * h`` if a Lipschitz constant is
    given, ``modulus(h)`` if a modulus is given, otherwise a slope estimate
    from a 4097-point grid (flagged ``bound_estimated``).

    ``exact=True`` requires rational ``p`` and calls ``f`` one ``Fraction``
    midpoint at a time, so an exact ``f`` gives an exact sum.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    pv = _value(p)
    if exact:
        if not isinstance(pv, Fraction):
            raise DomainError("exact dyadic integration needs a rational p")
        if depth > MAX_EXACT_DEPTH:
            raise ResourceError(f"exact dyadic integration is limited to depth {MAX_EXACT_DEPTH}")
        num, den = _exact_weight_numerators(pv, depth)
        scale = 2 ** (depth + 1)
        total = sum(n * f(Fraction(2 * k + 1, scale)) for k, n in enumerate(num))
        bound, est = (0.0, False) if lipschitz is None and modulus is None else _modulus_bound(f, depth, lipschitz, modulus)
        return OracleResult(total * Fraction(1, den), bound, depth, est)
    if depth > MAX_DEPTH:
        raise ResourceError(f"depth {depth} exceeds the supported maximum {MAX_DEPTH}")
    if isinstance(pv, Fraction):
        pv = float(pv)
    low = min(depth, _BLOCK_BITS)
    high = depth - low
    w_low = _float_weights(pv, low)
    w_high = _float_weights(pv, high)
    offsets = (np.arange(2 ** low, dtype=float) * 2 + 1) / 2.0 ** (depth + 1)
    block_width = 2.0 ** -high
    total = 0.0
    for i, wh in enumerate(w_high):
        x = i * block_width + offsets
        total = total + wh * np.dot(w_low, _apply(f, x))
    bound, est = _modulus_bound(f, depth, lipschitz, modulus)
    return OracleResult(total.item() if hasattr(total, "item") else total, bound, depth, est)


def dyadic_split(f: Callable, p, depth: int):
    """First-digit decomposition of the exact depth-``depth`` sum.

    Returns ``(left, right)`` with
    ``left = p * S_{depth-1}[f(x/2)]`` and ``right = (1-p) * S_{depth-1}[f((1+x)/2)]``;
    their total equals ``dyadic_integrate(f, p, depth, exact=True).value``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    pv = _value(p)
    left = dyadic_integrate(lambda x: f(x / 2), pv, depth - 1, exact=True).value
    right = dyadic_integrate(lambda x: f((1 + x) / 2), pv, depth - 1, exact=True).value
    return pv * left, (1 - pv) * right


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    std_error: float
    samples: int


def mc_integrate(f: Callable, p, samples: int, seed: int, digits: int = 53) -> MonteCarloResult:
    """Monte-Carlo mean of ``f(X)``, ``X = sum b_i 2^-i`` with ``P(b_i = 1) = 1 - p``.

    Randomness comes from numpy's PCG64 generator seeded with ``seed`` and is
    consumed in fixed-size chunks, so results are reproducible bit for bit.
    """
    pv = float(_value(p))
    if not 0 < pv < 1:
        raise DomainError(f"Monte-Carlo sampling needs 0 < p < 1, got {pv}")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    place = 2.0 ** -np.arange(1, digits + 1)
    total = 0.0
    total_sq = 0.0
    remaining = samples
    while remaining:
        n = min(remaining, _MC_CHUNK)
        bits = rng.random((n, digits)) < (1 - pv)
        x = bits @ place
        y = np.asarray(_apply(f, x), dtype=float)
        total += float(y.sum())
        total_sq += float((y * y).sum())
        remaining -= n
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return MonteCarloResult(mean, float(np.sqrt(var / samples)), samples)
