"""Scalar functionals of a truncated series evaluated at radius ``r``.

Every series functional here is a sum of non-negative terms, so the truncated
value is a lower bound and ``tail_bound`` (when available) bounds the
neglected remainder from above.  ``tail_bound`` is ``None`` when the series
carries no coefficient bound to certify it.

The ``moebius_*`` functions give the same quantities in closed form for
``(a - z) / (1 - a z)``; they are exact, so their ``tail_bound`` is 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .series import PowerSeries, TailClass

AREA_WEIGHT_A = 8.0 / 9.0
AREA_WEIGHT_B = 9.0 / 8.0


@dataclass(frozen=True)
class FunctionalValue:
    value: float
    tail_bound: Optional[float]
    terms_used: int

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"functional value is not finite: {self.value}")
        if self.tail_bound is not None and not self.tail_bound >= 0:
            raise ValueError(f"tail bound must be non-negative, got {self.tail_bound}")

    @property
    def upper(self) -> float:
        """Certified upper bound on the untruncated value."""
        if self.tail_bound is None:
            return self.value
        return self.value + self.tail_bound


def _check_radius(r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r >= 1) or np.any(~np.isfinite(r)):
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    return r


def _powers(r, n):
    # rows are radii, columns are exponents 0..n-1 (0**0 == 1 as required)
    return np.atleast_1d(r)[:, None] ** np.arange(n)[None, :]


def _schur_gap(f):
    if f.tail_class is not TailClass.SCHUR_BOUND:
        return None
    return max(0.0, 1.0 - abs(f.coeffs[0]) ** 2)


# Vectorised kernels: ``r`` is a 1-d array, results are arrays of the same length.
# Tails are ``None`` when the series has no Schur bound.


def bohr_sum_grid(f: PowerSeries, r):
    r = np.atleast_1d(_check_radius(r))
    mags = np.abs(f.coeffs)
    values = _powers(r, mags.size) @ mags
    gap = _schur_gap(f)
    if gap is None:
        return values, None
    n = f.order
    return values, gap * r ** (n + 1) / (1 - r)


def refined_norm_sq_grid(f: PowerSeries, r):
    r = np.atleast_1d(_check_radius(r))
    sq = np.abs(f.coeffs) ** 2
    sq[0] = 0.0
    values = _powers(r * r, sq.size) @ sq
    gap = _schur_gap(f)
    if gap is None:
        return values, None
    n = f.order
    return values, gap**2 * r ** (2 * (n + 1)) / (1 - r * r)


def area_ratio_grid(f: PowerSeries, r):
    r = np.atleast_1d(_check_radius(r))
    weighted = np.arange(f.coeffs.size) * np.abs(f.coeffs) ** 2
    values = _powers(r * r, weighted.size) @ weighted
    gap = _schur_gap(f)
    if gap is None:
        return values, None
    m = f.order + 1
    x = r * r
    # sum_{n >= m} n x^n = x^m (m - (m - 1) x) / (1 - x)^2
    return values, gap**2 * x**m * (m - (m - 1) * x) / (1 - x) ** 2


def _composite(lead, lead_tail, f, r, area_weight, quad_weight):
    norm, norm_t = refined_norm_sq_grid(f, r)
    area, area_t = area_ratio_grid(f, r)
    a0 = abs(f.coeffs[0])
    weight = 1.0 / (1.0 + a0) + r / (1.0 - r)
    values = lead + weight * norm + area_weight * area + quad_weight * area**2
    if lead_tail is None or norm_t is None or area_t is None:
        return values, None
    tails = (
        lead_tail
        + weight * norm_t
        + area_weight * area_t
        + quad_weight * (2 * area * area_t + area_t**2)
    )
    return values, tails


def functional_A_grid(f: PowerSeries, r, lam: float):
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    r = np.atleast_1d(_check_radius(r))
    bohr, bohr_t = bohr_sum_grid(f, r)
    return _composite(bohr, bohr_t, f, r, AREA_WEIGHT_A, lam)


def functional_B_grid(f: PowerSeries, r, mu: float):
    if mu < 0:
        raise ValueError(f"mu must be non-negative, got {mu}")
    r = np.atleast_1d(_check_radius(r))
    bohr, bohr_t = bohr_sum_grid(f, r)
    a0 = abs(f.coeffs[0])
    lead = bohr - a0 + a0 * a0
    return _composite(lead, bohr_t, f, r, AREA_WEIGHT_B, mu)


def _scalar(grid_fn, f, r, *args):
    _check_radius(r)
    values, tails = grid_fn(f, np.array([float(r)]), *args)
    tail = None if tails is None else float(tails[0])
    return FunctionalValue(float(values[0]), tail, f.coeffs.size)


def bohr_sum(f: PowerSeries, r: float) -> FunctionalValue:
    """Bohr majorant ``sum |a_n| r**n``."""
    return _scalar(bohr_sum_grid, f, r)


def refined_norm_sq(f: PowerSeries, r: float) -> FunctionalValue:
    """``||f - a_0||_r^2 = sum_{n >= 1} |a_n|**2 r**(2n)``."""
    return _scalar(refined_norm_sq_grid, f, r)


def area_ratio(f: PowerSeries, r: float) -> FunctionalValue:
    """Normalised area of the image of ``|z| < r``: ``sum n |a_n|**2 r**(2n)``."""
    return _scalar(area_ratio_grid, f, r)


def functional_A(f: PowerSeries, r: float, lam: float) -> FunctionalValue:
    """Bohr sum plus the quadratic, area and squared-area refinements.

    Weights are ``1/(1+|a_0|) + r/(1-r)`` on the quadratic norm, ``8/9`` on
    the area ratio and ``lam`` on its square.
    """
    return _scalar(functional_A_grid, f, r, lam)


def functional_B(f: PowerSeries, r: float, mu: float) -> FunctionalValue:
    """As :func:`functional_A` with ``|a_0|**2`` leading and weight ``9/8``."""
    return _scalar(functional_B_grid, f, r, mu)


# Closed forms on the extremal family (a - z) / (1 - a z).


def _closed(value):
    return FunctionalValue(float(value), 0.0, 0)


def _check_moebius(a, r):
    if not 0 <= a < 1:
        raise ValueError(f"Moebius parameter must lie in [0, 1), got {a}")
    _check_radius(r)


def moebius_bohr_sum(a: float, r: float) -> FunctionalValue:
    _check_moebius(a, r)
    return _closed(a + (1 - a * a) * r / (1 - a * r))


def moebius_refined_norm_sq(a: float, r: float) -> FunctionalValue:
    _check_moebius(a, r)
    return _closed((1 - a * a) ** 2 * r * r / (1 - a * a * r * r))


def moebius_area_ratio(a: float, r: float) -> FunctionalValue:
    _check_moebius(a, r)
    return _closed(_moebius_area(a, r))


def _moebius_area(a, r):
    return (1 - a * a) ** 2 * r * r / (1 - a * a * r * r) ** 2


def moebius_functional_A(a: float, r: float, lam: float) -> FunctionalValue:
    _check_moebius(a, r)
    s = _moebius_area(a, r)
    # Bohr sum and weighted quadratic norm combine to (1 - a^2) r / (1 - r)
    return _closed(a + (1 - a * a) * r / (1 - r) + AREA_WEIGHT_A * s + lam * s * s)


def moebius_functional_B(a: float, r: float, mu: float) -> FunctionalValue:
    _check_moebius(a, r)
    s = _moebius_area(a, r)
    return _closed(a * a + (1 - a * a) * r / (1 - r) + AREA_WEIGHT_B * s + mu * s * s)


def area_bound(a0_abs: float, r):
    """Upper bound ``r^2 (1 - |a_0|^2)^2 / (1 - |a_0|^2 r^2)^2`` on the area ratio."""
    return _moebius_area(a0_abs, np.asarray(r, dtype=float))


def _check_unit(x):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"argument must lie in [0, 1], got {x}")


def radius_r0(x: float) -> float:
    """``1 - sqrt((1 + x) / (2 + x))``, the Bohr radius for derivatives of Schwarz maps."""
    _check_unit(x)
    return 1.0 - math.sqrt((1.0 + x) / (2.0 + x))


def radius_r1(x: float) -> float:
    _check_unit(x)
    if x < 0.5:
        return math.sqrt((1.0 - x) / 2.0)
    return 1.0 / (1.0 + 2.0 * x)
