"""Truncated Taylor series for analytic functions on the unit disk.

A :class:`PowerSeries` stores the coefficients ``a_0 .. a_N`` of
``f(z) = sum a_n z**n``.  Coefficients above ``N`` are unknown, not zero, so
every binary operation truncates to the smaller of the two orders.

Series of functions in the class B (``|f| <= 1`` on the disk) may carry
``TailClass.SCHUR_BOUND``, which records ``|a_n| <= 1 - |a_0|**2`` for
``n >= 1`` and lets the functionals certify their truncation error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_ORDER = 256

# Slack for rounding when checking the Schur coefficient bound.
_SCHUR_SLACK = 1e-12


class TailClass(enum.Enum):
    NONE = "none"
    SCHUR_BOUND = "schur_bound"


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients ``(a_0, ..., a_N)`` of a truncated Taylor expansion."""

    coeffs: np.ndarray
    tail_class: TailClass = TailClass.NONE

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.tail_class is TailClass.SCHUR_BOUND:
            a0 = abs(c[0])
            if a0 > 1 + _SCHUR_SLACK:
                raise ValueError(f"|a_0| = {a0} exceeds 1 for a class-B series")
            if c.size > 1:
                worst = np.max(np.abs(c[1:]))
                if worst > 1 - a0 * a0 + _SCHUR_SLACK:
                    raise ValueError(
                        f"coefficient modulus {worst} violates |a_n| <= 1 - |a_0|^2"
                    )

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        return f"PowerSeries(order={self.order}, tail_class={self.tail_class.value})"

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.tail_class is other.tail_class and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            m = min(self.order, other.order)
            return PowerSeries(self.coeffs[: m + 1] + other.coeffs[: m + 1])
        c = self.coeffs.copy()
        c[0] += other
        return PowerSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return multiply(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __call__(self, z):
        return evaluate(self, z)


@dataclass(frozen=True)
class MoebiusParam:
    """Parameter ``a`` of the disk automorphism ``(a - z) / (1 - a z)``."""

    a: float

    def __post_init__(self):
        if not (0.0 <= self.a < 1.0):
            raise ValueError(f"Moebius parameter must lie in [0, 1), got {self.a}")


@dataclass(frozen=True)
class BlaschkeSpec:
    """``rotation * [z] * prod (z - z_i) / (1 - conj(z_i) z)``."""

    zeros: tuple = ()
    rotation: complex = 1.0
    prepend_z: bool = False

    def __post_init__(self):
        zs = tuple(complex(z) for z in self.zeros)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "rotation", complex(self.rotation))
        for z in zs:
            if abs(z) >= 1:
                raise ValueError(f"Blaschke zero {z} is not inside the unit disk")
        if abs(abs(self.rotation) - 1.0) > 1e-12:
            raise ValueError(f"rotation {self.rotation} is not unimodular")

    @property
    def degree(self) -> int:
        return len(self.zeros) + int(self.prepend_z)


def _check_order(order):
    if int(order) != order or order < 0:
        raise ValueError(f"truncation order must be a non-negative integer, got {order}")
    return int(order)


def _truncated_product(a, b, m):
    return np.convolve(a[: m + 1], b[: m + 1])[: m + 1]


def constant_series(c, order=0) -> PowerSeries:
    coeffs = np.zeros(_check_order(order) + 1, dtype=complex)
    coeffs[0] = c
    tail = TailClass.SCHUR_BOUND if abs(c) <= 1 else TailClass.NONE
    return PowerSeries(coeffs, tail)


def identity_series(order=DEFAULT_ORDER) -> PowerSeries:
    order = _check_order(order)
    if order < 1:
        raise ValueError("identity series needs order >= 1")
    coeffs = np.zeros(order + 1, dtype=complex)
    coeffs[1] = 1.0
    return PowerSeries(coeffs, TailClass.SCHUR_BOUND)


def polynomial_series(coeffs: Sequence[complex], order=None) -> PowerSeries:
    """An exact polynomial, zero-padded up to ``order``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if order is None:
        order = coeffs.size - 1
    order = _check_order(order)
    if coeffs.size > order + 1 and np.any(coeffs[order + 1 :] != 0):
        raise ValueError("polynomial degree exceeds the requested order")
    padded = np.zeros(order + 1, dtype=complex)
    n = min(coeffs.size, order + 1)
    padded[:n] = coeffs[:n]
    return PowerSeries(padded)


def moebius_series(p, order=DEFAULT_ORDER) -> PowerSeries:
    """Taylor coefficients of ``(a - z) / (1 - a z)``.

    ``a_0 = a`` and ``a_n = -(1 - a**2) a**(n-1)`` for ``n >= 1``.
    """
    if not isinstance(p, MoebiusParam):
        p = MoebiusParam(float(p))
    order = _check_order(order)
    if order < 1:
        raise ValueError("moebius_series needs order >= 1")
    a = p.a
    coeffs = np.empty(order + 1, dtype=complex)
    coeffs[0] = a
    coeffs[1:] = -(1.0 - a * a) * a ** np.arange(order)
    return PowerSeries(coeffs, TailClass.SCHUR_BOUND)


def multiply(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    m = min(f.order, g.order)
    return PowerSeries(_truncated_product(f.coeffs, g.coeffs, m))


def compose(h: PowerSeries, phi: PowerSeries) -> PowerSeries:
    """Coefficients of ``h(phi(z))``; ``phi(0)`` must be exactly zero."""
    if phi.coeffs[0] != 0:
        raise ValueError("compose requires phi(0) == 0 exactly")
    m = min(h.order, phi.order)
    p = phi.coeffs[: m + 1]
    # Horner from the top non-zero coefficient; padded polynomials stay cheap
    nonzero = np.flatnonzero(h.coeffs[: m + 1])
    top = int(nonzero[-1]) if nonzero.size else 0
    out = np.zeros(m + 1, dtype=complex)
    out[0] = h.coeffs[top]
    for n in range(top - 1, -1, -1):
        out = _truncated_product(out, p, m)
        out[0] += h.coeffs[n]
    # h o phi stays in B whenever h is in B and phi is a Schwarz function
    tail = (
        TailClass.SCHUR_BOUND
        if h.tail_class is TailClass.SCHUR_BOUND and phi.tail_class is TailClass.SCHUR_BOUND
        else TailClass.NONE
    )
    return PowerSeries(out, tail)


def differentiate(f: PowerSeries) -> PowerSeries:
    if f.order == 0:
        return PowerSeries(np.zeros(1, dtype=complex))
    n = np.arange(1, f.order + 1)
    return PowerSeries(n * f.coeffs[1:])


def section(f: PowerSeries, k: int) -> PowerSeries:
    """Partial sum ``s_k(f) = sum_{n <= k} a_n z**n``."""
    if k < 0:
        raise ValueError(f"section index must be >= 0, got {k}")
    # dropping coefficients keeps each |a_n| bound but not membership in B
    return PowerSeries(f.coeffs[: min(k, f.order) + 1])


def blaschke_series(spec: BlaschkeSpec, order=DEFAULT_ORDER) -> PowerSeries:
    order = _check_order(order)
    coeffs = np.zeros(order + 1, dtype=complex)
    coeffs[0] = spec.rotation
    powers = np.arange(order + 1)
    for zi in spec.zeros:
        geometric = np.conj(zi) ** powers
        numerator = np.zeros(order + 1, dtype=complex)
        numerator[0] = -zi
        if order >= 1:
            numerator[1] = 1.0
        factor = _truncated_product(numerator, geometric, order)
        coeffs = _truncated_product(coeffs, factor, order)
    if spec.prepend_z:
        coeffs = np.concatenate(([0.0], coeffs[:-1]))
    return PowerSeries(coeffs, TailClass.SCHUR_BOUND)


def evaluate(f: PowerSeries, z):
    """Horner evaluation of the truncated polynomial at ``|z| < 1``.

    Accepts a scalar or an array of points.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("evaluation point must lie inside the unit disk")
    out = np.full(z.shape, f.coeffs[-1], dtype=complex)
    for c in f.coeffs[-2::-1]:
        out = out * z + c
    return out[()] if out.ndim == 0 else out
