"""Sweeps and seeded Monte-Carlo suites for each inequality.

Every suite evaluates ``lhs <= rhs`` on a deterministic family (the extremal
Moebius maps or simple Schwarz maps) and on ``grid.samples`` random draws.
A point counts as a violation when ``lhs - rhs`` exceeds ``1e-9`` plus the
certified truncation tail at that point.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import functionals as fn
from .constants import constant_for
from .sampling import (
    blaschke_sample,
    class_b_sample,
    random_index,
    random_polynomial,
    schwarz_sample,
)
from .series import (
    DEFAULT_ORDER,
    BlaschkeSpec,
    PowerSeries,
    blaschke_series,
    compose,
    constant_series,
    differentiate,
    identity_series,
    moebius_series,
    multiply,
    polynomial_series,
    section,
)

TOLERANCE = 1e-9
BOUNDARY_POINTS = 720

R2 = 1.0 - math.sqrt(2.0 / 3.0)
THM3_PART1_CAP = 0.5 * R2
THM3_PART2_CAP = R2 / 3.0
THM6_CAP = R2 / 3.0
THM7_CAP = R2
LEMMA1_R_MAX = 0.9
LEMMA2_CAP = 1.0 / math.sqrt(2.0)

LEMMA1_N = (1, 2, 3, 4, 5)
LEMMA4_J = (1, 2, 3)
LEMMA4_K = (0, 1, 2, 5, 10)
THM3_MAX_K = 12


@dataclass(frozen=True)
class SweepGrid:
    """Parameter lattice and Monte-Carlo settings shared by the suites.

    When ``r_hi`` is ``None`` each suite sweeps ``r_n`` points up to its own
    radius cap; an explicit ``r_hi`` above the cap is clipped to it.
    """

    a_lo: float = 0.0
    a_hi: float = 0.95
    a_n: int = 200
    r_lo: Optional[float] = None
    r_hi: Optional[float] = None
    r_n: int = 100
    samples: int = 1000
    seed: int = 42
    truncation: int = DEFAULT_ORDER
    tolerance: float = TOLERANCE

    def __post_init__(self):
        if not (0.0 <= self.a_lo <= self.a_hi < 1.0):
            raise ValueError(f"a-range must satisfy 0 <= lo <= hi < 1, got [{self.a_lo}, {self.a_hi}]")
        for v in (self.r_lo, self.r_hi):
            if v is not None and not 0.0 <= v < 1.0:
                raise ValueError(f"r-range endpoints must lie in [0, 1), got {v}")
        if self.r_lo is not None and self.r_hi is not None and self.r_lo > self.r_hi:
            raise ValueError("r-range lower end exceeds upper end")
        if self.a_n < 1 or self.r_n < 1:
            raise ValueError("grid counts must be >= 1")
        if self.samples < 0:
            raise ValueError("sample count must be >= 0")
        if self.truncation < 1:
            raise ValueError("truncation order must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def a_values(self) -> np.ndarray:
        if self.a_n == 1:
            return np.array([self.a_lo if self.a_lo == self.a_hi else self.a_hi])
        return np.linspace(self.a_lo, self.a_hi, self.a_n)

    def r_values(self, cap: float) -> np.ndarray:
        hi = cap if self.r_hi is None else min(self.r_hi, cap)
        lo = hi / self.r_n if self.r_lo is None else min(self.r_lo, hi)
        if self.r_n == 1:
            return np.array([hi])
        return np.linspace(lo, hi, self.r_n)


@dataclass
class Violation:
    params: dict
    value: float
    bound: float
    tolerance: float

    @property
    def excess(self) -> float:
        return self.value - self.bound


@dataclass
class InequalityReport:
    target: str
    max_value: float
    bound_at_argmax: float
    argmax: dict
    margin: float
    violations: list
    checks: int
    seed: int
    truncation: int
    samples: int
    details: dict = field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class RadiusEstimate:
    radius: float
    bracket: tuple
    family: str
    functional: str
    members: int


class _Tracker:
    """Accumulates the tightest point and all violations of ``lhs <= rhs``."""

    def __init__(self, tolerance=TOLERANCE):
        self.tolerance = tolerance
        self.margin = math.inf
        self.max_value = math.nan
        self.bound = math.nan
        self.argmax = {}
        self.violations = []
        self.checks = 0

    def observe(self, lhs, rhs, tail, r, params, kind=None):
        lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
        rhs = np.broadcast_to(np.asarray(rhs, dtype=float), lhs.shape)
        r = np.broadcast_to(np.asarray(r, dtype=float), lhs.shape)
        tol = self.tolerance + (0.0 if tail is None else np.broadcast_to(tail, lhs.shape))
        tol = np.broadcast_to(tol, lhs.shape)
        gaps = rhs - lhs
        self.checks += lhs.size
        i = int(np.argmin(gaps))
        if gaps[i] < self.margin:
            self.margin = float(gaps[i])
            self.max_value = float(lhs[i])
            self.bound = float(rhs[i])
            self.argmax = {**params, "r": float(r[i])}
            if kind:
                self.argmax["check"] = kind
        for i in np.flatnonzero(-gaps > tol):
            p = {**params, "r": float(r[i])}
            if kind:
                p["check"] = kind
            self.violations.append(Violation(p, float(lhs[i]), float(rhs[i]), float(tol[i])))

    def report(self, target, grid, start, details=None):
        return InequalityReport(
            target=target,
            max_value=self.max_value,
            bound_at_argmax=self.bound,
            argmax=self.argmax,
            margin=self.margin,
            violations=self.violations,
            checks=self.checks,
            seed=grid.seed,
            truncation=grid.truncation,
            samples=grid.samples,
            details=details or {},
            wall_time=time.perf_counter() - start,
        )


def _with_point(values, point, lo, hi):
    if lo <= point <= hi:
        values = np.union1d(values, [point])
    return values


def _derivative_tail(coeff_bound, n_terms, r):
    """Bound on ``sum_{n >= N} (n + 1) C r^n`` dropped from a derivative's Bohr sum.

    ``coeff_bound`` bounds every Taylor coefficient of the undifferentiated
    function; ``n_terms`` is the number of derivative coefficients kept.
    """
    r = np.asarray(r, dtype=float)
    n = n_terms
    return coeff_bound * r**n * (n + 1 - n * r) / (1 - r) ** 2


def _boundary_sup(p: PowerSeries, r):
    """``max |p(z)|`` over ``BOUNDARY_POINTS`` equispaced points of each circle ``|z| = r``."""
    theta = np.exp(2j * np.pi * np.arange(BOUNDARY_POINTS) / BOUNDARY_POINTS)
    z = np.atleast_1d(r)[:, None] * theta[None, :]
    acc = np.full(z.shape, p.coeffs[-1], dtype=complex)
    for c in p.coeffs[-2::-1]:
        acc = acc * z + c
    return np.abs(acc).max(axis=1)


def _section_boundary_sups(p: PowerSeries, r, ks):
    """:func:`_boundary_sup` of every section ``s_k(p)``, ``k`` in ``ks``, in one pass."""
    theta = np.exp(2j * np.pi * np.arange(BOUNDARY_POINTS) / BOUNDARY_POINTS)
    z = np.atleast_1d(r)[:, None] * theta[None, :]
    top = min(max(ks), p.order)
    partial = np.zeros(z.shape, dtype=complex)
    zn = np.ones(z.shape, dtype=complex)
    sups = {}
    for n in range(top + 1):
        partial = partial + p.coeffs[n] * zn
        zn = zn * z
        if n in ks:
            sups[n] = np.abs(partial).max(axis=1)
    for k in ks:
        if k > top:
            sups[k] = sups.get(top, np.abs(partial).max(axis=1))
    return sups


def _sharp_lambda():
    return constant_for("psi")


def _sharp_mu():
    return constant_for("phi")


# ---------------------------------------------------------------------------
# Refined Bohr inequalities with area terms


def verify_theorem1(grid: SweepGrid = SweepGrid(), lam: Optional[float] = None) -> InequalityReport:
    """``A(r) <= 1`` for ``r <= 1/3`` on the Moebius family and random class-B functions."""
    start = time.perf_counter()
    sharp = _sharp_lambda()
    lam = sharp.derived_constant if lam is None else float(lam)
    track = _Tracker(grid.tolerance)
    rs = grid.r_values(1.0 / 3.0)
    closed_gap = 0.0
    for a in _with_point(grid.a_values(), sharp.root, grid.a_lo, grid.a_hi):
        f = moebius_series(float(a), grid.truncation)
        values, tails = fn.functional_A_grid(f, rs, lam)
        track.observe(values, 1.0, tails, rs, {"family": "moebius", "a": float(a)})
        closed = np.array([fn.moebius_functional_A(float(a), float(r), lam).value for r in rs])
        closed_gap = max(closed_gap, float(np.max(np.abs(closed - values) - tails)))
    for i in range(grid.samples):
        f = class_b_sample(grid.seed, i, grid.truncation).series
        values, tails = fn.functional_A_grid(f, rs, lam)
        track.observe(values, 1.0, tails, rs, {"family": "class_b", "sample": i})
    details = {
        "lambda": lam,
        "a_star": sharp.root,
        "radius_cap": 1.0 / 3.0,
        "closed_form_excess_over_tail": closed_gap,
    }
    return track.report("thm1", grid, start, details)


def verify_theorem2(grid: SweepGrid = SweepGrid(), mu: Optional[float] = None) -> InequalityReport:
    """``B(r) <= 1`` for ``r <= 1/(3 - |a_0|)``."""
    start = time.perf_counter()
    sharp = _sharp_mu()
    mu = sharp.derived_constant if mu is None else float(mu)
    track = _Tracker(grid.tolerance)
    closed_gap = 0.0
    for a in _with_point(grid.a_values(), sharp.root, grid.a_lo, grid.a_hi):
        a = float(a)
        rs = grid.r_values(1.0 / (3.0 - a))
        f = moebius_series(a, grid.truncation)
        values, tails = fn.functional_B_grid(f, rs, mu)
        track.observe(values, 1.0, tails, rs, {"family": "moebius", "a": a})
        closed = np.array([fn.moebius_functional_B(a, float(r), mu).value for r in rs])
        closed_gap = max(closed_gap, float(np.max(np.abs(closed - values) - tails)))
    for i in range(grid.samples):
        f = class_b_sample(grid.seed, i, grid.truncation).series
        rs = grid.r_values(1.0 / (3.0 - abs(f.coeffs[0])))
        values, tails = fn.functional_B_grid(f, rs, mu)
        track.observe(values, 1.0, tails, rs, {"family": "class_b", "sample": i})
    details = {"mu": mu, "a_double_star": sharp.root, "closed_form_excess_over_tail": closed_gap}
    return track.report("thm2", grid, start, details)


def lemma1_terms(f: PowerSeries, r, N: int):
    """Left side, right side and truncation tail of the coefficient inequality for ``N``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    r = np.atleast_1d(np.asarray(r, dtype=float))
    t = (N - 1) // 2
    mags = np.abs(f.coeffs)
    a0 = mags[0]
    n = np.arange(mags.size)
    head = np.where(n >= N, mags, 0.0)
    lhs = (r[:, None] ** n) @ head
    if t > 0:
        lhs = lhs + np.sum(mags[1 : t + 1] ** 2) * r**N / (1 - r)
    sq = np.where(n > t, mags**2, 0.0)
    weight = 1.0 / (1.0 + a0) + r / (1 - r)
    lhs = lhs + weight * ((r[:, None] ** (2 * n)) @ sq)
    rhs = (1 - a0 * a0) * r**N / (1 - r)
    gap = 1 - a0 * a0
    m = f.order + 1
    tail = gap * r**m / (1 - r) + weight * gap**2 * r ** (2 * m) / (1 - r * r)
    return lhs, rhs, tail


def verify_lemma1(grid: SweepGrid = SweepGrid(), N=LEMMA1_N) -> InequalityReport:
    start = time.perf_counter()
    Ns = (N,) if isinstance(N, int) else tuple(N)
    track = _Tracker(grid.tolerance)
    rs = grid.r_values(LEMMA1_R_MAX)
    moebius_gap = 0.0
    for a in grid.a_values():
        f = moebius_series(float(a), grid.truncation)
        for n_ in Ns:
            lhs, rhs, tail = lemma1_terms(f, rs, n_)
            track.observe(lhs, rhs, tail, rs, {"family": "moebius", "a": float(a), "N": n_})
            if n_ == 1:
                moebius_gap = max(moebius_gap, float(np.max(np.abs(rhs - lhs) - tail)))
    for i in range(grid.samples):
        f = class_b_sample(grid.seed, i, grid.truncation).series
        for n_ in Ns:
            lhs, rhs, tail = lemma1_terms(f, rs, n_)
            track.observe(lhs, rhs, tail, rs, {"family": "class_b", "sample": i, "N": n_})
    details = {"N": list(Ns), "moebius_N1_equality_gap": moebius_gap}
    return track.report("lemma1", grid, start, details)


def verify_lemma2(grid: SweepGrid = SweepGrid()) -> InequalityReport:
    """Area ratio bound for ``r <= 1/sqrt(2)``, with equality on the Moebius maps."""
    start = time.perf_counter()
    track = _Tracker(grid.tolerance)
    rs = grid.r_values(LEMMA2_CAP)
    equality_gap = 0.0
    for a in grid.a_values():
        f = moebius_series(float(a), grid.truncation)
        values, tails = fn.area_ratio_grid(f, rs)
        bound = fn.area_bound(float(a), rs)
        track.observe(values, bound, tails, rs, {"family": "moebius", "a": float(a)})
        equality_gap = max(equality_gap, float(np.max(np.abs(bound - values))))
    for i in range(grid.samples):
        f = class_b_sample(grid.seed, i, grid.truncation).series
        values, tails = fn.area_ratio_grid(f, rs)
        bound = fn.area_bound(abs(f.coeffs[0]), rs)
        track.observe(values, bound, tails, rs, {"family": "class_b", "sample": i})
    return track.report("lemma2", grid, start, {"moebius_equality_gap": equality_gap})


# ---------------------------------------------------------------------------
# Schwarz maps


def witness_series(a: float, order=DEFAULT_ORDER) -> PowerSeries:
    """``z (z - a) / (1 - a z)``, extremal for the derivative bound."""
    return blaschke_series(BlaschkeSpec((a,), 1.0, True), order)


def witness_bohr_derivative(a: float, r):
    """Closed form of ``B_r(zeta')`` for :func:`witness_series`."""
    r = np.asarray(r, dtype=float)
    return a + (1 - a * a) * (2 * r - a * r * r) / (1 - a * r) ** 2


def witness_threshold(a: float) -> float:
    """Radius beyond which the witness derivative has Bohr sum above 1."""
    # (1 - sqrt(q)) / a with q = (1 + a) / (1 + 2a), rationalised so a = 0 gives 1/2
    q = (1 + a) / (1 + 2 * a)
    return 1.0 / ((1 + 2 * a) * (1 + math.sqrt(q)))


def _schwarz_derivative_check(track, phi, cap_fn, grid, params):
    x = min(1.0, abs(phi.coeffs[1]))
    rs = grid.r_values(cap_fn(x))
    d = differentiate(phi)
    values, _ = fn.bohr_sum_grid(d, rs)
    # phi = z w with w in B, so |phi_n| <= 1 - |phi'(0)|^2 for n >= 2
    tail = _derivative_tail(1 - x * x, d.order + 1, rs)
    track.observe(values, 1.0, tail, rs, params)


def verify_schwarz_deriv(grid: SweepGrid = SweepGrid()) -> InequalityReport:
    """``B_r(phi') <= 1`` for ``r <= r0(|phi'(0)|)``, plus the witness closed form."""
    start = time.perf_counter()
    order = 2 * grid.truncation
    track = _Tracker(grid.tolerance)
    witness_gap = 0.0
    threshold_ok = True
    for a in grid.a_values():
        a = float(a)
        zeta = witness_series(a, order)
        _schwarz_derivative_check(track, zeta, fn.radius_r0, grid, {"family": "witness", "a": a})
        if a > 0:
            thr = witness_threshold(a)
            probe = np.array([fn.radius_r0(a), 0.999 * thr, 1.001 * thr])
            series_vals, _ = fn.bohr_sum_grid(differentiate(zeta), probe)
            closed = witness_bohr_derivative(a, probe)
            witness_gap = max(witness_gap, float(np.max(np.abs(series_vals - closed))))
            threshold_ok &= bool(closed[1] <= 1 + TOLERANCE and closed[-1] > 1)
            if np.max(np.abs(series_vals - closed)) > TOLERANCE:
                track.violations.append(
                    Violation({"check": "witness_closed_form", "a": a},
                              float(np.max(series_vals)), float(np.max(closed)), TOLERANCE)
                )
    for i in range(grid.samples):
        phi = schwarz_sample(grid.seed, i, order).series
        _schwarz_derivative_check(track, phi, fn.radius_r0, grid, {"family": "schwarz", "sample": i})
    details = {"witness_closed_form_gap": witness_gap, "witness_threshold_consistent": threshold_ok}
    return track.report("schwarz-deriv", grid, start, details)


def verify_schwarz_bohr(grid: SweepGrid = SweepGrid()) -> InequalityReport:
    """``B_r(phi) <= 1`` for ``r <= r1(|phi'(0)|)``."""
    start = time.perf_counter()
    track = _Tracker(grid.tolerance)
    family = [("identity", {}, identity_series(grid.truncation))]
    z2 = np.zeros(grid.truncation + 1, dtype=complex)
    z2[2] = 1.0
    family.append(("z_squared", {}, polynomial_series(z2)))
    family += [("witness", {"a": float(a)}, witness_series(float(a), grid.truncation))
               for a in grid.a_values()]
    draws = [("schwarz", {"sample": i}, schwarz_sample(grid.seed, i, grid.truncation).series)
             for i in range(grid.samples)]
    for name, extra, phi in family + draws:
        x = min(1.0, abs(phi.coeffs[1]))
        rs = grid.r_values(fn.radius_r1(x))
        values, _ = fn.bohr_sum_grid(phi, rs)
        tail = (1 - x * x) * rs ** (phi.order + 1) / (1 - rs)
        track.observe(values, 1.0, tail, rs, {"family": name, **extra})
    return track.report("schwarz-bohr", grid, start, {})


def _lemma4_family(grid, order):
    yield "identity", {}, identity_series(order)
    for a in grid.a_values()[:: max(1, grid.a_n // 20)]:
        yield "witness", {"a": float(a)}, witness_series(float(a), order)
    for i in range(grid.samples):
        yield "schwarz", {"sample": i}, schwarz_sample(grid.seed, i, order).series


def verify_lemma4(grid: SweepGrid = SweepGrid(), j=LEMMA4_J, k=LEMMA4_K) -> InequalityReport:
    """Sections of ``phi' phi^j``: boundary sup and Bohr sum both at most ``r^j``.

    Sections only see coefficients up to ``k``, so they are computed exactly
    from a short expansion of ``phi`` and carry no truncation tail.
    """
    start = time.perf_counter()
    js = (j,) if isinstance(j, int) else tuple(j)
    ks = (k,) if isinstance(k, int) else tuple(k)
    if any(v < 1 for v in js) or any(v < 0 for v in ks):
        raise ValueError("lemma 4 needs j >= 1 and k >= 0")
    order = max(ks) + 2
    track = _Tracker(grid.tolerance)
    for name, extra, phi in _lemma4_family(grid, order):
        x = min(1.0, abs(phi.coeffs[1]))
        d = differentiate(phi)
        power = phi
        for jj in range(1, max(js) + 1):
            if jj > 1:
                power = multiply(power, phi)
            if jj not in js:
                continue
            prod = multiply(d, power)
            r_sup = grid.r_values(0.5 * fn.radius_r0(x))
            r_bohr = grid.r_values(fn.radius_r0(x) * fn.radius_r1(x**jj))
            sups = _section_boundary_sups(prod, r_sup, ks)
            for kk in ks:
                s = section(prod, kk)
                params = {"family": name, **extra, "j": jj, "k": kk}
                track.observe(sups[kk], r_sup**jj, None, r_sup, params, "sup")
                values, _ = fn.bohr_sum_grid(s, r_bohr)
                track.observe(values, r_bohr**jj, None, r_bohr, params, "bohr")
    return track.report("lemma4", grid, start, {"j": list(js), "k": list(ks)})


# ---------------------------------------------------------------------------
# Subordination


def _subordination_draw(grid, i, order):
    h = random_polynomial(grid.seed, i, order).series
    phi = schwarz_sample(grid.seed, i, order).series
    return h, phi


def verify_theorem3(grid: SweepGrid = SweepGrid(), k: Optional[int] = None) -> InequalityReport:
    """Sections of ``f'`` for ``f = h o phi`` against Bohr sums of sections of ``h'``."""
    start = time.perf_counter()
    track = _Tracker(grid.tolerance)
    r1 = grid.r_values(THM3_PART1_CAP)
    r2 = grid.r_values(THM3_PART2_CAP)

    def check(h, phi, kk, params):
        order = kk + 1
        hs = PowerSeries(h.coeffs[: order + 1]) if h.order > order else h
        f = compose(hs, PowerSeries(phi.coeffs[: order + 1]))
        sf = section(differentiate(f), kk)
        sh = section(differentiate(h), kk)
        bound1, _ = fn.bohr_sum_grid(sh, r1)
        track.observe(_boundary_sup(sf, r1), bound1, None, r1, {**params, "k": kk}, "part1")
        lhs2, _ = fn.bohr_sum_grid(sf, r2)
        bound2, _ = fn.bohr_sum_grid(sh, r2)
        track.observe(lhs2, bound2, None, r2, {**params, "k": kk}, "part2")

    order = (THM3_MAX_K if k is None else k) + 2
    ident = identity_series(order)
    for i in range(min(grid.samples, 20)):
        h = random_polynomial(grid.seed, i, order).series
        check(h, ident, THM3_MAX_K if k is None else k, {"family": "identity_phi", "sample": i})
    check(constant_series(0.5, order), schwarz_sample(grid.seed, 0, order).series,
          THM3_MAX_K if k is None else k, {"family": "constant_h"})
    for i in range(grid.samples):
        kk = random_index(grid.seed, i, THM3_MAX_K) if k is None else k
        h, phi = _subordination_draw(grid, i, kk + 2)
        check(h, phi, kk, {"family": "subordination", "sample": i})
    details = {"part1_cap": THM3_PART1_CAP, "part2_cap": THM3_PART2_CAP}
    return track.report("thm3", grid, start, details)


def _coefficient_bound(h: PowerSeries) -> float:
    # sup of |h| on the disk, hence of |h o phi|, bounds every Taylor coefficient
    return float(np.sum(np.abs(h.coeffs)))


def verify_theorem6(grid: SweepGrid = SweepGrid()) -> InequalityReport:
    """``B_r((h o phi)') <= B_r(h')`` for ``r <= (1 - sqrt(2/3)) / 3``."""
    start = time.perf_counter()
    order = 2 * grid.truncation
    track = _Tracker(grid.tolerance)
    rs = grid.r_values(THM6_CAP)
    ident = identity_series(order)

    def check(h, phi, params):
        d = differentiate(compose(h, phi))
        lhs, _ = fn.bohr_sum_grid(d, rs)
        rhs, _ = fn.bohr_sum_grid(differentiate(h), rs)
        tail = _derivative_tail(_coefficient_bound(h), d.order + 1, rs)
        track.observe(lhs, rhs, tail, rs, params)

    for i in range(min(grid.samples, 20)):
        check(random_polynomial(grid.seed, i, order).series, ident,
              {"family": "identity_phi", "sample": i})
    for i in range(min(grid.samples, 20)):
        check(polynomial_series([0, 1], order), schwarz_sample(grid.seed, i, order).series,
              {"family": "identity_h", "sample": i})
    for i in range(grid.samples):
        h, phi = _subordination_draw(grid, i, order)
        check(h, phi, {"family": "subordination", "sample": i})
    return track.report("thm6", grid, start, {"radius_cap": THM6_CAP})


def verify_theorem7(grid: SweepGrid = SweepGrid(), b: float = 1.0) -> InequalityReport:
    """``B_r(f') <= b (2 B_r(h) + B_r(h'))`` for ``f = g (h o phi)``, ``|g| <= b``."""
    if not b > 0:
        raise ValueError(f"b must be positive, got {b}")
    start = time.perf_counter()
    order = 2 * grid.truncation
    track = _Tracker(grid.tolerance)
    rs = grid.r_values(THM7_CAP)

    def check(g, h, phi, params):
        f = multiply(g, compose(h, phi))
        d = differentiate(f)
        lhs, _ = fn.bohr_sum_grid(d, rs)
        bh, _ = fn.bohr_sum_grid(h, rs)
        bdh, _ = fn.bohr_sum_grid(differentiate(h), rs)
        tail = _derivative_tail(b * _coefficient_bound(h), d.order + 1, rs)
        track.observe(lhs, b * (2 * bh + bdh), tail, rs, params)

    ident = identity_series(order)
    for i in range(min(grid.samples, 20)):
        check(constant_series(b, order), random_polynomial(grid.seed, i, order).series, ident,
              {"family": "constant_g", "sample": i})
    for i in range(min(grid.samples, 20)):
        g = blaschke_sample(grid.seed, i, order).series * b
        check(g, constant_series(1.0, order), schwarz_sample(grid.seed, i, order).series,
              {"family": "constant_h", "sample": i})
    for i in range(grid.samples):
        g = blaschke_sample(grid.seed, i, order).series * b
        h, phi = _subordination_draw(grid, i, order)
        check(g, h, phi, {"family": "product", "sample": i})
    return track.report("thm7", grid, start, {"b": b, "radius_cap": THM7_CAP})


# ---------------------------------------------------------------------------
# Sharpness and radius localisation


@dataclass
class SharpnessProbe:
    theorem: str
    delta: float
    extremal_a: float
    extremal_r: float
    excess: Optional[float]
    predicted: float
    violations: int

    @property
    def passed(self) -> bool:
        return self.excess is not None and abs(self.excess - self.predicted) <= 1e-8


def predicted_excess(theorem: str, a: float, delta: float) -> float:
    """Amount by which the extremal value exceeds 1 when the constant grows by ``delta``."""
    if theorem == "thm1":
        return 81 * delta * (1 - a * a) ** 4 / (9 - a * a) ** 4
    if theorem == "thm2":
        return delta * (3 - a) ** 4 * (1 - a * a) ** 4 / (81 * (3 - 2 * a) ** 4)
    raise ValueError(f"no sharpness formula for {theorem}")


def sharpness_probe(theorem: str, delta: float, grid: SweepGrid = SweepGrid()) -> SharpnessProbe:
    """Run the Moebius sweep with the constant raised by ``delta``.

    The radius range of ``grid`` is ignored so that the sweep ends exactly at
    the extremal radius.
    """
    grid = dataclasses.replace(grid, samples=0, r_lo=None, r_hi=None)
    if theorem == "thm1":
        sharp = _sharp_lambda()
        report = verify_theorem1(grid, sharp.derived_constant + delta)
        r_ext = 1.0 / 3.0
    elif theorem == "thm2":
        sharp = _sharp_mu()
        report = verify_theorem2(grid, sharp.derived_constant + delta)
        r_ext = 1.0 / (3.0 - sharp.root)
    else:
        raise ValueError(f"no sharpness probe for {theorem}")
    a = sharp.root
    hit = [v for v in report.violations
           if v.params.get("a") == a and math.isclose(v.params["r"], r_ext, rel_tol=0, abs_tol=1e-15)]
    return SharpnessProbe(theorem, delta, a, r_ext, hit[0].excess if hit else None,
                          predicted_excess(theorem, a, delta), len(report.violations))


def _family_members(family, grid, extra=()):
    if family == "moebius":
        a_values = grid.a_values()
        for point in extra:
            a_values = _with_point(a_values, point, grid.a_lo, grid.a_hi)
        return [moebius_series(float(a), grid.truncation) for a in a_values]
    if family == "blaschke":
        return [class_b_sample(grid.seed, i, grid.truncation).series for i in range(grid.samples)]
    raise ValueError(f"unknown family {family!r}")


def _functional_sup(members, functional, r, lam, mu):
    best = -math.inf
    for f in members:
        if functional == "bohr":
            v, _ = fn.bohr_sum_grid(f, r)
        elif functional == "A":
            v, _ = fn.functional_A_grid(f, r, lam)
        elif functional == "B":
            v, _ = fn.functional_B_grid(f, r, mu)
        else:
            raise ValueError(f"unknown functional {functional!r}")
        best = max(best, float(v[0]))
    return best


def estimate_radius(family: str = "moebius", functional: str = "bohr",
                    grid: SweepGrid = SweepGrid(), tol: float = 1e-6,
                    lam: Optional[float] = None, mu: Optional[float] = None,
                    r_max: float = 0.99) -> RadiusEstimate:
    """Largest ``r`` at which the family supremum of the functional stays at most 1."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    lam = _sharp_lambda().derived_constant if lam is None else lam
    mu = _sharp_mu().derived_constant if mu is None else mu
    # the extremal point of each refined functional joins the Moebius lattice
    extra = {"A": (_sharp_lambda().root,), "B": (_sharp_mu().root,)}.get(functional, ())
    members = _family_members(family, grid, extra)
    if not members:
        raise ValueError("radius estimation needs at least one family member")
    sup = lambda r: _functional_sup(members, functional, r, lam, mu)  # noqa: E731
    lo, hi = 0.0, r_max
    s_lo, s_hi = sup(lo), sup(hi)
    if s_lo > 1 + 1e-12:
        return RadiusEstimate(0.0, (0.0, 0.0), family, functional, len(members))
    if s_hi <= 1 + 1e-12:
        return RadiusEstimate(hi, (hi, hi), family, functional, len(members))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        s_mid = sup(mid)
        if not s_lo - 1e-12 <= s_mid <= s_hi + 1e-12:
            raise AssertionError(f"family supremum is not monotone near r = {mid}")
        if s_mid > 1 + 1e-12:
            hi, s_hi = mid, s_mid
        else:
            lo, s_lo = mid, s_mid
    return RadiusEstimate(0.5 * (lo + hi), (lo, hi), family, functional, len(members))


SUITES = {
    "thm1": verify_theorem1,
    "thm2": verify_theorem2,
    "thm3": verify_theorem3,
    "thm6": verify_theorem6,
    "thm7": verify_theorem7,
    "lemma1": verify_lemma1,
    "lemma2": verify_lemma2,
    "schwarz-deriv": verify_schwarz_deriv,
    "schwarz-bohr": verify_schwarz_bohr,
    "lemma4": verify_lemma4,
}


def verify_all(grid: SweepGrid = SweepGrid()) -> dict:
    return {name: suite(grid) for name, suite in SUITES.items()}
