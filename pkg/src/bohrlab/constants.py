"""Exact polynomials behind the sharp constants, and certified roots.

Coefficients are stored as Python integers in ascending degree, so
evaluation at integer points is exact.  The optimal constants ``lambda`` and
``mu`` are rational functions of the unique root in ``(0, 1)`` of the main
octic polynomials.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np


class NoSignChange(ValueError):
    """The polynomial does not change sign on the requested interval."""


class NonConvergence(RuntimeError):
    """Bisection hit the iteration cap before reaching the tolerance."""


class PolyName(enum.Enum):
    PSI_MAIN = "psi"
    PHI_MAIN = "phi"
    PSI_VINITI = "viniti"
    A2 = "A2"
    B2 = "B2"
    PSI_DERIV_CHAIN = "psi_derivatives"
    PHI_DERIV_CHAIN = "phi_derivatives"


@dataclass(frozen=True)
class NamedPolynomial:
    """``coefficients(t) + param * param_coefficients(t)``, ascending degree."""

    name: PolyName
    coefficients: tuple
    param_coefficients: Optional[tuple] = None

    @property
    def needs_param(self) -> bool:
        return self.param_coefficients is not None

    @property
    def degree(self) -> int:
        deg = len(self.coefficients) - 1
        if self.param_coefficients is not None:
            deg = max(deg, len(self.param_coefficients) - 1)
        return deg

    def scale(self, param=None) -> float:
        s = max(abs(c) for c in self.coefficients)
        if self.param_coefficients is not None and param is not None:
            s = max(s, abs(param) * max(abs(c) for c in self.param_coefficients))
        return float(s)


def formal_derivative(coeffs: Sequence, k: int = 1) -> tuple:
    c = tuple(coeffs)
    for _ in range(k):
        c = tuple(n * c[n] for n in range(1, len(c))) or (0,)
    return c


def horner(coeffs: Sequence, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


PSI = NamedPolynomial(
    PolyName.PSI_MAIN,
    (-13122, 15804, 12420, -1396, -1344, -76, -4, 4, 2),
)

PHI = NamedPolynomial(
    PolyName.PHI_MAIN,
    (-524880, 2344464, -4244238, 4132944, -2361960, 798660, -154386, 17172, -1296),
)

PSI_VINITI = NamedPolynomial(PolyName.PSI_VINITI, (-405, 473, 402, 38, 3, 1))

# A2(a) = 5265 + 2673 a - ... - a^7 - 162 lambda (1 - a^2)(1 + a)^3
A2 = NamedPolynomial(
    PolyName.A2,
    (5265, 2673, -1251, -675, 83, 51, -1, -1),
    tuple(162 * c for c in (-1, -3, -2, 2, 3, 1)),
)

_B2_MU_FACTOR = (162, 27, -378, 30, 290, -108, -62, 50, -12, 1)
B2 = NamedPolynomial(
    PolyName.B2,
    (39366, -80919, 59778, -19197, 2916, -324),
    tuple(-8 * c for c in _B2_MU_FACTOR),
)

# Derivative chains exactly as printed in the uniqueness arguments (index = order).
PSI_DERIVATIVES_PRINTED = {
    1: (15804, 24840, -4188, -5376, -380, -24, 28, 16),
    2: (24840, -8376, -16128, -1520, -120, 168, 112),
    3: (-8376, -32256, -4560, -480, 840, 672),
    4: (-32256, -9120, -1440, 3360, 3360),
    5: (-9120, -2880, 10080, 13440),
    6: (-2880, 20160, 40320),
}

PHI_DERIVATIVES_PRINTED = {
    1: (2344464, -8488476, 12398832, -9447840, 3993300, -926316, 120204, -10368),
    2: (-8488476, 24797664, -28343520, 15973200, -4631580, 721224, -72576),
    3: (24797664, -56687040, 47919600, -18526320, 3606120, -435456),
    4: (-56687040, 95839200, -55578960, 14424480, -2177280),
    5: (95839200, -111157920, 43273440, -8709120),
    6: (-111157920, 86546880, -26127360),
}

PSI_DERIVS = NamedPolynomial(PolyName.PSI_DERIV_CHAIN, PSI_DERIVATIVES_PRINTED[1])
PHI_DERIVS = NamedPolynomial(PolyName.PHI_DERIV_CHAIN, PHI_DERIVATIVES_PRINTED[1])

POLYNOMIALS = {p.name: p for p in (PSI, PHI, PSI_VINITI, A2, B2, PSI_DERIVS, PHI_DERIVS)}


def _resolve(p):
    if isinstance(p, NamedPolynomial):
        return p
    if isinstance(p, str):
        return POLYNOMIALS[PolyName(p)]
    return POLYNOMIALS[p]


def _combined(p, param):
    if p.needs_param and param is None:
        raise ValueError(f"{p.name.value} needs a parameter value")
    if not p.needs_param and param is not None:
        raise ValueError(f"{p.name.value} takes no parameter")
    if param is None:
        return p.coefficients
    n = max(len(p.coefficients), len(p.param_coefficients))
    base = list(p.coefficients) + [0] * (n - len(p.coefficients))
    extra = list(p.param_coefficients) + [0] * (n - len(p.param_coefficients))
    return tuple(b + param * e for b, e in zip(base, extra))


def eval_polynomial(p, t, param=None):
    """Horner evaluation; exact when ``t`` (and ``param``) are integers or fractions."""
    return horner(_combined(_resolve(p), param), t)


def eval_derivative(p, t, param=None, k: int = 1):
    return horner(formal_derivative(_combined(_resolve(p), param), k), t)


@dataclass(frozen=True)
class SharpConstantResult:
    name: str
    root: float
    residual: float
    bracket: tuple
    derived_constant: Optional[float]
    iterations: int


def solve_root(p, interval=(0.0, 1.0), tol: float = 1e-12, param=None,
               max_bisections: int = 200) -> SharpConstantResult:
    """Bisection to bracket width ``tol``, then one guarded Newton step."""
    p = _resolve(p)
    coeffs = _combined(p, param)
    deriv = formal_derivative(coeffs)
    f = lambda x: float(horner(coeffs, x))  # noqa: E731
    lo, hi = (float(v) for v in interval)
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        hi, f_hi = lo, f_lo
    elif f_hi == 0.0:
        lo, f_lo = hi, f_hi
    elif f_lo * f_hi > 0:
        raise NoSignChange(f"{p.name.value} has no sign change on [{lo}, {hi}]")
    steps = 0
    while hi - lo > tol:
        if steps >= max_bisections:
            raise NonConvergence(f"bisection for {p.name.value} stalled at width {hi - lo}")
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        steps += 1
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    root = 0.5 * (lo + hi)
    slope = float(horner(deriv, root))
    if slope != 0.0:
        polished = root - f(root) / slope
        if lo <= polished <= hi and abs(f(polished)) <= abs(f(root)):
            root = polished
    derived = _DERIVED.get(p.name)
    return SharpConstantResult(
        name=p.name.value,
        root=root,
        residual=abs(f(root)),
        bracket=(lo, hi),
        derived_constant=None if derived is None else derived(root),
        iterations=steps,
    )


def lambda_from_root(a: float) -> float:
    """Optimal weight of the squared area term for the constant-term-linear functional."""
    den = 162.0 * (a + 1) ** 3 * (5 * a - 3)
    if den == 0:
        raise ValueError("lambda_from_root has a pole at a = 3/5")
    num = -2673 + 2502 * a + 2025 * a**2 - 332 * a**3 - 255 * a**4 + 6 * a**5 + 7 * a**6
    return num / den


def mu_from_root(a: float) -> float:
    den = 8.0 * (a + 1) ** 2 * (a - 3) ** 3 * (9 * a**3 - 33 * a**2 + 29 * a - 1)
    if den == 0:
        raise ValueError("mu_from_root has a pole where the cubic factor vanishes")
    num = -80919 + 119556 * a - 57591 * a**2 + 11664 * a**3 - 1620 * a**4
    return num / den


def lambda_viniti(a: float) -> float:
    den = 81.0 * (1 + a) ** 3 * (3 - 5 * a)
    if den == 0:
        raise ValueError("lambda_viniti has a pole at a = 3/5")
    return 4 * (486 - 261 * a - 324 * a**2 + 2 * a**3 + 30 * a**4 + 3 * a**5) / den


_DERIVED = {
    PolyName.PSI_MAIN: lambda_from_root,
    PolyName.PHI_MAIN: mu_from_root,
    PolyName.PSI_VINITI: lambda_viniti,
}


def constant_for(which: str) -> SharpConstantResult:
    """Certified root and constant for ``psi``, ``phi`` or ``viniti``."""
    return solve_root(POLYNOMIALS[PolyName(which)], (0.0, 1.0))


def sharp_lambda() -> float:
    return constant_for("psi").derived_constant


def sharp_mu() -> float:
    return constant_for("phi").derived_constant


# ---------------------------------------------------------------------------
# Certificates for the printed facts in the root-uniqueness arguments.


@dataclass
class CertificateEntry:
    name: str
    claim: str
    expected: object
    computed: object
    passed: bool


@dataclass
class CertificateReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]


GRID_POINTS = 2001
DECIMAL_TOL = 1e-4

# Six-decimal values as printed; they are the constant formulas evaluated at the
# roots rounded to six decimals, so they differ from the certified constants.
PRINTED_LAMBDA = 14.796883
PRINTED_MU = 13.966088


def _grid_values(coeffs, grid):
    # ascending -> numpy's descending convention
    return np.polyval(np.array(coeffs[::-1], dtype=float), grid)


def _sign_changes(values):
    s = np.sign(values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def lemma_sign_certificates(grid_points: int = GRID_POINTS) -> CertificateReport:
    grid = np.linspace(0.0, 1.0, grid_points)
    report = CertificateReport()

    def exact(name, claim, coeffs, t, expected):
        got = horner(coeffs, t)
        report.entries.append(CertificateEntry(name, claim, expected, got, got == expected))

    def approx(name, claim, expected, got, tol=DECIMAL_TOL):
        ok = bool(abs(got - expected) <= tol)
        report.entries.append(CertificateEntry(name, claim, expected, float(got), ok))

    def holds(name, claim, ok, computed):
        report.entries.append(CertificateEntry(name, claim, True, computed, bool(ok)))

    psi = PSI.coefficients
    d = {k: formal_derivative(psi, k) for k in range(1, 7)}
    for k in range(1, 7):
        holds(f"psi^({k}) printed", "printed derivative equals formal derivative",
              d[k] == PSI_DERIVATIVES_PRINTED[k], list(d[k]))

    exact("psi(0)", "psi(0) = -13122", psi, 0, -13122)
    exact("psi(1)", "psi(1) = 12288", psi, 1, 12288)
    a1 = (math.sqrt(105) - 7) / 28
    sixth = tuple(Fraction(c) for c in d[6])
    factored = tuple(40320 * c for c in (Fraction(-1, 14), Fraction(1, 2), Fraction(1)))
    holds("psi^(6) factorisation", "psi^(6)(a) = 40320 (a^2 + a/2 - 1/14)",
          sixth == factored, [str(c) for c in sixth])
    approx("a1", "a1 = (sqrt(105) - 7)/28 ~ 0.115963", 0.115963, a1)
    approx("psi^(6)(a1)", "a1 is a zero of psi^(6)", 0.0, horner(d[6], a1), tol=1e-8)
    v6 = _grid_values(d[6], grid)
    holds("psi^(6) sign", "psi^(6) <= 0 on [0, a1) and >= 0 on [a1, 1]",
          np.all(v6[grid < a1] <= 0) and np.all(v6[grid >= a1] >= -1e-9), float(v6.min()))
    exact("psi^(5)(0)", "psi^(5)(0) = -9120", d[5], 0, -9120)
    exact("psi^(5)(1)", "psi^(5)(1) = 11520", d[5], 1, 11520)
    v5 = _grid_values(d[5], grid)
    holds("psi^(5) on [0, a1]", "psi^(5) < 0 on [0, a1]", np.all(v5[grid <= a1] < 0),
          float(v5[grid <= a1].max()))
    holds("psi^(5) zero a2", "psi^(5) has a unique zero a2 in (a1, 1)",
          _sign_changes(v5[grid > a1]) == 1, _sign_changes(v5[grid > a1]))
    exact("psi^(4)(0)", "psi^(4)(0) = -32256", d[4], 0, -32256)
    exact("psi^(4)(1)", "psi^(4)(1) = -36096", d[4], 1, -36096)
    v4 = _grid_values(d[4], grid)
    holds("psi^(4) sign", "psi^(4) < 0 on [0, 1]", np.all(v4 < 0), float(v4.max()))
    exact("psi^(3)(0)", "psi^(3)(0) = -8376", d[3], 0, -8376)
    v3 = _grid_values(d[3], grid)
    holds("psi^(3) bound", "psi^(3)(a) <= psi^(3)(0) < 0 on [0, 1]",
          np.all(v3 <= -8376), float(v3.max()))
    exact("psi''(0)", "psi''(0) = 24840", d[2], 0, 24840)
    exact("psi''(1)", "psi''(1) = -1024", d[2], 1, -1024)
    v2 = _grid_values(d[2], grid)
    holds("psi'' zero a3", "psi'' has a unique zero a3 in (0, 1)", _sign_changes(v2) == 1,
          _sign_changes(v2))
    exact("psi'(0)", "psi'(0) = 15804", d[1], 0, 15804)
    exact("psi'(1)", "psi'(1) = 30720", d[1], 1, 30720)
    v1 = _grid_values(d[1], grid)
    holds("psi' sign", "psi' > 0 on [0, 1]", np.all(v1 > 0), float(v1.min()))
    v0 = _grid_values(psi, grid)
    holds("psi unique root", "psi changes sign exactly once on (0, 1)", _sign_changes(v0) == 1,
          _sign_changes(v0))
    a_star = solve_root(PSI)
    approx("a*", "a* ~ 0.587459", 0.587459, a_star.root)

    phi = PHI.coefficients
    e = {k: formal_derivative(phi, k) for k in range(1, 7)}
    for k in range(1, 7):
        holds(f"phi^({k}) printed", "printed derivative equals formal derivative",
              e[k] == PHI_DERIVATIVES_PRINTED[k], list(e[k]))
    exact("phi(0)", "phi(0) = -524880", phi, 0, -524880)
    exact("phi(1)", "phi(1) = 6480", phi, 1, 6480)
    c0, c1, c2 = e[6]
    disc = c1 * c1 - 4 * c2 * c0
    holds("phi^(6) discriminant", "discriminant of phi^(6) < 0 with negative leading term",
          disc < 0 and c2 < 0, disc)
    w6 = _grid_values(e[6], grid)
    holds("phi^(6) sign", "phi^(6) < 0 on [0, 1]", np.all(w6 < 0), float(w6.max()))
    exact("phi^(5)(1)", "phi^(5)(1) = 19245600", e[5], 1, 19245600)
    w5 = _grid_values(e[5], grid)
    holds("phi^(5) bound", "phi^(5)(a) >= phi^(5)(1) > 0 on [0, 1]",
          np.all(w5 >= 19245600), float(w5.min()))
    exact("phi^(4)(1)", "phi^(4)(1) = -4179600", e[4], 1, -4179600)
    w4 = _grid_values(e[4], grid)
    holds("phi^(4) bound", "phi^(4)(a) <= phi^(4)(1) < 0 on [0, 1]",
          np.all(w4 <= -4179600), float(w4.max()))
    exact("phi^(3)(1)", "phi^(3)(1) = 674568", e[3], 1, 674568)
    w3 = _grid_values(e[3], grid)
    holds("phi^(3) bound", "phi^(3)(a) >= phi^(3)(1) > 0 on [0, 1]",
          np.all(w3 >= 674568), float(w3.min()))
    exact("phi''(1)", "phi''(1) = -44064", e[2], 1, -44064)
    w2 = _grid_values(e[2], grid)
    holds("phi'' bound", "phi''(a) <= phi''(1) < 0 on [0, 1]",
          np.all(w2 <= -44064), float(w2.max()))
    holds("phi'(0)", "phi'(0) > 0", horner(e[1], 0) > 0, horner(e[1], 0))
    exact("phi'(1)", "phi'(1) = -16200", e[1], 1, -16200)
    a4 = solve_root(NamedPolynomial(PolyName.PHI_DERIV_CHAIN, e[1]))
    approx("a4", "unique zero a4 ~ 0.853918 of phi'", 0.853918, a4.root)
    w1 = _grid_values(e[1], grid)
    holds("phi' unique zero", "phi' changes sign exactly once on (0, 1)",
          _sign_changes(w1) == 1, _sign_changes(w1))
    w0 = _grid_values(phi, grid)
    holds("phi unique root", "phi changes sign exactly once on (0, 1)", _sign_changes(w0) == 1,
          _sign_changes(w0))
    a_dstar = solve_root(PHI)
    approx("a**", "a** ~ 0.638302", 0.638302, a_dstar.root)

    lam = lambda_from_root(a_star.root)
    mu = mu_from_root(a_dstar.root)
    # the printed A2(0), B2(0) decimals are evaluated at the printed constants
    approx("A2(0)", "A2(0) ~ 2867.904954 with lambda = 14.796883", 2867.904954,
           eval_polynomial(A2, 0.0, PRINTED_LAMBDA))
    holds("A2(0) > 0", "A2(0) > 0 with the certified lambda", eval_polynomial(A2, 0.0, lam) > 0,
          eval_polynomial(A2, 0.0, lam))
    exact("A2(1)", "A2(1) = 6144", _combined(A2, Fraction(lam)), 1, 6144)
    approx("B2(0)", "B2(0) ~ 21265.949952 with mu = 13.966088", 21265.949952,
           eval_polynomial(B2, 0.0, PRINTED_MU))
    holds("B2(0) > 0", "B2(0) > 0 with the certified mu", eval_polynomial(B2, 0.0, mu) > 0,
          eval_polynomial(B2, 0.0, mu))
    exact("B2(1)", "B2(1) = 1620", _combined(B2, Fraction(mu)), 1, 1620)
    approx("A2(a*)", "A2(a*) = 0", 0.0, eval_polynomial(A2, a_star.root, lam), tol=1e-8)
    approx("A2'(a*)", "A2'(a*) = 0", 0.0, eval_derivative(A2, a_star.root, lam), tol=1e-8)
    approx("B2(a**)", "B2(a**) = 0", 0.0, eval_polynomial(B2, a_dstar.root, mu), tol=1e-7)
    approx("B2'(a**)", "B2'(a**) = 0", 0.0, eval_derivative(B2, a_dstar.root, mu), tol=1e-7)
    a2_grid = np.array([eval_polynomial(A2, t, lam) for t in grid])
    b2_grid = np.array([eval_polynomial(B2, t, mu) for t in grid])
    holds("A2 >= 0", "A2(a) >= 0 on [0, 1]", np.all(a2_grid >= -1e-8), float(a2_grid.min()))
    holds("B2 >= 0", "B2(a) >= 0 on [0, 1]", np.all(b2_grid >= -1e-7), float(b2_grid.min()))
    for name, poly, param, root in (("A2'", A2, lam, a_star.root), ("B2'", B2, mu, a_dstar.root)):
        dcoeffs = formal_derivative(_combined(poly, param))
        roots = np.roots(np.array(dcoeffs[::-1], dtype=float))
        real = roots[np.abs(roots.imag) < 1e-7].real
        inside = real[(real >= 0) & (real <= 1)]
        ok = inside.size == 1 and abs(inside[0] - root) < 1e-6
        holds(f"{name} stationary point", f"{name} has exactly one zero in [0, 1], at the root",
              ok, [float(x) for x in inside])
    return report
