from fractions import Fraction

import pytest

from bohrlab import constants as C


@pytest.mark.parametrize(
    "which, root, constant",
    [
        ("psi", 0.5874591082522503, 14.796996506082619),
        ("phi", 0.6383020627551432, 13.966086513122382),
        ("viniti", 0.56728393681740536, 18.609549031341185),
    ],
)
def test_roots_and_constants(which, root, constant):
    # reference values from a 50-digit polynomial root solve
    res = C.constant_for(which)
    assert res.root == pytest.approx(root, abs=1e-11)
    assert res.derived_constant == pytest.approx(constant, rel=1e-10)
    lo, hi = res.bracket
    assert lo <= res.root <= hi and hi - lo <= 1e-12


@pytest.mark.parametrize(
    "poly, t, expected",
    [(C.PSI, 0, -13122), (C.PSI, 1, 12288), (C.PHI, 0, -524880), (C.PHI, 1, 6480)],
)
def test_exact_integer_values(poly, t, expected):
    assert C.eval_polynomial(poly, t) == expected


def test_printed_derivative_chains_are_formal_derivatives():
    for k, printed in C.PSI_DERIVATIVES_PRINTED.items():
        assert C.formal_derivative(C.PSI.coefficients, k) == printed
    for k, printed in C.PHI_DERIVATIVES_PRINTED.items():
        assert C.formal_derivative(C.PHI.coefficients, k) == printed


def test_exact_evaluation_with_fractions():
    t = Fraction(1, 3)
    value = C.eval_polynomial(C.PSI, t)
    assert isinstance(value, Fraction)
    assert float(value) == pytest.approx(C.eval_polynomial(C.PSI, 1 / 3))


def test_parametrised_polynomials_vanish_at_extremal_point():
    res = C.constant_for("psi")
    scale = C.A2.scale(res.derived_constant)
    assert abs(C.eval_polynomial(C.A2, res.root, res.derived_constant)) <= 1e-12 * scale
    assert abs(C.eval_derivative(C.A2, res.root, res.derived_constant)) <= 1e-11 * scale


def test_parameter_is_required_and_refused():
    with pytest.raises(ValueError):
        C.eval_polynomial(C.A2, 0.5)
    with pytest.raises(ValueError):
        C.eval_polynomial(C.PSI, 0.5, param=1.0)


def test_no_sign_change():
    with pytest.raises(C.NoSignChange):
        C.solve_root(C.PSI, interval=(0.0, 0.5))


def test_non_convergence():
    with pytest.raises(C.NonConvergence):
        C.solve_root(C.PSI, tol=1e-300, max_bisections=5)


@pytest.mark.parametrize("fn", [C.lambda_from_root, C.lambda_viniti])
def test_pole_at_three_fifths(fn):
    with pytest.raises(ValueError):
        fn(0.6)


def test_certificates_all_pass():
    report = C.lemma_sign_certificates()
    assert report.passed, [e.name for e in report.failures]
    names = {e.name for e in report.entries}
    assert {"psi(0)", "psi^(4)(1)", "a4", "A2(1)", "B2(1)"} <= names


def test_printed_constants_are_off_by_rounding():
    # the printed lambda matches the closed form at the six-decimal root, not the exact one
    assert C.lambda_from_root(0.587459) == pytest.approx(C.PRINTED_LAMBDA, abs=1e-6)
    assert abs(C.sharp_lambda() - C.PRINTED_LAMBDA) > 1e-5
