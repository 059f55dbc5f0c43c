import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrlab.series import (
    BlaschkeSpec,
    MoebiusParam,
    PowerSeries,
    TailClass,
    blaschke_series,
    compose,
    constant_series,
    differentiate,
    evaluate,
    identity_series,
    moebius_series,
    multiply,
    polynomial_series,
    section,
)

ORDER = 8

# integer coefficients keep every ring operation exact in floating point
int_coeffs = st.lists(st.integers(-20, 20), min_size=ORDER + 1, max_size=ORDER + 1)


def _series(c):
    return PowerSeries(np.array(c, dtype=complex))


@settings(max_examples=60, deadline=None)
@given(int_coeffs, int_coeffs, int_coeffs)
def test_ring_axioms_exact(a, b, c):
    f, g, h = _series(a), _series(b), _series(c)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + (g - f) == g
    assert f * constant_series(1, ORDER) == f


@settings(max_examples=40, deadline=None)
@given(int_coeffs, st.lists(st.integers(-5, 5), min_size=ORDER, max_size=ORDER))
def test_compose_matches_manual_horner(h_coeffs, phi_tail):
    h = _series(h_coeffs)
    phi = _series([0] + phi_tail)
    expected = constant_series(0, ORDER)
    power = constant_series(1, ORDER)
    for c in h_coeffs:
        expected = expected + power * c
        power = power * phi
    assert compose(h, phi) == expected


def test_compose_requires_zero_constant_term():
    with pytest.raises(ValueError):
        compose(identity_series(4), polynomial_series([1e-300, 1], 4))


def test_moebius_coefficients():
    f = moebius_series(MoebiusParam(0.5), 6)
    expected = [0.5] + [-(1 - 0.25) * 0.5 ** (n - 1) for n in range(1, 7)]
    np.testing.assert_allclose(f.coeffs, expected, rtol=0, atol=1e-15)
    assert f.tail_class is TailClass.SCHUR_BOUND


@pytest.mark.parametrize("a", [-0.1, 1.0, 2.0])
def test_moebius_param_range(a):
    with pytest.raises(ValueError):
        MoebiusParam(a)


def test_schur_bound_enforced():
    with pytest.raises(ValueError):
        PowerSeries(np.array([0.5, 0.9]), TailClass.SCHUR_BOUND)
    with pytest.raises(ValueError):
        PowerSeries(np.array([]))


@pytest.mark.parametrize("zeros, prepend_z", [((), True), ((0.3,), False), ((0.5j, -0.2 + 0.4j), True)])
def test_blaschke_matches_pointwise_product(zeros, prepend_z):
    spec = BlaschkeSpec(zeros, np.exp(0.7j), prepend_z)
    f = blaschke_series(spec, 200)
    z = np.array([0.3, -0.2 + 0.4j, 0.5j])
    direct = spec.rotation * np.ones_like(z)
    if prepend_z:
        direct = direct * z
    for w in spec.zeros:
        direct = direct * (z - w) / (1 - np.conj(w) * z)
    np.testing.assert_allclose(evaluate(f, z), direct, atol=1e-12)
    assert spec.degree == len(zeros) + prepend_z


def test_blaschke_rejects_bad_input():
    with pytest.raises(ValueError):
        BlaschkeSpec((1.0,))
    with pytest.raises(ValueError):
        BlaschkeSpec((), 2.0)


def test_differentiate_and_section():
    f = polynomial_series([1, 2, 3, 4])
    assert differentiate(f) == polynomial_series([2, 6, 12])
    np.testing.assert_array_equal(differentiate(constant_series(5)).coeffs, [0])
    assert section(f, 1) == polynomial_series([1, 2])
    assert section(f, 10) == f
    with pytest.raises(ValueError):
        section(f, -1)


def test_multiply_truncates():
    f = polynomial_series([1, 1], 3)
    assert multiply(f, f) == polynomial_series([1, 2, 1, 0])
    assert (f * f * f * f).order == 3


def test_evaluate_rejects_boundary():
    with pytest.raises(ValueError):
        evaluate(identity_series(3), 1.0)


def test_identity_evaluates_to_z():
    z = np.array([0.1, 0.2j, -0.5])
    np.testing.assert_array_equal(identity_series(5)(z), z)
