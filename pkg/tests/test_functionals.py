import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrlab import functionals as fn
from bohrlab.series import BlaschkeSpec, blaschke_series, moebius_series, polynomial_series

a_values = st.floats(0.0, 0.95)
r_values = st.floats(0.0, 0.9)


@settings(max_examples=80, deadline=None)
@given(a_values, r_values)
def test_series_path_matches_closed_forms(a, r):
    f = moebius_series(a)
    pairs = [
        (fn.bohr_sum(f, r), fn.moebius_bohr_sum(a, r)),
        (fn.refined_norm_sq(f, r), fn.moebius_refined_norm_sq(a, r)),
        (fn.area_ratio(f, r), fn.moebius_area_ratio(a, r)),
        (fn.functional_A(f, r, 14.8), fn.moebius_functional_A(a, r, 14.8)),
        (fn.functional_B(f, r, 13.97), fn.moebius_functional_B(a, r, 13.97)),
    ]
    for series, closed in pairs:
        # truncated sums undershoot by at most the tail (plus rounding)
        assert series.value <= closed.value + 1e-12
        assert closed.value <= series.upper + 1e-12


@pytest.mark.parametrize(
    "a, r, expected",
    [
        (0.0, 0.5, 0.5),
        (0.5, 0.5, 0.5 + 0.75 * 0.5 / 0.75),
        (0.5, 1 / 3, 0.5 + 0.75 / 3 / (1 - 0.5 / 3)),
    ],
)
def test_moebius_bohr_sum_values(a, r, expected):
    assert fn.moebius_bohr_sum(a, r).value == pytest.approx(expected, abs=1e-15)


def test_area_ratio_worked_example():
    assert fn.moebius_area_ratio(0.5, 0.5).value == pytest.approx(0.25 * 0.5625 / 0.9375**2, abs=1e-15)
    assert fn.area_ratio(moebius_series(0.5), 0.5).value == pytest.approx(0.16, abs=1e-14)


def test_bohr_sum_of_polynomial_is_exact():
    f = polynomial_series([1, -2j, 3])
    v = fn.bohr_sum(f, 0.5)
    assert v.value == pytest.approx(1 + 1 + 0.75)
    # no class-B bound, so no certified tail
    assert v.tail_bound is None and v.upper == v.value


def test_tail_bound_covers_remainder():
    f = moebius_series(0.3, 20)
    full = fn.moebius_bohr_sum(0.3, 0.8).value
    v = fn.bohr_sum(f, 0.8)
    assert v.value < full <= v.upper


def test_area_tail_covers_remainder():
    f = moebius_series(0.3, 10)
    full = fn.moebius_area_ratio(0.3, 0.8).value
    v = fn.area_ratio(f, 0.8)
    assert v.value < full <= v.upper


def test_blaschke_area_bound():
    f = blaschke_series(BlaschkeSpec((0.4 + 0.3j, -0.6), 1j))
    a0 = abs(f.coeffs[0])
    r = np.linspace(0.0, 1 / math.sqrt(2), 50)
    values, tails = fn.area_ratio_grid(f, r)
    assert np.all(values - tails <= fn.area_bound(a0, r) + 1e-12)


@pytest.mark.parametrize("r", [-0.1, 1.0, float("nan")])
def test_radius_domain(r):
    with pytest.raises(ValueError):
        fn.bohr_sum(moebius_series(0.2), r)


def test_negative_constants_rejected():
    with pytest.raises(ValueError):
        fn.functional_A(moebius_series(0.2), 0.3, -1.0)
    with pytest.raises(ValueError):
        fn.functional_B(moebius_series(0.2), 0.3, -1.0)


@pytest.mark.parametrize("x, expected", [(0.0, 1 - math.sqrt(0.5)), (1.0, 1 - math.sqrt(2 / 3))])
def test_radius_r0(x, expected):
    assert fn.radius_r0(x) == pytest.approx(expected)


@pytest.mark.parametrize("x, expected", [(0.0, math.sqrt(0.5)), (0.25, math.sqrt(0.375)), (0.5, 0.5), (1.0, 1 / 3)])
def test_radius_r1(x, expected):
    assert fn.radius_r1(x) == pytest.approx(expected)


def test_radius_helpers_domain():
    with pytest.raises(ValueError):
        fn.radius_r0(1.5)
    with pytest.raises(ValueError):
        fn.radius_r1(-0.1)
