import numpy as np
import pytest

from bohrlab import sampling
from bohrlab.series import TailClass


@pytest.mark.parametrize("draw", [sampling.class_b_sample, sampling.schwarz_sample, sampling.blaschke_sample])
def test_draws_are_reproducible(draw):
    a = draw(11, 3, 64)
    b = draw(11, 3, 64)
    np.testing.assert_array_equal(a.series.coeffs, b.series.coeffs)
    assert a.recipe == b.recipe


def test_draws_independent_of_order():
    later = sampling.random_polynomial(5, 9, 16)
    for i in range(9):
        sampling.random_polynomial(5, i, 16)
    again = sampling.random_polynomial(5, 9, 16)
    np.testing.assert_array_equal(later.series.coeffs, again.series.coeffs)


def test_class_b_samples_are_bounded():
    for i in range(50):
        f = sampling.class_b_sample(1, i, 128).series
        assert f.tail_class is TailClass.SCHUR_BOUND
        z = 0.9 * np.exp(2j * np.pi * np.arange(64) / 64)
        assert np.max(np.abs(f(z))) <= 1 + 1e-9


def test_schwarz_samples_fix_origin():
    for i in range(20):
        s = sampling.schwarz_sample(2, i, 32)
        assert s.series.coeffs[0] == 0
        assert 1 <= len(s.recipe["zeros"]) + 1 <= sampling.MAX_BLASCHKE_DEGREE


def test_class_b_mixture_covers_both_kinds():
    kinds = {sampling.class_b_sample(3, i, 16).recipe["kind"] for i in range(40)}
    assert kinds == {"blaschke", "moebius_of_schwarz"}


def test_random_polynomial_shape():
    for i in range(20):
        s = sampling.random_polynomial(4, i, 8)
        degree = len(s.recipe["coeffs"]) - 1
        assert 1 <= degree <= sampling.MAX_POLY_DEGREE
        assert s.series.order == max(8, degree)
        assert np.all(np.abs(s.series.coeffs) <= 1)


def test_random_index_range():
    values = {sampling.random_index(0, i, 3) for i in range(200)}
    assert values == {0, 1, 2, 3}
