"""Seeded random generators for class-B functions, Schwarz maps and polynomials.

Each draw uses its own generator derived from ``(seed, stream, index)``, so a
sample can be replayed from those three numbers alone and the draws do not
depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .series import (
    BlaschkeSpec,
    MoebiusParam,
    PowerSeries,
    blaschke_series,
    compose,
    moebius_series,
    polynomial_series,
)

MAX_BLASCHKE_DEGREE = 6
ZERO_RADIUS = 0.95
MAX_POLY_DEGREE = 12

# stream ids keep the draws of different ingredients independent
STREAM_CLASS_B = 1
STREAM_SCHWARZ = 2
STREAM_POLY = 3
STREAM_INDEX = 4


def sample_rng(seed: int, stream: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, stream, index]))


def random_disk_point(rng, radius=1.0) -> complex:
    rho = radius * np.sqrt(rng.uniform())
    theta = rng.uniform(0.0, 2 * np.pi)
    return complex(rho * np.cos(theta), rho * np.sin(theta))


def random_unimodular(rng) -> complex:
    theta = rng.uniform(0.0, 2 * np.pi)
    return complex(np.cos(theta), np.sin(theta))


def random_blaschke_spec(rng, prepend_z=False) -> BlaschkeSpec:
    """Degree uniform in ``1..6`` (counting the factor ``z`` when prepended)."""
    degree = int(rng.integers(1, MAX_BLASCHKE_DEGREE + 1))
    n_zeros = degree - 1 if prepend_z else degree
    zeros = tuple(random_disk_point(rng, ZERO_RADIUS) for _ in range(n_zeros))
    return BlaschkeSpec(zeros, random_unimodular(rng), prepend_z)


@dataclass(frozen=True)
class Sample:
    """A drawn series together with what is needed to rebuild it."""

    series: PowerSeries
    recipe: dict


def _spec_recipe(spec):
    return {
        "zeros": [[z.real, z.imag] for z in spec.zeros],
        "rotation": [spec.rotation.real, spec.rotation.imag],
        "prepend_z": spec.prepend_z,
    }


@lru_cache(maxsize=4096)
def class_b_sample(seed: int, index: int, order: int) -> Sample:
    """A function in B: either a Blaschke product, or a Moebius map after a Schwarz map.

    The second kind gives ``|a_0|`` spread uniformly over ``[0, 1)``.
    """
    rng = sample_rng(seed, STREAM_CLASS_B, index)
    if rng.uniform() < 0.5:
        spec = random_blaschke_spec(rng, prepend_z=False)
        return Sample(blaschke_series(spec, order), {"kind": "blaschke", **_spec_recipe(spec)})
    c = float(rng.uniform(0.0, 1.0))
    spec = random_blaschke_spec(rng, prepend_z=True)
    f = compose(moebius_series(MoebiusParam(c), order), blaschke_series(spec, order))
    return Sample(f, {"kind": "moebius_of_schwarz", "a": c, **_spec_recipe(spec)})


@lru_cache(maxsize=4096)
def schwarz_sample(seed: int, index: int, order: int) -> Sample:
    rng = sample_rng(seed, STREAM_SCHWARZ, index)
    spec = random_blaschke_spec(rng, prepend_z=True)
    return Sample(blaschke_series(spec, order), {"kind": "schwarz", **_spec_recipe(spec)})


def blaschke_sample(seed: int, index: int, order: int) -> Sample:
    """Plain Blaschke product drawn from the class-B stream (used for multipliers)."""
    rng = sample_rng(seed, STREAM_CLASS_B, index)
    spec = random_blaschke_spec(rng, prepend_z=False)
    return Sample(blaschke_series(spec, order), {"kind": "blaschke", **_spec_recipe(spec)})


def random_polynomial(seed: int, index: int, order: int) -> Sample:
    """Degree uniform in ``1..12``, coefficients uniform in the unit disk."""
    rng = sample_rng(seed, STREAM_POLY, index)
    degree = int(rng.integers(1, MAX_POLY_DEGREE + 1))
    coeffs = [random_disk_point(rng) for _ in range(degree + 1)]
    series = polynomial_series(coeffs, max(order, degree))
    return Sample(series, {"kind": "polynomial", "coeffs": [[c.real, c.imag] for c in coeffs]})


def random_index(seed: int, index: int, upper: int) -> int:
    """Integer uniform in ``0..upper`` for the draw ``index``."""
    return int(sample_rng(seed, STREAM_INDEX, index).integers(0, upper + 1))
