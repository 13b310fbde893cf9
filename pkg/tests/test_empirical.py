"""Empirical estimators from order statistics."""

import math

import numpy as np
import pytest

from gwentropy import (
    EntropyOrder,
    EstimatorVariant,
    Sample,
    empirical_gwfe,
    empirical_gwse,
    gwse,
    sample,
)
from gwentropy.distributions import Exponential, SeededSampler, Uniform
from gwentropy.errors import DegenerateSampleError, GwentropyError

ORD = EntropyOrder(0.26, 1.25)


# ---------- Sample container ----------


def test_sample_sorts_and_freezes():
    s = Sample([2.0, 0.5, 1.0])
    np.testing.assert_array_equal(s.values, [0.5, 1.0, 2.0])
    assert s.n == 3 and len(s) == 3
    with pytest.raises(ValueError):
        s.values[0] = 9.0  # read-only view


def test_sample_validation():
    with pytest.raises(GwentropyError):
        Sample([])
    with pytest.raises(GwentropyError):
        Sample([1.0, -0.2])
    with pytest.raises(GwentropyError):
        Sample([1.0, math.nan])
    with pytest.raises(GwentropyError):
        Sample([1.0, math.inf])


def test_sample_scaled():
    s = Sample([1.0, 3.0]).scaled(2.0)
    np.testing.assert_array_equal(s.values, [2.0, 6.0])
    with pytest.raises(GwentropyError):
        Sample([1.0]).scaled(0.0)


def test_sample_from_distribution_is_seeded():
    a = sample(Exponential(1.0), 50, SeededSampler(7, 0))
    b = sample(Exponential(1.0), 50, SeededSampler(7, 0))
    np.testing.assert_array_equal(a.values, b.values)


# ---------- survival-side estimator ----------


def test_two_point_sample_frozen():
    # gaps {0, 2}: single gap of length 2 at survival level 1/2, weighted by
    # the midpoint, so the inner sum is 2 * (1/2)**gamma * (0 + 2) / 2
    s = Sample([0.0, 2.0])
    g = ORD.gamma
    expected = math.log(2.0 * 0.5**g) / ORD.delta
    assert empirical_gwse(s, ORD) == pytest.approx(expected, rel=1e-12)


def test_three_point_sample_frozen():
    # hand-computed: gaps (1,2] and (2,4] at levels 2/3 and 1/3
    s = Sample([1.0, 2.0, 4.0])
    g = ORD.gamma
    inner = (2.0 / 3.0) ** g * (2.0**2 - 1.0**2) / 2.0 + (1.0 / 3.0) ** g * (
        4.0**2 - 2.0**2
    ) / 2.0
    assert empirical_gwse(s, ORD) == pytest.approx(math.log(inner) / ORD.delta, rel=1e-12)


def test_full_step_adds_leading_half_square():
    # the two variants differ by exactly x_(1)**2 / 2 inside the log
    s = Sample([1.0, 2.0, 4.0])
    gaps = math.exp(ORD.delta * empirical_gwse(s, ORD, EstimatorVariant.GAPS_ONLY))
    full = math.exp(ORD.delta * empirical_gwse(s, ORD, EstimatorVariant.FULL_STEP))
    assert full - gaps == pytest.approx(1.0**2 / 2.0, rel=1e-12)


def test_variants_coincide_when_sample_starts_at_zero():
    s = Sample([0.0, 1.0, 3.0])
    a = empirical_gwse(s, ORD, EstimatorVariant.GAPS_ONLY)
    b = empirical_gwse(s, ORD, EstimatorVariant.FULL_STEP)
    assert a == pytest.approx(b, rel=1e-14)


def test_ties_are_harmless():
    s = Sample([1.0, 1.0, 1.0, 2.0])
    assert math.isfinite(empirical_gwse(s, ORD))


def test_degenerate_sample_raises():
    with pytest.raises(DegenerateSampleError):
        empirical_gwse(Sample([1.5, 1.5, 1.5]), ORD)  # no spread at all


def test_minimum_size():
    with pytest.raises(GwentropyError):
        empirical_gwse(Sample([1.0]), ORD)


def test_scale_equivariance():
    rng = SeededSampler(3, 1).generator()
    s = Sample(Exponential(1.0).sample_values(40, rng))
    for c in (0.2, 3.0, 17.5):
        lhs = empirical_gwse(s.scaled(c), ORD)
        rhs = empirical_gwse(s, ORD) + 2.0 * math.log(c) / ORD.delta
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_estimator_tracks_truth_loosely():
    # characterization, not a convergence theorem: at n = 5000 the remaining
    # bias of the gap estimator for a unit-rate exponential sits near 0.076
    # because the top spacing truncates the integral at survival level 1/n
    o = ORD
    truth = float(gwse(Exponential(1.0), o))
    errs = []
    for rep in range(20):
        rng = SeededSampler(515, rep).generator()
        s = Sample(Exponential(1.0).sample_values(5000, rng))
        errs.append(abs(empirical_gwse(s, o) - truth))
    mean_err = float(np.mean(errs))
    assert 0.05 < mean_err < 0.11


def test_estimator_bias_shrinks_with_n():
    o = ORD
    truth = float(gwse(Exponential(1.0), o))

    def mean_abs_err(n):
        errs = []
        for rep in range(10):
            rng = SeededSampler(99, 1000 + rep).generator()
            s = Sample(Exponential(1.0).sample_values(n, rng))
            errs.append(abs(empirical_gwse(s, o) - truth))
        return float(np.mean(errs))

    assert mean_abs_err(40_000) < mean_abs_err(400)


# ---------- failure-side estimator ----------


def test_failure_estimator_frozen():
    # weights climb with the empirical cdf: ((i+1)/n)**gamma on gap i
    s = Sample([1.0, 2.0, 4.0])
    g = ORD.gamma
    inner = (1.0 / 3.0) ** g * (2.0**2 - 1.0**2) / 2.0 + (2.0 / 3.0) ** g * (
        4.0**2 - 2.0**2
    ) / 2.0
    assert empirical_gwfe(s, ORD) == pytest.approx(math.log(inner) / ORD.delta, rel=1e-12)


def test_failure_estimator_tracks_uniform():
    from gwentropy import gwfe

    o = ORD
    truth = float(gwfe(Uniform(0.0, 1.0), o))
    rng = SeededSampler(21, 4).generator()
    s = Sample(Uniform(0.0, 1.0).sample_values(20_000, rng))
    assert abs(empirical_gwfe(s, o) - truth) < 0.05


def test_failure_estimator_variants_coincide():
    s = Sample([1.0, 2.0, 4.0])
    a = empirical_gwfe(s, ORD, EstimatorVariant.GAPS_ONLY)
    b = empirical_gwfe(s, ORD, EstimatorVariant.FULL_STEP)
    assert a == b
