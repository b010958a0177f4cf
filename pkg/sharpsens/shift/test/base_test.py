import numpy as np
from numpy.testing import assert_allclose
import pytest
from scipy import stats

from sharpsens.dist import AnalyticDist, DiscreteDist
from sharpsens.model import RatioBounds, weighted_ratio_bounds
from sharpsens.shift import (LOWER, shift_cdf, shift_discrete, shift_probs,
                             ShiftedCdf, UPPER)


uniform_4 = DiscreteDist([1, 2, 3, 4], [.25] * 4)
bounds_2 = RatioBounds(.5, 2.)


def test_shift_discrete_upper():
    shifted = shift_discrete(uniform_4, bounds_2, UPPER)
    assert_allclose(shifted.probs, [.125, .125, .25, .5], atol=1e-12)


def test_shift_discrete_lower():
    shifted = shift_discrete(uniform_4, bounds_2, LOWER)
    assert_allclose(shifted.probs, [.5, .25, .125, .125], atol=1e-12)


def test_shift_discrete_identity():
    pmf = DiscreteDist([0, 1, 5], [.2, .5, .3])
    for direction in (UPPER, LOWER):
        shifted = shift_discrete(pmf, RatioBounds.identity(), direction)
        assert_allclose(shifted.probs, pmf.probs)


def test_shift_discrete_boundary_cdf_equal_quantile():
    # F(w_2) = c_plus exactly, the straddle branch gives p * first
    pmf = DiscreteDist([0, 1, 2], [1. / 3, 1. / 3, 1. / 3])
    shifted = shift_probs(pmf.probs, bounds_2, UPPER)
    assert_allclose(shifted, [1. / 6, 1. / 6, 2. / 3], atol=1e-12)


def test_shift_discrete_requires_pmf():
    with pytest.raises(TypeError):
        shift_discrete([.5, .5], bounds_2, UPPER)


def test_shift_discrete_normalization_and_containment():
    rng = np.random.default_rng(0)
    for _ in range(10000):
        n = rng.integers(2, 21)
        probs = rng.dirichlet(np.ones(n))
        bounds = weighted_ratio_bounds(rng.uniform(1., 20.),
                                       rng.uniform(0., 1.))
        for direction in (UPPER, LOWER):
            shifted = shift_probs(probs, bounds, direction)
            assert abs(shifted.sum() - 1.) < 1e-12
            assert np.all(shifted >= probs / bounds.s_plus - 1e-12)
            assert np.all(shifted <= probs / bounds.s_minus + 1e-12)


def test_shift_cdf_normal():
    normal = AnalyticDist.standard_normal()
    w = stats.norm.ppf(2. / 3)
    assert_allclose(shift_cdf(normal, bounds_2, UPPER, w), 1. / 3)
    assert_allclose(shift_cdf(normal.cdf, bounds_2, UPPER, 50.), 1.)


def test_shift_cdf_identity():
    w = np.linspace(-3., 3., 13)
    assert_allclose(shift_cdf(stats.norm.cdf, RatioBounds.identity(), UPPER,
                              w), stats.norm.cdf(w))


def test_shift_cdf_stochastic_dominance():
    w = np.linspace(-4., 4., 81)
    f = stats.norm.cdf(w)
    for gamma in (1.5, 3., 10.):
        bounds = weighted_ratio_bounds(gamma, 0.)
        upper = shift_cdf(stats.norm.cdf, bounds, UPPER, w)
        lower = shift_cdf(stats.norm.cdf, bounds, LOWER, w)
        assert np.all(upper <= f + 1e-12)
        assert np.all(f <= lower + 1e-12)


def test_shifted_cdf_quantile_inverts_cdf():
    shifted = ShiftedCdf(AnalyticDist.standard_normal(), bounds_2, UPPER)
    assert_allclose(shifted.quantile(.5), stats.norm.ppf(.75))
    for alpha in (.1, .3, .5, .9):
        assert_allclose(shifted.cdf(shifted.quantile(alpha)), alpha)
