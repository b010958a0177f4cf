import numpy as np
from numpy.testing import assert_allclose
import pandas as pd
import pytest

from sharpsens.base import CellFallbackWarning, DataError
from sharpsens.estimate import FitConfig, fit_propensity
from sharpsens.synth import sample_dataset, ScmConfig


def test_constant_propensity():
    rng = np.random.default_rng(0)
    n = 200000
    data = pd.DataFrame({'x': rng.uniform(-1., 1., n),
                         'a': rng.binomial(1, .5, n)})
    propensity = fit_propensity(data)
    for x in np.linspace(-.95, .95, 20):
        assert abs(propensity(1, x) - .5) <= .02


def test_setting_i_propensity_increasing():
    data = sample_dataset(ScmConfig.from_preset('setting_i', 'binary'), 50000)
    propensity = fit_propensity(data)
    values = [propensity(1, x) for x in (-.9, -.5, 0., .5, .9)]
    assert np.all(np.diff(values) > 0)


def test_clipping():
    data = pd.DataFrame({'x': np.linspace(-1., 1., 200),
                         'a': np.r_[np.zeros(100, int), np.ones(100, int)]})
    propensity = fit_propensity(data, cfg=FitConfig(n_x_bins=2))
    assert_allclose(propensity(1, .9), 1. - 1e-3)
    assert_allclose(propensity(0, .9), 1e-3)


def test_empty_bin_falls_back_to_marginal():
    x = np.r_[np.linspace(-1., -.6, 50), np.linspace(.6, 1., 50)]
    data = pd.DataFrame({'x': x, 'a': (x > 0).astype(int)})
    propensity = fit_propensity(data, cfg=FitConfig(n_x_bins=10))
    with pytest.warns(CellFallbackWarning):
        assert_allclose(propensity(1, 0.), .5)
    assert propensity.flags


def test_unseen_treatment_and_continuous():
    data = pd.DataFrame({'x': [0., 1.], 'a': [0, 1]})
    with pytest.raises(DataError):
        fit_propensity(data)(2, 0.)
    with pytest.raises(ValueError):
        fit_propensity(data, treatment_kind='continuous')
