import numpy as np
from numpy.testing import assert_allclose, assert_equal
import pytest

from sharpsens.base import DataError
from sharpsens.synth import (PRESETS, read_csv, sample_dataset, ScmConfig,
                             write_csv)


def test_presets():
    assert_equal(PRESETS[('setting_i', 'binary')],
                 (0., 0., 1.5, .2, .2, 2.))
    config = ScmConfig.from_preset('setting_iii', 'continuous', seed=3)
    assert_equal(config.gammas, {'M1': 1.5, 'M2': 1.5, 'Y': 1.5})
    assert_equal(config.mediator_labels, ('M1', 'M2'))
    assert_equal(config.seed, 3)
    assert ScmConfig.from_preset('setting_i_weighted', 'continuous').weighted


def test_unknown_preset():
    with pytest.raises(ValueError):
        ScmConfig.from_preset('setting_i_weighted', 'binary')
    with pytest.raises(ValueError):
        ScmConfig.from_dict({'preset': 'setting_iv'})


def test_from_dict_overrides():
    config = ScmConfig.from_dict({'preset': 'setting_ii',
                                  'treatment_kind': 'continuous',
                                  'beta_base': 3.5, 'seed': 1})
    assert_equal(config.beta_base, 3.5)
    assert_equal(config.gamma_m1, 1.5)
    assert_equal(ScmConfig.from_dict(config.to_dict()).to_dict(),
                 config.to_dict())


def test_invalid_noise_level():
    with pytest.raises(ValueError):
        ScmConfig(rho_y=0.)


def test_sample_dataset_columns_and_determinism():
    config = ScmConfig.from_preset('setting_iii', 'binary', seed=7)
    first = sample_dataset(config, 1000)
    second = sample_dataset(config, 1000)
    assert_equal(list(first.columns),
                 ['x', 'a', 'm1', 'm2', 'y', 'u_m1', 'u_m2', 'u_y'])
    assert_equal(first.values, second.values)
    assert not np.array_equal(sample_dataset(config.with_seed(8), 1000).values,
                              first.values)
    assert set(np.unique(first['a'])) <= {0, 1}
    assert np.all((first['x'] >= -1) & (first['x'] <= 1))


def test_no_confounding_makes_treatment_independent():
    data = sample_dataset(ScmConfig(seed=0), 50000)
    p = data['a'].mean()
    for column in ('u_m1', 'u_m2', 'u_y'):
        for u in (0, 1):
            assert abs(data.loc[data[column] == u, 'a'].mean() - p) < .02


def test_continuous_treatment_in_unit_interval():
    config = ScmConfig.from_preset('setting_i', 'continuous', seed=2)
    a = sample_dataset(config, 2000)['a'].values
    assert np.all((a > 0) & (a < 1))


def test_invalid_beta_parameter():
    config = ScmConfig.from_preset('setting_ii', 'continuous')
    with pytest.raises(DataError):
        sample_dataset(config, 1000)
    sample_dataset(ScmConfig.from_preset('setting_ii', 'continuous',
                                         beta_base=3.5), 1000)


def test_csv_round_trip(tmp_path):
    data = sample_dataset(ScmConfig.from_preset('setting_ii', 'binary'), 200)
    path = str(tmp_path / 'data.csv')
    write_csv(data, path)
    loaded = read_csv(path, columns=['x', 'a', 'm1', 'y'])
    for column in ('x', 'y'):
        assert_equal(loaded[column].values, data[column].values)
    write_csv(data, path, oracle=False)
    assert 'u_y' not in read_csv(path).columns


def test_read_csv_missing_column(tmp_path):
    path = str(tmp_path / 'data.csv')
    write_csv(sample_dataset(ScmConfig(), 10), path)
    with pytest.raises(DataError):
        read_csv(path, columns=['z'])
