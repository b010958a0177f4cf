from numpy.testing import assert_equal
import pytest

from sharpsens.base import ConfigurationError
from sharpsens.cli import CONFIG_SCHEMA, RunConfig, config_hash, schema_document
from sharpsens.cli.config import check_against_schema


BASE = {'command': 'bound', 'scm': {'preset': 'setting_i', 'n': 1000},
        'sensitivity': {'model': 'msm', 'gamma': {'Y': 2.}}}


def test_defaults_are_filled():
    run = RunConfig(BASE)
    assert_equal(run.seed, 0)
    assert_equal(run.threads, 1)
    assert_equal(run.k, 10000)
    assert_equal(run['scm']['treatment_kind'], 'binary')
    assert_equal(run.section('query')['functional'], 'expectation')
    assert_equal(run.section('bootstrap')['replicates'], 0)
    assert run.output is None


def test_unknown_key_rejected():
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, gama=2.))
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, scm={'preset': 'setting_i', 'gama_y': 1.}))


def test_wrong_types_rejected():
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, seed='1'))
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, k=True))
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, scm={'preset': 'setting_iv'}))
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, sweep={'node': 'Y', 'gammas': ['a']}))


def test_missing_required_key():
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, sweep={'node': 'Y'}))
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, data={'x': ['x']}))


def test_invalid_runs():
    with pytest.raises(ConfigurationError):
        RunConfig({k: v for k, v in BASE.items() if k != 'command'})
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, threads=0))
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, k=0))
    with pytest.raises(ConfigurationError):
        RunConfig(dict(BASE, data={'path': 'data.csv'}))


def test_overrides():
    run = RunConfig(BASE, command='sweep', seed=7, threads=2,
                    output='out.csv', verbose=True)
    assert_equal(run.command, 'sweep')
    assert_equal(run.seed, 7)
    assert_equal(run.threads, 2)
    assert_equal(run.output, 'out.csv')
    assert run.verbose


def test_hash_stability():
    a = RunConfig(BASE)
    b = RunConfig(dict(reversed(list(BASE.items()))))
    assert_equal(a.hash, b.hash)
    assert_equal(len(a.hash), 64)
    # output location, verbosity and threads do not change the hash
    c = RunConfig(BASE, output='somewhere.json', verbose=True, threads=4)
    assert_equal(a.hash, c.hash)
    assert 'output' not in c.provenance()
    assert a.hash != RunConfig(BASE, seed=1).hash
    assert a.hash != RunConfig(dict(BASE, k=500)).hash


def test_config_hash_canonical():
    assert_equal(config_hash({'a': 1, 'b': [1, 2]}),
                 config_hash({'b': [1, 2], 'a': 1}))
    assert config_hash({'a': 1}) != config_hash({'a': 2})


def test_from_file(tmp_path):
    path = tmp_path / 'config.json'
    path.write_text('{"command": "simulate", "scm": {"preset": "setting_ii"}}')
    run = RunConfig.from_file(str(path), seed=3)
    assert_equal(run.command, 'simulate')
    assert_equal(run.seed, 3)
    assert_equal(run['scm']['n'], 50000)


def test_from_file_invalid(tmp_path):
    path = tmp_path / 'config.json'
    path.write_text('{"command": ')
    with pytest.raises(ConfigurationError):
        RunConfig.from_file(str(path))
    with pytest.raises(ConfigurationError):
        RunConfig.from_file(str(tmp_path / 'missing.json'))


def test_check_against_schema_nested_defaults():
    resolved = check_against_schema({'oracle': {'method': 'monte_carlo'}},
                                    CONFIG_SCHEMA)
    assert_equal(resolved['oracle']['method'], 'monte_carlo')
    assert_equal(resolved['oracle']['x_grid'], 21)
    assert 'data' not in resolved


def test_schema_document():
    document = schema_document()
    assert_equal(sorted(document), sorted(CONFIG_SCHEMA))
    assert_equal(document['k']['default'], 10000)
