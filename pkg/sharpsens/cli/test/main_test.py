import importlib
import json
from numpy.testing import assert_equal

from sharpsens.base import NumericalError
from sharpsens.cli.main import main, EXIT_NUMERICAL


def write_config(path, document):
    path.write_text(json.dumps(document))
    return str(path)


def test_main_exit_codes(tmp_path):
    good = write_config(tmp_path / 'good.json', {
        'command': 'simulate', 'scm': {'preset': 'setting_i', 'n': 20}})
    assert_equal(main(['simulate', '--config', good,
                       '--output', str(tmp_path / 'data.csv')]), 0)

    unknown = write_config(tmp_path / 'unknown.json', {
        'command': 'simulate', 'scm': {'preset': 'setting_i'}, 'gama': 1})
    assert_equal(main(['simulate', '--config', unknown]), 1)
    assert_equal(main(['simulate']), 1)

    missing = write_config(tmp_path / 'missing.json', {
        'command': 'bound', 'data': {'path': str(tmp_path / 'none.csv')},
        'sensitivity': {'model': 'msm', 'gamma': {'Y': 2.}},
        'query': {'x': [[0.]], 'treatments': [1]}})
    assert_equal(main(['bound', '--config', missing]), 2)


def test_main_numerical_error(tmp_path, monkeypatch):
    def fail(run):
        raise NumericalError('overflow')
    cli_main = importlib.import_module('sharpsens.cli.main')
    monkeypatch.setattr(cli_main, 'run_command', fail)
    config = write_config(tmp_path / 'config.json', {
        'command': 'simulate', 'scm': {'preset': 'setting_i'}})
    assert_equal(main(['simulate', '--config', config]), EXIT_NUMERICAL)
    assert_equal(EXIT_NUMERICAL, 3)


def test_main_schema(capsys):
    assert_equal(main(['schema']), 0)
    document = json.loads(capsys.readouterr().out)
    assert 'sensitivity' in document
