import copy
import hashlib
import json

from sharpsens.base import ConfigurationError


COMMANDS = ('bound', 'sweep', 'simulate', 'oracle', 'validate')

_FIT_KEYS = {
    'n_x_bins': {'type': 'integer', 'default': 20},
    'knn_k': {'type': 'integer', 'default': 500},
    'min_cell_count': {'type': 'integer', 'default': 30},
    'smoothing': {'type': 'number', 'default': 1.},
    'propensity_clip': {'type': 'number', 'default': 1e-3},
    'a_bandwidth': {'type': 'number', 'default': .1}}

_SCM_KEYS = {
    'preset': {'type': 'string',
               'choices': ['setting_i', 'setting_ii', 'setting_iii',
                           'setting_i_weighted']},
    'treatment_kind': {'type': 'string', 'choices': ['binary', 'continuous'],
                       'default': 'binary'},
    'gamma_m1': {'type': 'number'},
    'gamma_m2': {'type': 'number'},
    'gamma_y': {'type': 'number'},
    'rho_m1': {'type': 'number'},
    'rho_m2': {'type': 'number'},
    'rho_y': {'type': 'number'},
    'weighted': {'type': 'boolean'},
    'beta_base': {'type': 'number'},
    'n': {'type': 'integer', 'default': 50000},
    'mediators': {'type': 'array', 'items': 'string'}}

_DATA_KEYS = {
    'path': {'type': 'string', 'required': True},
    'x': {'type': 'array', 'items': 'string', 'default': ['x']},
    'a': {'type': 'string', 'default': 'a'},
    'mediators': {'type': 'array', 'items': 'string', 'default': []},
    'y': {'type': 'string', 'default': 'y'},
    'treatment_kind': {'type': 'string',
                       'choices': ['discrete', 'binary', 'continuous'],
                       'default': 'discrete'},
    'outcome_kind': {'type': 'string', 'choices': ['continuous', 'discrete'],
                     'default': 'continuous'}}

_QUERY_KEYS = {
    'x': {'type': 'array'},
    'x_grid': {'type': 'integer'},
    'x_range': {'type': 'array', 'items': 'number', 'default': [-1., 1.]},
    'treatments': {'type': 'array'},
    'contrast': {'type': 'array'},
    'functional': {'type': 'any', 'default': 'expectation'},
    'average': {'type': 'boolean', 'default': False},
    'average_sample': {'type': 'integer', 'default': 200}}

CONFIG_SCHEMA = {
    'command': {'type': 'string', 'choices': list(COMMANDS)},
    'seed': {'type': 'integer', 'default': 0},
    'threads': {'type': 'integer', 'default': 1},
    'output': {'type': 'string'},
    'verbose': {'type': 'boolean', 'default': False},
    'k': {'type': 'integer', 'default': 10000},
    'data': {'type': 'object', 'keys': _DATA_KEYS},
    'scm': {'type': 'object', 'keys': _SCM_KEYS},
    'fit': {'type': 'object', 'keys': _FIT_KEYS},
    'sensitivity': {'type': 'object'},
    'query': {'type': 'object', 'keys': _QUERY_KEYS},
    'bootstrap': {'type': 'object', 'keys': {
        'replicates': {'type': 'integer', 'default': 0},
        'level': {'type': 'number', 'default': .95}}},
    'sweep': {'type': 'object', 'keys': {
        'node': {'type': 'string', 'required': True},
        'gammas': {'type': 'array', 'items': 'number', 'required': True}}},
    'oracle': {'type': 'object', 'keys': {
        'nodes': {'type': 'array', 'items': 'string',
                  'default': ['M1', 'M2', 'Y']},
        'x_grid': {'type': 'integer', 'default': 21},
        'method': {'type': 'string', 'choices': ['exact', 'monte_carlo'],
                   'default': 'exact'},
        'n_mc': {'type': 'integer', 'default': 100000}}},
    'validate': {'type': 'object', 'keys': {
        'x_grid': {'type': 'integer', 'default': 21},
        'gamma_factor': {'type': 'number', 'default': 1.05},
        'n_mc': {'type': 'integer', 'default': 100000},
        'delta': {'type': 'number', 'default': .05},
        'gammas': {'type': 'array', 'items': 'number',
                   'default': [1.2, 1.5, 2.]}}},
}

_TYPES = {'string': (str,), 'integer': (int,), 'number': (int, float),
          'boolean': (bool,), 'array': (list,), 'object': (dict,)}


def _check_type(value, type_name, path):
    if type_name == 'any':
        return
    if isinstance(value, bool) and type_name in ('integer', 'number'):
        raise ConfigurationError("{} must be of type {}".format(path,
                                                                type_name))
    if not isinstance(value, _TYPES[type_name]):
        raise ConfigurationError("{} must be of type {}, got {!r}".format(
            path, type_name, value))


def check_against_schema(document, schema, path='config'):
    r"""
    Validates a configuration mapping against a schema and fills in the
    defaults.

    Parameters
    ----------
    document : `dict`
        The configuration.
    schema : `dict`
        Maps allowed keys to ``{'type', 'required', 'default', 'choices',
        'items', 'keys'}`` rules.
    path : `str`, optional
        The location used in error messages.

    Returns
    -------
    resolved : `dict`
        A copy of the configuration with defaults filled in.

    Raises
    ------
    ConfigurationError
        unknown key, missing key, wrong type or value outside the choices
    """
    _check_type(document, 'object', path)
    unknown = sorted(set(document) - set(schema))
    if unknown:
        raise ConfigurationError("unknown keys in {}: {}".format(path,
                                                                 unknown))
    resolved = {}
    for key, rule in sorted(schema.items()):
        where = '{}.{}'.format(path, key)
        if key not in document:
            if rule.get('required'):
                raise ConfigurationError("missing required key "
                                         "{}".format(where))
            if 'default' in rule:
                resolved[key] = copy.deepcopy(rule['default'])
            continue
        value = document[key]
        _check_type(value, rule['type'], where)
        if 'choices' in rule and value not in rule['choices']:
            raise ConfigurationError("{} must be one of {}, got {!r}".format(
                where, rule['choices'], value))
        if 'items' in rule:
            for i, item in enumerate(value):
                _check_type(item, rule['items'], '{}[{}]'.format(where, i))
        if 'keys' in rule:
            value = check_against_schema(value, rule['keys'], where)
        resolved[key] = copy.deepcopy(value)
    return resolved


def config_hash(resolved):
    r"""
    SHA-256 of the canonical JSON form of a resolved configuration.
    """
    canonical = json.dumps(resolved, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def schema_document():
    r"""
    The configuration schema as a JSON-serialisable document.
    """
    return json.loads(json.dumps(CONFIG_SCHEMA))


class RunConfig(object):
    r"""
    A validated run configuration with command line overrides applied.

    Parameters
    ----------
    document : `dict`
        The raw configuration.
    command : `str` or ``None``, optional
        Overrides ``document['command']``.
    seed, threads : `int` or ``None``, optional
        Override the corresponding keys.
    output : `str` or ``None``, optional
        Overrides the output path.
    verbose : `bool` or ``None``, optional
        Overrides the verbosity.

    Raises
    ------
    ConfigurationError
        invalid configuration
    """
    def __init__(self, document, command=None, seed=None, threads=None,
                 output=None, verbose=None):
        document = dict(document)
        for key, value in (('command', command), ('seed', seed),
                           ('threads', threads), ('output', output),
                           ('verbose', verbose)):
            if value is not None:
                document[key] = value
        resolved = check_against_schema(document, CONFIG_SCHEMA)
        if 'command' not in resolved:
            raise ConfigurationError("no command given")
        if resolved['threads'] < 1:
            raise ConfigurationError("config.threads must be >= 1")
        if resolved['k'] < 1:
            raise ConfigurationError("config.k must be >= 1")
        if 'data' in resolved and 'scm' in resolved:
            raise ConfigurationError("config.data and config.scm are "
                                     "mutually exclusive")
        self._resolved = resolved
        # output location and verbosity do not change the results
        self._provenance = {k: v for k, v in resolved.items()
                            if k not in ('output', 'verbose', 'threads')}
        self.hash = config_hash(self._provenance)

    @classmethod
    def from_file(cls, path, **overrides):
        r"""
        Loads a JSON configuration file.

        Raises
        ------
        ConfigurationError
            the file cannot be read or parsed
        """
        try:
            with open(path) as f:
                document = json.load(f)
        except (IOError, OSError, ValueError) as e:
            raise ConfigurationError("cannot read config {}: {}".format(path,
                                                                        e))
        return cls(document, **overrides)

    def __getitem__(self, key):
        return self._resolved[key]

    def get(self, key, default=None):
        return self._resolved.get(key, default)

    def section(self, key):
        r"""
        A resolved section, filled with its defaults when absent.
        """
        if key in self._resolved:
            return self._resolved[key]
        rule = CONFIG_SCHEMA[key]
        return check_against_schema({}, rule.get('keys', {}),
                                    'config.' + key) if 'keys' in rule else {}

    @property
    def command(self):
        return self._resolved['command']

    @property
    def seed(self):
        return self._resolved['seed']

    @property
    def threads(self):
        return self._resolved['threads']

    @property
    def k(self):
        return self._resolved['k']

    @property
    def output(self):
        return self._resolved.get('output')

    @property
    def verbose(self):
        return self._resolved['verbose']

    def to_dict(self):
        return copy.deepcopy(self._resolved)

    def provenance(self):
        r"""
        The resolved configuration without the keys that cannot change the
        results (output, verbose, threads). This is what `hash` digests.
        """
        return copy.deepcopy(self._provenance)
