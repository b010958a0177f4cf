from __future__ import division
from collections import OrderedDict
import numpy as np
import pandas as pd
from scipy.special import expit

from sharpsens.base import DataError, rng_for
from sharpsens.checks import check_positive_int


BINARY = 'binary'
CONTINUOUS = 'continuous'

SETTINGS = ('setting_i', 'setting_ii', 'setting_iii', 'setting_i_weighted')

# (gamma_m1, gamma_m2, gamma_y, rho_m1, rho_m2, rho_y)
PRESETS = {('setting_i', BINARY): (0., 0., 1.5, .2, .2, 2.),
           ('setting_i', CONTINUOUS): (0., 0., 1.5, .2, .2, 1.),
           ('setting_i_weighted', CONTINUOUS): (0., 0., 1.5, .2, .2, 1.),
           ('setting_ii', BINARY): (1.5, 0., 1.5, 1., .2, 1.),
           ('setting_ii', CONTINUOUS): (1.5, 0., 1.5, 1., .2, 1.),
           ('setting_iii', BINARY): (1.5, 1.5, 1.5, .2, .2, 1.),
           ('setting_iii', CONTINUOUS): (1.5, 1.5, 1.5, .2, .2, 1.)}

PRESET_MEDIATORS = {'setting_i': (),
                    'setting_i_weighted': (),
                    'setting_ii': ('M1',),
                    'setting_iii': ('M1', 'M2')}

DEFAULT_TREATMENTS = {('setting_i', BINARY): (1,),
                      ('setting_ii', BINARY): (1, 0),
                      ('setting_iii', BINARY): (1, 0, 0),
                      ('setting_i', CONTINUOUS): (.6,),
                      ('setting_i_weighted', CONTINUOUS): (.6,),
                      ('setting_ii', CONTINUOUS): (.9, .5),
                      ('setting_iii', CONTINUOUS): (.2, .4, .5)}

MEDIATOR_COLUMNS = OrderedDict([('M1', 'm1'), ('M2', 'm2')])
CONFOUNDER_COLUMNS = OrderedDict([('M1', 'u_m1'), ('M2', 'u_m2'),
                                  ('Y', 'u_y')])
OBSERVED_COLUMNS = ('x', 'a', 'm1', 'm2', 'y')
ORACLE_COLUMNS = ('u_m1', 'u_m2', 'u_y')


class ScmConfig(object):
    r"""
    Parameters of the synthetic structural causal model with covariate
    ``X ~ U[-1, 1]``, binary hidden confounders ``U_M1, U_M2, U_Y``, a
    binary or continuous treatment, two binary mediators and a continuous
    outcome.

    Parameters
    ----------
    treatment_kind : `str`, optional
        ``'binary'`` or ``'continuous'``.
    gamma_m1, gamma_m2, gamma_y : `float`, optional
        Confounding strengths of the hidden confounders on the treatment.
    rho_m1, rho_m2, rho_y : `float`, optional
        Noise levels (``> 0``) of the mediators and the outcome.
    weighted : `bool`, optional
        If ``True``, the hidden confounders only act on the treatment of
        units with ``x < 0``.
    beta_base : `float`, optional
        The base of the Beta parameter ``alpha = beta_base + x + ...`` of
        continuous treatments.
    seed : `int`, optional
        The root seed of all random streams.
    preset : `str` or ``None``, optional
        The name of the preset the config was built from.
    """
    def __init__(self, treatment_kind=BINARY, gamma_m1=0., gamma_m2=0.,
                 gamma_y=0., rho_m1=.2, rho_m2=.2, rho_y=1., weighted=False,
                 beta_base=2., seed=0, preset=None):
        if treatment_kind not in (BINARY, CONTINUOUS):
            raise ValueError("treatment_kind must be 'binary' or "
                             "'continuous', got {!r}".format(treatment_kind))
        for name, rho in (('rho_m1', rho_m1), ('rho_m2', rho_m2),
                          ('rho_y', rho_y)):
            if not rho > 0:
                raise ValueError("{} must be > 0".format(name))
        for name, gamma in (('gamma_m1', gamma_m1), ('gamma_m2', gamma_m2),
                            ('gamma_y', gamma_y)):
            if not np.isfinite(gamma):
                raise ValueError("{} must be finite".format(name))
        if preset is not None and preset not in SETTINGS:
            raise ValueError("unknown preset {!r}".format(preset))
        self.treatment_kind = treatment_kind
        self.gamma_m1 = float(gamma_m1)
        self.gamma_m2 = float(gamma_m2)
        self.gamma_y = float(gamma_y)
        self.rho_m1 = float(rho_m1)
        self.rho_m2 = float(rho_m2)
        self.rho_y = float(rho_y)
        self.weighted = bool(weighted)
        self.beta_base = float(beta_base)
        self.seed = int(seed)
        self.preset = preset

    @classmethod
    def from_preset(cls, name, treatment_kind=BINARY, seed=0, **overrides):
        r"""
        Builds the config of a named setting: ``'setting_i'``,
        ``'setting_ii'``, ``'setting_iii'`` or the continuous-only
        ``'setting_i_weighted'``.

        Raises
        ------
        ValueError
            unknown preset
        """
        if (name, treatment_kind) not in PRESETS:
            raise ValueError("unknown preset {!r} for {} "
                             "treatment".format(name, treatment_kind))
        params = dict(zip(('gamma_m1', 'gamma_m2', 'gamma_y', 'rho_m1',
                           'rho_m2', 'rho_y'),
                          PRESETS[(name, treatment_kind)]))
        params['weighted'] = name == 'setting_i_weighted'
        params.update(overrides)
        return cls(treatment_kind=treatment_kind, seed=seed, preset=name,
                   **params)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if d.get('preset') is not None:
            name = d.pop('preset')
            return cls.from_preset(name, **d)
        d.pop('preset', None)
        return cls(**d)

    def to_dict(self):
        return OrderedDict([('preset', self.preset),
                            ('treatment_kind', self.treatment_kind),
                            ('gamma_m1', self.gamma_m1),
                            ('gamma_m2', self.gamma_m2),
                            ('gamma_y', self.gamma_y),
                            ('rho_m1', self.rho_m1),
                            ('rho_m2', self.rho_m2),
                            ('rho_y', self.rho_y),
                            ('weighted', self.weighted),
                            ('beta_base', self.beta_base),
                            ('seed', self.seed)])

    def with_seed(self, seed):
        d = self.to_dict()
        d['seed'] = seed
        return ScmConfig(**d)

    @property
    def gammas(self):
        r"""
        The confounding strength per node.

        :type: `dict`
        """
        return {'M1': self.gamma_m1, 'M2': self.gamma_m2, 'Y': self.gamma_y}

    @property
    def mediator_labels(self):
        r"""
        The mediators of the preset's causal graph, empty without preset.

        :type: `tuple` of `str`
        """
        return PRESET_MEDIATORS.get(self.preset, ())

    @property
    def default_treatments(self):
        r"""
        The treatment sequence studied for the preset.

        :type: `tuple`
        """
        if self.preset is None:
            return (1,) if self.treatment_kind == BINARY else (.5,)
        return DEFAULT_TREATMENTS[(self.preset, self.treatment_kind)]

    def confounding_weight(self, x):
        x = np.asarray(x, dtype=float)
        if self.weighted:
            return (x < 0).astype(float)
        return np.ones_like(x)

    def treatment_logit(self, x, u_m1, u_m2, u_y):
        r"""
        ``3x + w(x) (gamma_m1 u_m1 + gamma_m2 u_m2 + gamma_y u_y)`` for
        binary treatments.
        """
        return 3. * np.asarray(x) + self.confounding_weight(x) * (
            self.gamma_m1 * u_m1 + self.gamma_m2 * u_m2 + self.gamma_y * u_y)

    def beta_parameter(self, x, u_m1, u_m2, u_y):
        r"""
        ``beta_base + x + w(x) sum_W gamma_W (u_W - 0.5)`` for continuous
        treatments.

        Raises
        ------
        DataError
            the Beta parameter is not positive
        """
        alpha = self.beta_base + np.asarray(x) + self.confounding_weight(x) * (
            self.gamma_m1 * (np.asarray(u_m1) - .5) +
            self.gamma_m2 * (np.asarray(u_m2) - .5) +
            self.gamma_y * (np.asarray(u_y) - .5))
        if np.any(alpha <= 0):
            raise DataError("invalid Beta parameter (min {:.4g} <= 0); "
                            "increase beta_base".format(np.min(alpha)))
        return alpha

    def __repr__(self):
        return 'ScmConfig({})'.format(dict(self.to_dict()))


def _branch(x, a):
    return a * np.sin(x) + (1 - a) * np.sin(4 * x)


def mediator_1(x, a, u_m1, eps, rho):
    return (_branch(x, a) + rho * ((u_m1 - .5) + eps) > 0).astype(int)


def mediator_2(x, a, m1, u_m2, eps, rho):
    return ((2 * m1 - 1) * _branch(x, a) + rho * ((u_m2 - .5) + eps) >
            0).astype(int)


def outcome_mean(x, a, m1, m2):
    r"""
    The noise-free part of the outcome assignment.
    """
    s1, s4, s8 = np.sin(x), np.sin(4 * x), np.sin(8 * x)
    return (a * m1 * m2 * s1 + (1 - a) * m1 * m2 * s4 +
            a * m1 * (1 - m2) * s8 + (1 - a) * m1 * (1 - m2) * s1 -
            a * (1 - m1) * m2 * s1 - (1 - a) * (1 - m1) * m2 * s4 -
            a * (1 - m1) * (1 - m2) * s8 -
            (1 - a) * (1 - m1) * (1 - m2) * s1)


def outcome(x, a, m1, m2, u_y, eps, rho):
    return outcome_mean(x, a, m1, m2) + rho * ((u_y - .5) + eps)


def sample_treatment(config, x, u_m1, u_m2, u_y, rng):
    if config.treatment_kind == BINARY:
        p = expit(config.treatment_logit(x, u_m1, u_m2, u_y))
        return rng.binomial(1, p)
    alpha = config.beta_parameter(x, u_m1, u_m2, u_y)
    return rng.beta(alpha, alpha)


def sample_dataset(config, n):
    r"""
    Draws ``n`` i.i.d. rows from the configured SCM, including the hidden
    confounders ``u_m1, u_m2, u_y``.

    Every column uses its own random stream derived from ``config.seed``.

    Parameters
    ----------
    config : `ScmConfig`
        The SCM parameters.
    n : `int`
        The number of rows.

    Returns
    -------
    dataset : `pandas.DataFrame`
        Columns ``x, a, m1, m2, y, u_m1, u_m2, u_y``.

    Raises
    ------
    DataError
        invalid Beta parameter
    """
    n = check_positive_int(n, 'n')

    def stream(name):
        return rng_for(config.seed, name)

    x = stream('x').uniform(-1., 1., n)
    u = {name: stream(name).binomial(1, .5, n) for name in ORACLE_COLUMNS}
    a = sample_treatment(config, x, u['u_m1'], u['u_m2'], u['u_y'],
                         stream('a'))
    m1 = mediator_1(x, a, u['u_m1'], stream('eps_m1').standard_normal(n),
                    config.rho_m1)
    m2 = mediator_2(x, a, m1, u['u_m2'], stream('eps_m2').standard_normal(n),
                    config.rho_m2)
    y = outcome(x, a, m1, m2, u['u_y'], stream('eps_y').standard_normal(n),
                config.rho_y)
    columns = OrderedDict([('x', x), ('a', a), ('m1', m1), ('m2', m2),
                           ('y', y)])
    columns.update((name, u[name]) for name in ORACLE_COLUMNS)
    return pd.DataFrame(columns)


def write_csv(dataset, path, oracle=True):
    r"""
    Writes a dataset with a header row and 17 significant digits.

    Parameters
    ----------
    dataset : `pandas.DataFrame`
        The dataset.
    path : `str`
        The output path.
    oracle : `bool`, optional
        If ``False``, the hidden confounder columns are left out.
    """
    columns = [c for c in OBSERVED_COLUMNS + (ORACLE_COLUMNS if oracle else ())
               if c in dataset.columns]
    dataset.to_csv(path, columns=columns, index=False, float_format='%.17g')


def read_csv(path, columns=None):
    r"""
    Reads a dataset CSV with a header row.

    Raises
    ------
    DataError
        the dataset is empty or misses a column
    """
    dataset = pd.read_csv(path, float_precision='round_trip')
    if dataset.empty:
        raise DataError("the dataset {} is empty".format(path))
    missing = [c for c in (columns or ()) if c not in dataset.columns]
    if missing:
        raise DataError("the dataset {} misses columns {}".format(path,
                                                                  missing))
    return dataset
