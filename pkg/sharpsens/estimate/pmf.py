from __future__ import division
import numpy as np
import pandas as pd

from sharpsens.base import DataError
from sharpsens.checks import check_treatment_kind, DISCRETE
from sharpsens.dist import DiscreteDist
from .base import FitConfig, CovariateBinner, FlagRecorder, check_dataset


class ConditionalPmf(FlagRecorder):
    r"""
    Frequency estimate of ``P(target | x, m_prev, a)`` from the counts of
    the matching cell (covariate bin, exact previous mediators, exact or
    kernel-weighted treatment) with additive smoothing.

    Cells with fewer than ``cfg.min_cell_count`` (effective) rows fall back
    to the marginal pmf of the target and record a flag.
    """
    def __init__(self, data, target, x_columns, mediator_columns,
                 treatment_column, cfg, treatment_kind, support=None):
        x_columns = list(x_columns)
        mediator_columns = list(mediator_columns)
        check_dataset(data, x_columns + mediator_columns +
                      [treatment_column, target])
        self._init_flags()
        self.target = target
        self.mediator_columns = mediator_columns
        self.cfg = cfg
        self.treatment_kind = treatment_kind

        values = data[target].values
        observed = np.unique(values)
        if support is None:
            support = observed
        support = np.asarray(support)
        if not np.all(np.isin(observed, support)):
            raise DataError("column {!r} has values outside the declared "
                            "support".format(target))
        self.support = support
        self._binner = CovariateBinner(data[x_columns].values, cfg.n_x_bins)
        self._marginal = np.bincount(np.searchsorted(support, values),
                                     minlength=support.size).astype(float)
        self._known = {c: set(np.unique(data[c]).tolist())
                       for c in mediator_columns}

        frame = pd.DataFrame({c: data[c].values for c in mediator_columns})
        frame['_x'] = self._binner.transform(data[x_columns].values)
        frame['_target'] = np.searchsorted(support, values)
        keys = ['_x'] + mediator_columns
        if treatment_kind == DISCRETE:
            frame['_a'] = data[treatment_column].values
            keys.append('_a')
            self._known_treatments = set(np.unique(frame['_a']).tolist())
            table = (frame.groupby(keys + ['_target']).size()
                     .unstack('_target', fill_value=0)
                     .reindex(columns=range(support.size), fill_value=0))
            self._cells = {self._key(k): row.values.astype(float)
                           for k, row in table.iterrows()}
        else:
            frame['_a'] = data[treatment_column].values.astype(float)
            self._cells = {self._key(k): (g['_a'].values, g['_target'].values)
                           for k, g in frame.groupby(keys)}

    @staticmethod
    def _key(k):
        return tuple(k) if isinstance(k, tuple) else (k,)

    def _counts(self, x_code, m_prev, a):
        if self.treatment_kind == DISCRETE:
            counts = self._cells.get((x_code,) + m_prev + (a,))
            if counts is None:
                return np.zeros(self.support.size), 0.
            return counts, counts.sum()
        cell = self._cells.get((x_code,) + m_prev)
        if cell is None:
            return np.zeros(self.support.size), 0.
        treatments, targets = cell
        weights = np.exp(-.5 * ((treatments - a) / self.cfg.a_bandwidth) ** 2)
        total = weights.sum()
        if total <= 0:
            return np.zeros(self.support.size), 0.
        counts = np.bincount(targets, weights=weights,
                             minlength=self.support.size)
        return counts, total ** 2 / np.sum(weights ** 2)

    def __call__(self, x, m_prev, a):
        m_prev = tuple(m_prev)
        if len(m_prev) != len(self.mediator_columns):
            raise ValueError("expected {} previous mediator values, got "
                             "{}".format(len(self.mediator_columns),
                                         len(m_prev)))
        for column, value in zip(self.mediator_columns, m_prev):
            if value not in self._known[column]:
                raise DataError("unseen value {!r} of {!r}".format(value,
                                                                   column))
        if (self.treatment_kind == DISCRETE and
                a not in self._known_treatments):
            raise DataError("unseen treatment value {!r}".format(a))
        x_code = self._binner.code(x)
        counts, n = self._counts(x_code, m_prev, a)
        if n < self.cfg.min_cell_count:
            self._flag('fallback:{}:x_bin={}'.format(self.target, x_code),
                       'cell of {!r} at x bin {} has {:.1f} rows; using the '
                       'marginal pmf'.format(self.target, x_code, n))
            counts = self._marginal
        s = self.cfg.smoothing
        probs = (counts + s) / (counts.sum() + s * self.support.size)
        return DiscreteDist(self.support, probs)


def fit_conditional_pmf(data, target, x_columns=('x',), mediator_columns=(),
                        treatment_column='a', cfg=None,
                        treatment_kind='discrete', support=None):
    r"""
    Fits the conditional pmf of a discrete column given binned covariates,
    previous mediators and the treatment.

    Parameters
    ----------
    data : `pandas.DataFrame`
        The observational data.
    target : `str`
        The discrete target column.
    x_columns : `list` of `str`, optional
        The covariate columns.
    mediator_columns : `list` of `str`, optional
        The previous mediator columns, matched exactly.
    treatment_column : `str`, optional
        The treatment column.
    cfg : `FitConfig` or ``None``, optional
        The estimator settings.
    treatment_kind : `str`, optional
        ``'discrete'`` (exact treatment match) or ``'continuous'`` (Gaussian
        kernel weights of bandwidth ``cfg.a_bandwidth``).
    support : `list` or ``None``, optional
        A declared support, e.g. ``[0, 1]``, instead of the observed values.

    Returns
    -------
    pmf : `ConditionalPmf`
        Callable ``(x, m_prev, a) -> DiscreteDist``.

    Raises
    ------
    DataError
        empty dataset or unseen conditioning category
    """
    return ConditionalPmf(data, target, x_columns, mediator_columns,
                          treatment_column, cfg or FitConfig(),
                          check_treatment_kind(treatment_kind),
                          support=support)
