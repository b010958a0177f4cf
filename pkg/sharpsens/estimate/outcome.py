from __future__ import division
import numpy as np
from sklearn.neighbors import NearestNeighbors

from sharpsens.base import DataError
from sharpsens.checks import check_treatment_kind, check_positive_int, DISCRETE
from sharpsens.dist import SampleDist
from .base import FitConfig, FlagRecorder, check_dataset


def silverman_bandwidth(values):
    r"""
    Silverman's rule ``0.9 min(std, IQR / 1.34) n^(-1/5)``, using the
    standard deviation alone when the IQR vanishes. Zero for constant
    values.
    """
    values = np.asarray(values, dtype=float)
    std = values.std()
    iqr = np.subtract(*np.percentile(values, [75, 25]))
    spread = min(std, iqr / 1.34) if iqr > 0 else std
    return .9 * spread * values.size ** (-.2)


class OutcomeSampler(FlagRecorder):
    r"""
    Draws sorted samples from an estimate of ``P(Y | x, m, a)`` by resampling
    the outcomes of the nearest neighbours of ``(x, a)`` inside the exact
    mediator stratum and adding Gaussian jitter with Silverman's bandwidth
    of the neighbourhood.

    For discrete treatments the stratum also matches ``a`` exactly and only
    the covariates are used as features.
    """
    def __init__(self, data, x_columns, mediator_columns, treatment_column,
                 outcome_column, cfg, treatment_kind):
        x_columns = list(x_columns)
        mediator_columns = list(mediator_columns)
        check_dataset(data, x_columns + mediator_columns +
                      [treatment_column, outcome_column])
        self._init_flags()
        self.cfg = cfg
        self.treatment_kind = treatment_kind
        self.mediator_columns = mediator_columns
        self._features = x_columns + ([] if treatment_kind == DISCRETE
                                      else [treatment_column])
        scale = data[self._features].values.astype(float).std(axis=0)
        self._scale = np.where(scale > 0, scale, 1.)

        keys = mediator_columns + ([treatment_column]
                                   if treatment_kind == DISCRETE else [])
        groups = data.groupby(keys) if keys else [((), data)]
        self._strata = {}
        for key, group in groups:
            key = tuple(key) if isinstance(key, tuple) else (key,)
            features = group[self._features].values.astype(float) / self._scale
            neighbours = NearestNeighbors(
                n_neighbors=min(cfg.knn_k, len(group))).fit(features)
            self._strata[key] = (neighbours,
                                 group[outcome_column].values.astype(float))

    def _stratum(self, m, a):
        key = tuple(m) + ((a,) if self.treatment_kind == DISCRETE else ())
        try:
            return self._strata[key]
        except KeyError:
            raise DataError("empty outcome stratum for mediators {} and "
                            "treatment {!r}".format(tuple(m), a))

    def neighbourhood(self, x, m, a):
        r"""
        The outcomes of the nearest neighbours of ``(x, a)`` in the stratum
        of ``(m, a)``.
        """
        neighbours, outcomes = self._stratum(m, a)
        point = np.atleast_1d(np.asarray(x, dtype=float))
        if self.treatment_kind != DISCRETE:
            point = np.append(point, float(a))
        index = neighbours.kneighbors((point / self._scale)[None, :],
                                      return_distance=False)[0]
        return outcomes[index]

    def __call__(self, x, m, a, k, seed):
        k = check_positive_int(k, 'k')
        outcomes = self.neighbourhood(x, m, a)
        rng = np.random.default_rng(seed)
        draws = rng.choice(outcomes, size=k, replace=True)
        bandwidth = silverman_bandwidth(outcomes)
        if bandwidth > 0:
            draws = draws + rng.normal(0., bandwidth, size=k)
        return SampleDist.from_draws(draws)


def fit_outcome_sampler(data, x_columns=('x',), mediator_columns=(),
                        treatment_column='a', outcome_column='y', cfg=None,
                        treatment_kind='discrete'):
    r"""
    Fits the nearest-neighbour outcome sampler.

    Parameters
    ----------
    data : `pandas.DataFrame`
        The observational data.
    x_columns : `list` of `str`, optional
        The covariate columns.
    mediator_columns : `list` of `str`, optional
        The mediator columns defining the strata.
    treatment_column : `str`, optional
        The treatment column.
    outcome_column : `str`, optional
        The real-valued outcome column.
    cfg : `FitConfig` or ``None``, optional
        The estimator settings.
    treatment_kind : `str`, optional
        ``'discrete'`` or ``'continuous'``.

    Returns
    -------
    sampler : `OutcomeSampler`
        Callable ``(x, m, a, k, seed) -> SampleDist``.

    Raises
    ------
    DataError
        empty dataset
    """
    return OutcomeSampler(data, x_columns, mediator_columns, treatment_column,
                          outcome_column, cfg or FitConfig(),
                          check_treatment_kind(treatment_kind))
