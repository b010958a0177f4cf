from __future__ import division
import numpy as np

from sharpsens.base import DataError
from sharpsens.checks import check_treatment_kind, DISCRETE
from .base import FitConfig, CovariateBinner, FlagRecorder, check_dataset


class PropensityModel(FlagRecorder):
    r"""
    Binned-covariate frequency estimate of ``P(a | x)`` for discrete
    treatments, clipped to ``[clip, 1 - clip]``. Empty covariate bins use
    the marginal treatment frequencies and record a flag.
    """
    def __init__(self, data, x_columns, treatment_column, cfg):
        x_columns = list(x_columns)
        check_dataset(data, x_columns + [treatment_column])
        self._init_flags()
        self.cfg = cfg
        self._binner = CovariateBinner(data[x_columns].values, cfg.n_x_bins)
        codes = self._binner.transform(data[x_columns].values)
        treatments = data[treatment_column].values
        self._marginal = {a: float(np.mean(treatments == a))
                          for a in np.unique(treatments).tolist()}
        self._bins = {}
        for code in np.unique(codes).tolist():
            in_bin = treatments[codes == code]
            self._bins[code] = {a: float(np.mean(in_bin == a))
                                for a in self._marginal}

    def __call__(self, a, x):
        if a not in self._marginal:
            raise DataError("unseen treatment value {!r}".format(a))
        code = self._binner.code(x)
        frequencies = self._bins.get(code)
        if frequencies is None:
            self._flag('fallback:propensity:x_bin={}'.format(code),
                       'covariate bin {} is empty; using the marginal '
                       'treatment frequency'.format(code))
            frequencies = self._marginal
        clip = self.cfg.propensity_clip
        return float(np.clip(frequencies[a], clip, 1. - clip))


def fit_propensity(data, x_columns=('x',), treatment_column='a', cfg=None,
                   treatment_kind='discrete'):
    r"""
    Fits the propensity ``P(a | x)`` of a discrete treatment.

    Parameters
    ----------
    data : `pandas.DataFrame`
        The observational data.
    x_columns : `list` of `str`, optional
        The covariate columns.
    treatment_column : `str`, optional
        The treatment column.
    cfg : `FitConfig` or ``None``, optional
        The estimator settings.
    treatment_kind : `str`, optional
        Must be ``'discrete'``.

    Returns
    -------
    propensity : `PropensityModel`
        Callable ``(a, x) -> float``.

    Raises
    ------
    ValueError
        the propensity is only defined for discrete treatments
    """
    if check_treatment_kind(treatment_kind) != DISCRETE:
        raise ValueError("the propensity is only defined for discrete "
                         "treatments")
    return PropensityModel(data, x_columns, treatment_column,
                           cfg or FitConfig())
