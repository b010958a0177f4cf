from __future__ import division
import threading
import warnings
import numpy as np

from sharpsens.base import CellFallbackWarning, DataError
from sharpsens.checks import check_positive_int


class FitConfig(object):
    r"""
    Settings of the sample-based conditional estimators.

    Parameters
    ----------
    n_x_bins : `int`, optional
        Number of equal-width bins per covariate column.
    knn_k : `int`, optional
        Number of nearest neighbours resampled by the outcome sampler.
    min_cell_count : `int`, optional
        Cells with fewer (effective) rows fall back to the marginal pmf.
    smoothing : `float`, optional
        Additive smoothing of pmf counts.
    propensity_clip : `float`, optional
        Propensities are clipped to ``[clip, 1 - clip]``.
    a_bandwidth : `float`, optional
        Gaussian kernel bandwidth over continuous treatments.
    """
    def __init__(self, n_x_bins=20, knn_k=500, min_cell_count=30,
                 smoothing=1., propensity_clip=1e-3, a_bandwidth=.1):
        self.n_x_bins = check_positive_int(n_x_bins, 'n_x_bins')
        self.knn_k = check_positive_int(knn_k, 'knn_k')
        self.min_cell_count = check_positive_int(min_cell_count,
                                                 'min_cell_count')
        if smoothing < 0:
            raise ValueError("smoothing must be >= 0")
        if not 0 <= propensity_clip < .5:
            raise ValueError("propensity_clip must lie in [0, 0.5)")
        if not a_bandwidth > 0:
            raise ValueError("a_bandwidth must be > 0")
        self.smoothing = float(smoothing)
        self.propensity_clip = float(propensity_clip)
        self.a_bandwidth = float(a_bandwidth)

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - set(cls().to_dict())
        if unknown:
            raise ValueError("unknown fit settings {}".format(sorted(unknown)))
        return cls(**d)

    def to_dict(self):
        return {'n_x_bins': self.n_x_bins, 'knn_k': self.knn_k,
                'min_cell_count': self.min_cell_count,
                'smoothing': self.smoothing,
                'propensity_clip': self.propensity_clip,
                'a_bandwidth': self.a_bandwidth}

    def __repr__(self):
        return 'FitConfig({})'.format(self.to_dict())


class CovariateBinner(object):
    r"""
    Equal-width binning of every covariate column over its observed range,
    combined into a single cell code.
    """
    def __init__(self, x, n_bins):
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        self.low = x.min(axis=0)
        self.high = x.max(axis=0)
        self.n_bins = n_bins

    def transform(self, x):
        x = np.asarray(x, dtype=float)
        if x.ndim < 2:
            x = x.reshape(-1, self.low.size)
        span = np.where(self.high > self.low, self.high - self.low, 1.)
        bins = np.floor((x - self.low) / span * self.n_bins).astype(int)
        bins = np.clip(bins, 0, self.n_bins - 1)
        return np.dot(bins, self.n_bins ** np.arange(self.low.size))

    def code(self, x):
        return int(self.transform(np.atleast_1d(x))[0])


def check_dataset(data, columns):
    r"""
    Checks that a dataset is non-empty and has the given columns.

    Raises
    ------
    DataError
        the dataset is empty or misses columns
    """
    if data is None or len(data) == 0:
        raise DataError("the dataset is empty")
    missing = [c for c in columns if c not in data.columns]
    if missing:
        raise DataError("the dataset misses columns {}".format(missing))


class FlagRecorder(object):
    r"""
    Mixin recording fallback events both as flags and as warnings.

    The fitted parameters never change after fitting; only the flag log
    grows, under a lock, so estimators can be queried from several threads.
    """
    def _init_flags(self):
        self._flags = set()
        self._flags_lock = threading.Lock()

    @property
    def flags(self):
        r"""
        The fallback events recorded so far.

        :type: `frozenset` of `str`
        """
        with self._flags_lock:
            return frozenset(self._flags)

    def _flag(self, flag, message):
        with self._flags_lock:
            new = flag not in self._flags
            self._flags.add(flag)
        if new:
            warnings.warn(message, CellFallbackWarning)
