from __future__ import division
import warnings
import numpy as np

from sharpsens.base import QuantileCapWarning
from sharpsens.checks import check_alpha
from sharpsens.dist import SampleDist
from sharpsens.shift import shift_factors


def _check_sample(sample):
    if not isinstance(sample, SampleDist):
        raise TypeError("sampled bounds expect a sorted SampleDist")
    return sample


def _split(sample, bounds, direction):
    c, first, second = shift_factors(bounds, direction)
    return int(np.floor(sample.k * c)), first, second


def expectation_bound_sampled(sample, bounds, direction):
    r"""
    Importance-sampling estimate of the expectation of the maximally shifted
    distribution from a sorted sample ``y_1 <= ... <= y_k``.

    The first ``floor(k c)`` order statistics are weighted by ``first / k``
    and the rest by ``second / k`` (see `sharpsens.shift.shift_factors`).
    Degenerate bounds return the sample mean.

    Parameters
    ----------
    sample : `SampleDist`
        The sorted sample of the observational conditional distribution.
    bounds : `RatioBounds`
        The ratio bounds.
    direction : `str`
        ``'upper'`` or ``'lower'``.

    Returns
    -------
    value : `float`
        The estimated bound.
    """
    sample = _check_sample(sample)
    if bounds.is_degenerate:
        return sample.mean()
    j, first, second = _split(sample, bounds, direction)
    y = sample.values
    return float((first * y[:j].sum() + second * y[j:].sum()) / sample.k)


def _quantile_bound_sampled(sample, bounds, alpha, direction):
    sample = _check_sample(sample)
    alpha = check_alpha(alpha)
    if bounds.is_degenerate:
        return sample.quantile(alpha), False
    j, first, second = _split(sample, bounds, direction)
    y = sample.values
    # weighted CDF evaluated at the last index of every run of ties
    last = np.flatnonzero(np.append(y[1:] != y[:-1], True))
    n_le = last + 1
    n_first = np.minimum(n_le, j)
    n_second = n_le - n_first
    weighted_cdf = (n_first * first + n_second * second) / sample.k
    hits = np.flatnonzero(weighted_cdf >= alpha)
    if hits.size == 0:
        return float(y[-1]), True
    return float(y[last[hits[0]]]), False


def quantile_bound_sampled(sample, bounds, alpha, direction):
    r"""
    Importance-sampling estimate of the ``alpha``-quantile of the maximally
    shifted distribution: the smallest ``y_i`` at which the reweighted
    empirical CDF reaches ``alpha``.

    If rounding keeps the reweighted CDF below ``alpha``, the largest sample
    value is returned and a `QuantileCapWarning` is issued.

    Parameters
    ----------
    sample : `SampleDist`
        The sorted sample of the observational conditional distribution.
    bounds : `RatioBounds`
        The ratio bounds.
    alpha : `float`
        The quantile level in ``(0, 1)``.
    direction : `str`
        ``'upper'`` or ``'lower'``.

    Returns
    -------
    value : `float`
        The estimated bound.
    """
    value, capped = _quantile_bound_sampled(sample, bounds, alpha, direction)
    if capped:
        warnings.warn('the reweighted empirical CDF never reaches alpha={}; '
                      'returning the largest sample value'.format(alpha),
                      QuantileCapWarning)
    return value


def apply_sampled(functional, sample, bounds, direction):
    r"""
    Dispatches a functional to the matching importance-sampling estimator.

    Returns
    -------
    value : `float`
        The estimated bound.
    capped : `bool`
        Whether a quantile estimate hit the largest sample value.
    """
    if functional.is_quantile:
        return _quantile_bound_sampled(sample, bounds, functional.alpha,
                                       direction)
    return expectation_bound_sampled(sample, bounds, direction), False
