from __future__ import division
import numpy as np


def interval_lengths(lower, upper):
    r"""
    Computes the lengths of a set of intervals.

    Parameters
    ----------
    lower : `list` of `float`
        The lower ends.
    upper : `list` of `float`
        The upper ends.

    Returns
    -------
    lengths : ``(n,)`` `ndarray`
        The lengths ``upper - lower``.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != upper.shape:
        raise ValueError("lower and upper must have the same shape")
    return upper - lower


def coverage(values, lower, upper, tolerance=0.):
    r"""
    Computes the fraction of values that lie in their interval widened by
    ``tolerance`` on both sides.

    Parameters
    ----------
    values : `list` of `float`
        The values (e.g. oracle effects).
    lower : `list` of `float`
        The lower ends.
    upper : `list` of `float`
        The upper ends.
    tolerance : `float`, optional
        The slack added to both ends.

    Returns
    -------
    coverage : `float`
        The covered fraction.
    """
    values = np.asarray(values, dtype=float)
    covered = ((np.asarray(lower) - tolerance <= values) &
               (values <= np.asarray(upper) + tolerance))
    return float(np.mean(covered))


def percentile_interval(values, level=0.95):
    r"""
    Percentile interval of a set of replicates, e.g. ``(2.5%, 97.5%)`` for
    ``level=0.95``.

    Returns
    -------
    low : `float`
        The lower percentile.
    high : `float`
        The upper percentile.
    """
    if not 0 < level < 1:
        raise ValueError("level must lie in (0, 1)")
    tail = 50. * (1. - level)
    low, high = np.percentile(np.asarray(values, dtype=float),
                              [tail, 100. - tail])
    return float(low), float(high)


def mad(values):
    r"""
    Computes the Median Absolute Deviation of a set of values.
    """
    values = np.asarray(values, dtype=float)
    return float(np.median(np.abs(values - np.median(values))))


def compute_interval_statistics(lower, upper, values=None, tolerance=0.):
    r"""
    Summary statistics of a set of intervals and, optionally, of how well
    they cover a set of reference values.

    Parameters
    ----------
    lower : `list` of `float`
        The lower ends.
    upper : `list` of `float`
        The upper ends.
    values : `list` of `float` or ``None``, optional
        Reference values to cover.
    tolerance : `float`, optional
        The slack used for the coverage.

    Returns
    -------
    statistics : `dict`
        ``mean_length``, ``std_length``, ``median_length``, ``mad_length``,
        ``max_length`` and, with `values`, ``coverage``.
    """
    lengths = interval_lengths(lower, upper)
    statistics = {'mean_length': float(np.mean(lengths)),
                  'std_length': float(np.std(lengths)),
                  'median_length': float(np.median(lengths)),
                  'mad_length': mad(lengths),
                  'max_length': float(np.max(lengths))}
    if values is not None:
        statistics['coverage'] = coverage(values, lower, upper,
                                          tolerance=tolerance)
    return statistics
