from __future__ import division
import numpy as np

from sharpsens.checks import check_direction, check_alpha, UPPER
from sharpsens.dist import DiscreteDist


def shift_factors(bounds, direction):
    r"""
    Returns the switching quantile and the factors applied below and above
    it for a shift in the given direction.

    The upper shift uses ``c_plus`` with ``1 / s_plus`` below and
    ``1 / s_minus`` above; the lower shift uses ``c_minus`` with
    ``1 / s_minus`` below and ``1 / s_plus`` above.

    Parameters
    ----------
    bounds : `RatioBounds`
        The ratio bounds.
    direction : `str`
        ``'upper'`` or ``'lower'``.

    Returns
    -------
    c : `float`
        The switching quantile.
    first : `float`
        The factor below the quantile.
    second : `float`
        The factor above the quantile.
    """
    if check_direction(direction) == UPPER:
        return bounds.c_plus, 1. / bounds.s_plus, 1. / bounds.s_minus
    return bounds.c_minus, 1. / bounds.s_minus, 1. / bounds.s_plus


def shift_probs(probs, bounds, direction):
    r"""
    Applies the maximal discrete shift to masses given in the order in which
    they should be accumulated.

    Each mass is rescaled by the first factor while the cumulative mass stays
    below the switching quantile, by the second factor once the previous
    cumulative mass is above it, and the point straddling the quantile gets
    ``(c - F_prev) * first + (F - c) * second``. ``F == c`` falls into the
    straddle branch.

    Parameters
    ----------
    probs : ``(n,)`` `ndarray`
        Masses in accumulation order.
    bounds : `RatioBounds`
        The ratio bounds.
    direction : `str`
        ``'upper'`` or ``'lower'``.

    Returns
    -------
    shifted : ``(n,)`` `ndarray`
        The shifted masses.
    """
    probs = np.asarray(probs, dtype=float)
    if bounds.is_degenerate:
        return probs.copy()
    c, first, second = shift_factors(bounds, direction)
    cumulative = np.cumsum(probs)
    previous = cumulative - probs
    previous[0] = 0.
    straddle = (c - previous) * first + (cumulative - c) * second
    return np.where(cumulative < c, probs * first,
                    np.where(previous > c, probs * second, straddle))


def shift_discrete(pmf, bounds, direction):
    r"""
    Maximally right (``'upper'``) or left (``'lower'``) shifted version of a
    probability mass function under the given ratio bounds.

    Parameters
    ----------
    pmf : `DiscreteDist`
        The observational pmf.
    bounds : `RatioBounds`
        The ratio bounds.
    direction : `str`
        ``'upper'`` or ``'lower'``.

    Returns
    -------
    shifted : `DiscreteDist`
        The shifted pmf on the same support. The identity when the bounds
        are degenerate.
    """
    if not isinstance(pmf, DiscreteDist):
        raise TypeError("shift_discrete expects a DiscreteDist")
    return pmf.with_probs(shift_probs(pmf.probs, bounds, direction))


def shift_cdf(base_cdf, bounds, direction, w):
    r"""
    Evaluates the maximally shifted CDF at `w`.

    For the upper direction ``F+(w) = F(w) / s_plus`` if ``F(w) <= c_plus``
    and ``c_plus / s_plus + (F(w) - c_plus) / s_minus`` otherwise; the lower
    direction swaps the roles of the bounds and uses ``c_minus``.

    Parameters
    ----------
    base_cdf : `callable` or distribution
        The observational CDF, or any object with a ``cdf`` method.
    bounds : `RatioBounds`
        The ratio bounds.
    direction : `str`
        ``'upper'`` or ``'lower'``.
    w : `float` or `ndarray`
        The evaluation point(s).

    Returns
    -------
    value : `float` or `ndarray`
        The shifted CDF in ``[0, 1]``.
    """
    base_cdf = getattr(base_cdf, 'cdf', base_cdf)
    f = np.asarray(base_cdf(w), dtype=float)
    if bounds.is_degenerate:
        shifted = f
    else:
        c, first, second = shift_factors(bounds, direction)
        shifted = np.where(f <= c, f * first, c * first + (f - c) * second)
    shifted = np.clip(shifted, 0., 1.)
    return float(shifted) if shifted.ndim == 0 else shifted


class ShiftedCdf(object):
    r"""
    The maximally shifted distribution of a base distribution, exposed
    through its CDF and the closed-form inverse of that CDF.

    Parameters
    ----------
    base : distribution
        Any distribution with ``cdf`` and ``quantile`` methods.
    bounds : `RatioBounds`
        The ratio bounds.
    direction : `str`
        ``'upper'`` or ``'lower'``.
    """
    def __init__(self, base, bounds, direction):
        self.base = base
        self.bounds = bounds
        self.direction = check_direction(direction)

    def cdf(self, w):
        return shift_cdf(self.base, self.bounds, self.direction, w)

    __call__ = cdf

    def quantile(self, alpha):
        r"""
        Inverts the shifted CDF: ``F^{-1}(alpha / first)`` below the
        switching level ``c * first`` and
        ``F^{-1}(c + (alpha - c * first) / second)`` above it.
        """
        alpha = check_alpha(alpha)
        if self.bounds.is_degenerate:
            return self.base.quantile(alpha)
        c, first, second = shift_factors(self.bounds, self.direction)
        if alpha <= c * first:
            level = alpha / first
        else:
            level = c + (alpha - c * first) / second
        level = min(max(level, np.nextafter(0., 1.)), np.nextafter(1., 0.))
        return self.base.quantile(level)

    def __repr__(self):
        return 'ShiftedCdf({!r}, {!r}, {!r})'.format(self.base, self.bounds,
                                                     self.direction)
