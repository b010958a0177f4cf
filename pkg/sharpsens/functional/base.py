from __future__ import division
import numpy as np

from sharpsens.checks import check_alpha, check_direction, UPPER
from sharpsens.dist import DiscreteDist


EXPECTATION = 'expectation'
QUANTILE = 'quantile'


class Functional(object):
    r"""
    A monotone functional of a distribution: the expectation or an
    ``alpha``-quantile.

    Parameters
    ----------
    kind : `str`
        ``'expectation'`` or ``'quantile'``.
    alpha : `float` or ``None``, optional
        The quantile level in ``(0, 1)``, required for quantiles.
    """
    def __init__(self, kind=EXPECTATION, alpha=None):
        if kind == EXPECTATION:
            if alpha is not None:
                raise ValueError("the expectation takes no alpha")
        elif kind == QUANTILE:
            alpha = check_alpha(alpha)
        else:
            raise ValueError("functional must be 'expectation' or "
                             "'quantile', got {!r}".format(kind))
        self.kind = kind
        self.alpha = alpha

    @classmethod
    def expectation(cls):
        return cls(EXPECTATION)

    @classmethod
    def quantile(cls, alpha):
        return cls(QUANTILE, alpha)

    @classmethod
    def from_dict(cls, d):
        r"""
        Accepts ``'expectation'``, ``{'quantile': alpha}`` or
        ``{'kind': ..., 'alpha': ...}``.
        """
        if isinstance(d, Functional):
            return d
        if d == EXPECTATION:
            return cls.expectation()
        if isinstance(d, dict):
            if set(d) == {QUANTILE}:
                return cls.quantile(d[QUANTILE])
            if 'kind' in d and set(d) <= {'kind', 'alpha'}:
                return cls(d['kind'], d.get('alpha'))
        raise ValueError("unknown functional {!r}".format(d))

    @property
    def is_quantile(self):
        return self.kind == QUANTILE

    def to_dict(self):
        if self.is_quantile:
            return {QUANTILE: self.alpha}
        return EXPECTATION

    def __eq__(self, other):
        return (isinstance(other, Functional) and self.kind == other.kind and
                self.alpha == other.alpha)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        if self.is_quantile:
            return 'Functional.quantile({})'.format(self.alpha)
        return 'Functional.expectation()'


def apply_discrete(functional, pmf):
    r"""
    Applies a functional to a probability mass function.

    Parameters
    ----------
    functional : `Functional`
        The functional.
    pmf : `DiscreteDist`
        The distribution.

    Returns
    -------
    value : `float`
        ``sum_w w p(w)`` for the expectation, the generalized inverse for
        quantiles.
    """
    if not isinstance(pmf, DiscreteDist):
        raise TypeError("apply_discrete expects a DiscreteDist")
    if functional.is_quantile:
        return float(pmf.quantile(functional.alpha))
    return pmf.mean()


def knapsack_expectation_bound(pmf, bounds, direction):
    r"""
    Optimal expectation over all pmfs ``p~`` with
    ``p(w) / s_plus <= p~(w) <= p(w) / s_minus`` and total mass one, solved
    as a fractional knapsack: start every point at its lower limit and fill
    the remaining mass greedily from the largest (upper) or smallest (lower)
    support value.

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
    value : `float`
        The optimal expectation.
    """
    direction = check_direction(direction)
    if bounds.is_degenerate:
        return pmf.mean()
    low = pmf.probs / bounds.s_plus
    high = pmf.probs / bounds.s_minus
    filled = low.copy()
    remaining = 1. - low.sum()
    order = np.arange(pmf.n_support)
    if direction == UPPER:
        order = order[::-1]
    for i in order:
        if remaining <= 0:
            break
        step = min(high[i] - low[i], remaining)
        filled[i] += step
        remaining -= step
    return float(np.dot(pmf.support, filled))
