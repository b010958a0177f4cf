from __future__ import division
import numpy as np

from sharpsens.checks import check_probability


def _covariate_component(x, x_index):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return float(x[x_index])


def lookup_table(table, x_edges, a_values, a, x, x_index=0):
    r"""
    Looks up the entry of a piecewise-constant table over covariate bins and,
    optionally, treatment values.

    The covariate axis is split by the sorted interior edges ``x_edges`` into
    ``len(x_edges) + 1`` bins ``(-inf, e_0], (e_0, e_1], ..., (e_last, inf)``.

    Parameters
    ----------
    table : ``(n_bins,)`` or ``(n_a, n_bins)`` `ndarray`
        The table values.
    x_edges : ``(n_bins - 1,)`` `ndarray`
        The interior bin edges.
    a_values : `list` or ``None``
        The treatment values indexing the first axis of a 2D table.
    a : `object`
        The treatment value.
    x : `float` or ``(d,)`` `ndarray`
        The covariate value.
    x_index : `int`, optional
        The covariate component used for binning.

    Returns
    -------
    value : `float`
        The table entry.

    Raises
    ------
    ValueError
        treatment value not present in the table
    """
    x_bin = int(np.searchsorted(x_edges, _covariate_component(x, x_index),
                                side='left'))
    if table.ndim == 1:
        return float(table[x_bin])
    matches = [i for i, v in enumerate(a_values) if v == a]
    if not matches:
        raise ValueError("treatment value {!r} not present in the "
                         "table".format(a))
    return float(table[matches[0], x_bin])


def _check_table(values, x_edges, a_values):
    values = np.asarray(values, dtype=float)
    x_edges = np.asarray(x_edges, dtype=float).ravel()
    if np.any(np.diff(x_edges) <= 0):
        raise ValueError("x_edges must be strictly increasing")
    if values.ndim not in (1, 2) or values.shape[-1] != x_edges.size + 1:
        raise ValueError("table must have len(x_edges) + 1 columns")
    if values.ndim == 2:
        if a_values is None or len(a_values) != values.shape[0]:
            raise ValueError("a 2D table requires one a_values entry per row")
    elif a_values is not None:
        raise ValueError("a_values given for a 1D table")
    return values, x_edges


class WeightFn(object):
    r"""
    Base class of the weight functions ``q(a, x)`` of a weighted sensitivity
    model. Evaluated values always lie in ``[0, 1]``.
    """
    kind = None
    requires_propensity = False

    def __call__(self, a, x, propensity=None):
        return check_probability(self._evaluate(a, x, propensity),
                                 name='weight')

    def _evaluate(self, a, x, propensity):
        raise NotImplementedError()

    def to_dict(self):
        return self.kind

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return '{}()'.format(type(self).__name__)


class ZeroWeight(WeightFn):
    r"""
    The weight ``q = 0`` used by the continuous (CMSM) and longitudinal
    (LMSM) marginal sensitivity models.
    """
    kind = 'zero'

    def _evaluate(self, a, x, propensity):
        return 0.


class PropensityWeight(WeightFn):
    r"""
    The weight ``q(a, x) = P(a | x)`` of the marginal sensitivity model for
    discrete treatments.
    """
    kind = 'propensity'
    requires_propensity = True

    def _evaluate(self, a, x, propensity):
        if propensity is None:
            raise ValueError("the propensity weight requires P(a | x), but "
                             "no propensity was given")
        return propensity


class ConstantWeight(WeightFn):
    r"""
    A constant weight ``q = c`` with ``c`` in ``[0, 1]``.
    """
    kind = 'constant'

    def __init__(self, value):
        self.value = check_probability(value, name='constant weight')

    def _evaluate(self, a, x, propensity):
        return self.value

    def to_dict(self):
        return {'constant': self.value}

    def __repr__(self):
        return 'ConstantWeight({})'.format(self.value)


class TableWeight(WeightFn):
    r"""
    A piecewise-constant weight given as a user table over covariate bins
    and, optionally, treatment values (e.g. an indicator ``1(x > 0)``).

    Parameters
    ----------
    x_edges : `list` of `float`
        Interior covariate bin edges.
    values : `list` of `float` or `list` of `list` of `float`
        One weight per covariate bin, or one row of weights per entry of
        `a_values`.
    a_values : `list` or ``None``, optional
        The treatment values of the table rows.
    x_index : `int`, optional
        The covariate component used for binning.
    """
    kind = 'table'

    def __init__(self, x_edges, values, a_values=None, x_index=0):
        values, x_edges = _check_table(values, x_edges, a_values)
        if np.any(values < 0) or np.any(values > 1):
            raise ValueError("table weights must lie in [0, 1]")
        self.values = values
        self.x_edges = x_edges
        self.a_values = None if a_values is None else list(a_values)
        self.x_index = int(x_index)

    @classmethod
    def indicator_positive(cls, x_index=0):
        r"""
        The weight ``q(x) = 1(x > 0)``, which removes confounding for
        ``x > 0``.
        """
        return cls([0.], [0., 1.], x_index=x_index)

    def _evaluate(self, a, x, propensity):
        return lookup_table(self.values, self.x_edges, self.a_values, a, x,
                            x_index=self.x_index)

    def to_dict(self):
        d = {'x_edges': self.x_edges.tolist(),
             'values': self.values.tolist(),
             'x_index': self.x_index}
        if self.a_values is not None:
            d['a_values'] = self.a_values
        return {'table': d}

    def __repr__(self):
        return 'TableWeight(x_edges={}, values={})'.format(
            self.x_edges.tolist(), self.values.tolist())


def weight_from_dict(d):
    r"""
    Builds a weight function from its configuration form: ``'zero'``,
    ``'propensity'``, ``{'constant': c}`` or ``{'table': {...}}``.

    Raises
    ------
    ValueError
        unknown weight specification
    """
    if isinstance(d, WeightFn):
        return d
    if d == 'zero':
        return ZeroWeight()
    if d == 'propensity':
        return PropensityWeight()
    if isinstance(d, dict) and len(d) == 1:
        if 'constant' in d:
            return ConstantWeight(d['constant'])
        if 'table' in d:
            return TableWeight(**d['table'])
    raise ValueError("unknown weight specification {!r}".format(d))
