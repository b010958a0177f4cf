from __future__ import division
import numpy as np

from sharpsens.checks import (check_gamma, check_probability,
                              check_ratio_bounds, check_treatment_kind,
                              CONTINUOUS)
from .weight import (WeightFn, ZeroWeight, PropensityWeight, weight_from_dict,
                     lookup_table, _check_table)


DEGENERATE_TOLERANCE = 1e-12
SHARPNESS_TOLERANCE = 1e-12


class RatioBounds(object):
    r"""
    Density ratio bounds ``s_minus <= 1 <= s_plus`` of one node at one
    ``(a, x)`` together with the quantiles ``c_plus``, ``c_minus`` at which the
    maximally shifted distributions switch from one bound to the other.

    When ``s_plus - s_minus`` is below `DEGENERATE_TOLERANCE` the quantiles
    are undefined (``nan``) and every shift built from these bounds is the
    identity.

    Parameters
    ----------
    s_minus : `float`
        The lower ratio bound in ``(0, 1]``.
    s_plus : `float`
        The upper ratio bound ``>= 1``.
    c_plus : `float` or ``None``, optional
        The upper switching quantile. If ``None``, it is computed as
        ``(1 - s_minus) s_plus / (s_plus - s_minus)``.
    c_minus : `float` or ``None``, optional
        The lower switching quantile. If ``None``, it is computed as
        ``(1 - s_plus) s_minus / (s_minus - s_plus)``.
    """
    def __init__(self, s_minus, s_plus, c_plus=None, c_minus=None):
        self._s_minus, self._s_plus = check_ratio_bounds(s_minus, s_plus)
        spread = self._s_plus - self._s_minus
        if spread < DEGENERATE_TOLERANCE:
            self._c_plus = self._c_minus = np.nan
            return
        if c_plus is None:
            c_plus = (1. - self._s_minus) * self._s_plus / spread
        if c_minus is None:
            c_minus = (self._s_plus - 1.) * self._s_minus / spread
        self._c_plus = check_probability(c_plus, name='c_plus')
        self._c_minus = check_probability(c_minus, name='c_minus')

    @classmethod
    def identity(cls):
        r"""
        The bounds ``s_minus = s_plus = 1`` of an unconfounded node.
        """
        return cls(1., 1.)

    @property
    def s_minus(self):
        r"""
        :type: `float`
        """
        return self._s_minus

    @property
    def s_plus(self):
        r"""
        :type: `float`
        """
        return self._s_plus

    @property
    def c_plus(self):
        r"""
        The upper switching quantile, ``nan`` if the bounds are degenerate.

        :type: `float`
        """
        return self._c_plus

    @property
    def c_minus(self):
        r"""
        The lower switching quantile, ``nan`` if the bounds are degenerate.

        :type: `float`
        """
        return self._c_minus

    @property
    def is_degenerate(self):
        r"""
        Whether the bounds collapse to the identity shift.

        :type: `bool`
        """
        return bool(np.isnan(self._c_plus))

    def to_dict(self):
        def clean(v):
            return None if np.isnan(v) else v
        return {'s_minus': self.s_minus, 's_plus': self.s_plus,
                'c_plus': clean(self.c_plus), 'c_minus': clean(self.c_minus)}

    def __eq__(self, other):
        return (isinstance(other, RatioBounds) and
                self.to_dict() == other.to_dict())

    def __repr__(self):
        return ('RatioBounds(s_minus={:.6g}, s_plus={:.6g}, c_plus={:.6g}, '
                'c_minus={:.6g})'.format(self.s_minus, self.s_plus,
                                         self.c_plus, self.c_minus))


def weighted_ratio_bounds(gamma, q):
    r"""
    Ratio bounds of a weighted sensitivity model,
    ``s_minus = 1 / ((1 - gamma) q + gamma)`` and
    ``s_plus = 1 / ((1 - 1 / gamma) q + 1 / gamma)``.

    The switching quantiles take the closed form ``c_plus = gamma / (1 +
    gamma)`` and ``c_minus = 1 / (1 + gamma)`` whatever the weight.

    Parameters
    ----------
    gamma : `float`
        The sensitivity parameter ``>= 1``.
    q : `float`
        The weight in ``[0, 1]``.

    Returns
    -------
    bounds : `RatioBounds`
        The ratio bounds.
    """
    gamma = check_gamma(gamma)
    q = check_probability(q, name='weight')
    s_minus = 1. / ((1. - gamma) * q + gamma)
    s_plus = 1. / ((1. - 1. / gamma) * q + 1. / gamma)
    # rounding can push s_minus marginally above 1 when q is close to 1
    s_minus = min(s_minus, 1.)
    s_plus = max(s_plus, 1.)
    return RatioBounds(s_minus, s_plus, c_plus=gamma / (1. + gamma),
                       c_minus=1. / (1. + gamma))


class WeightedEntry(object):
    r"""
    A node restriction given by a sensitivity parameter and a weight
    function.

    Parameters
    ----------
    gamma : `float`
        The sensitivity parameter ``>= 1``.
    weight : `WeightFn` or `str` or `dict`, optional
        The weight function or its configuration form.
    """
    def __init__(self, gamma, weight='zero'):
        self.gamma = check_gamma(gamma)
        self.weight = weight_from_dict(weight)

    @property
    def requires_propensity(self):
        return self.weight.requires_propensity

    def bounds(self, a=None, x=None, propensity=None):
        q = self.weight(a, x, propensity=propensity)
        return weighted_ratio_bounds(self.gamma, q)

    def with_gamma(self, gamma):
        return WeightedEntry(gamma, self.weight)

    def to_dict(self):
        return {'gamma': self.gamma, 'weight': self.weight.to_dict()}

    def __repr__(self):
        return 'WeightedEntry(gamma={}, weight={!r})'.format(self.gamma,
                                                             self.weight)


class ExplicitEntry(object):
    r"""
    A node restriction given directly by ratio bounds, either constant or as
    a table over covariate bins (and optionally treatment values).

    Parameters
    ----------
    s_minus : `float` or `list`
        The lower ratio bound(s) in ``(0, 1]``.
    s_plus : `float` or `list`
        The upper ratio bound(s) ``>= 1``.
    x_edges : `list` of `float` or ``None``, optional
        Interior covariate bin edges of tabulated bounds.
    a_values : `list` or ``None``, optional
        Treatment values of the table rows of 2D tables.
    x_index : `int`, optional
        The covariate component used for binning.
    """
    requires_propensity = False

    def __init__(self, s_minus, s_plus, x_edges=None, a_values=None,
                 x_index=0):
        if x_edges is None:
            self.s_minus, self.s_plus = check_ratio_bounds(s_minus, s_plus)
            self.x_edges = None
        else:
            self.s_minus, self.x_edges = _check_table(s_minus, x_edges,
                                                      a_values)
            self.s_plus, _ = _check_table(s_plus, x_edges, a_values)
            if self.s_minus.shape != self.s_plus.shape:
                raise ValueError("s_minus and s_plus tables must have the "
                                 "same shape")
            for lo, hi in zip(self.s_minus.ravel(), self.s_plus.ravel()):
                check_ratio_bounds(lo, hi)
        self.a_values = None if a_values is None else list(a_values)
        self.x_index = int(x_index)

    def bounds(self, a=None, x=None, propensity=None):
        if self.x_edges is None:
            return RatioBounds(self.s_minus, self.s_plus)
        if x is None:
            raise ValueError("tabulated ratio bounds require a covariate "
                             "value")
        return RatioBounds(
            lookup_table(self.s_minus, self.x_edges, self.a_values, a, x,
                         x_index=self.x_index),
            lookup_table(self.s_plus, self.x_edges, self.a_values, a, x,
                         x_index=self.x_index))

    def to_dict(self):
        if self.x_edges is None:
            return {'s_minus': self.s_minus, 's_plus': self.s_plus}
        d = {'s_minus': self.s_minus.tolist(), 's_plus': self.s_plus.tolist(),
             'x_edges': self.x_edges.tolist(), 'x_index': self.x_index}
        if self.a_values is not None:
            d['a_values'] = self.a_values
        return d

    def __repr__(self):
        return 'ExplicitEntry({})'.format(self.to_dict())


def entry_from_dict(d):
    r"""
    Builds a node entry from ``{'gamma': ..., 'weight': ...}`` or
    ``{'s_minus': ..., 's_plus': ..., ...}``.

    Raises
    ------
    ValueError
        an entry needs either gamma or s_minus/s_plus
    """
    if isinstance(d, (WeightedEntry, ExplicitEntry)):
        return d
    if not isinstance(d, dict):
        raise ValueError("sensitivity entries must be mappings, "
                         "got {!r}".format(d))
    if 'gamma' in d:
        unknown = set(d) - {'gamma', 'weight'}
        if unknown:
            raise ValueError("unknown keys in weighted entry: "
                             "{}".format(sorted(unknown)))
        return WeightedEntry(d['gamma'], d.get('weight', 'zero'))
    if 's_minus' in d and 's_plus' in d:
        unknown = set(d) - {'s_minus', 's_plus', 'x_edges', 'a_values',
                            'x_index'}
        if unknown:
            raise ValueError("unknown keys in explicit entry: "
                             "{}".format(sorted(unknown)))
        return ExplicitEntry(**d)
    raise ValueError("an entry needs either gamma or s_minus/s_plus, "
                     "got {!r}".format(d))


def _gamma_per_node(gamma, nodes):
    if isinstance(gamma, dict):
        return dict(gamma)
    if nodes is None:
        raise ValueError("nodes must be given with a scalar gamma")
    return {node: gamma for node in nodes}


class SensitivitySpec(object):
    r"""
    A generalized marginal sensitivity model: one confounding restriction per
    node of the causal graph (mediators ``M1..Ml`` and the outcome ``Y``).

    Parameters
    ----------
    entries : `dict`
        Maps node labels to `WeightedEntry`, `ExplicitEntry` or their
        configuration dicts.
    """
    def __init__(self, entries):
        if not entries:
            raise ValueError("a sensitivity spec needs at least one node")
        self._entries = {str(node): entry_from_dict(entry)
                         for node, entry in entries.items()}

    @classmethod
    def weighted(cls, gamma, weight, nodes=None):
        r"""
        A weighted sensitivity model with the same weight for every node.

        Parameters
        ----------
        gamma : `float` or `dict`
            A common sensitivity parameter or one per node.
        weight : `WeightFn` or `str` or `dict`
            The weight function.
        nodes : `list` of `str` or ``None``, optional
            The node labels, required when `gamma` is a scalar.
        """
        gammas = _gamma_per_node(gamma, nodes)
        weight = weight_from_dict(weight)
        return cls({n: WeightedEntry(g, weight) for n, g in gammas.items()})

    @classmethod
    def msm(cls, gamma, nodes=None):
        r"""
        Marginal sensitivity model for discrete treatments,
        ``q(a, x) = P(a | x)``.
        """
        return cls.weighted(gamma, PropensityWeight(), nodes=nodes)

    @classmethod
    def cmsm(cls, gamma, nodes=None):
        r"""
        Continuous marginal sensitivity model, ``q = 0``.
        """
        return cls.weighted(gamma, ZeroWeight(), nodes=nodes)

    @classmethod
    def lmsm(cls, gamma, nodes=None):
        r"""
        Longitudinal marginal sensitivity model. It shares the weight
        ``q = 0`` of the CMSM and is applied to the product ratio over time
        steps, so the resulting bounds are valid but not claimed sharp.
        """
        return cls.weighted(gamma, ZeroWeight(), nodes=nodes)

    @classmethod
    def from_dict(cls, d):
        r"""
        Builds a spec either from per-node entries, e.g. ::

            {"M1": {"gamma": 2, "weight": "propensity"},
             "Y": {"s_minus": 0.5, "s_plus": 2}}

        or from a named model, e.g. ``{"model": "cmsm", "gamma": {"Y": 2}}``.

        Raises
        ------
        ValueError
            unknown sensitivity model
        """
        if isinstance(d, SensitivitySpec):
            return d
        if 'model' in d:
            unknown = set(d) - {'model', 'gamma', 'nodes'}
            if unknown:
                raise ValueError("unknown keys in sensitivity spec: "
                                 "{}".format(sorted(unknown)))
            constructors = {'msm': cls.msm, 'cmsm': cls.cmsm,
                            'lmsm': cls.lmsm}
            if d['model'] not in constructors:
                raise ValueError("unknown sensitivity model "
                                 "{!r}".format(d['model']))
            return constructors[d['model']](d['gamma'], nodes=d.get('nodes'))
        return cls(d)

    def to_dict(self):
        return {node: entry.to_dict() for node, entry in self._entries.items()}

    @property
    def nodes(self):
        r"""
        The sorted node labels.

        :type: `list` of `str`
        """
        return sorted(self._entries)

    def entry(self, node):
        r"""
        Returns the entry of a node.

        Raises
        ------
        ValueError
            no sensitivity entry for node
        """
        try:
            return self._entries[node]
        except KeyError:
            raise ValueError("no sensitivity entry for node {!r}; known nodes "
                             "are {}".format(node, self.nodes))

    def check_nodes(self, nodes):
        r"""
        Checks that every node of a query has an entry.
        """
        for node in nodes:
            self.entry(node)

    def requires_propensity(self, node):
        return self.entry(node).requires_propensity

    def with_gamma(self, node, gamma):
        r"""
        Returns a copy with the sensitivity parameter of one weighted node
        replaced.

        Raises
        ------
        ValueError
            node is not a weighted entry
        """
        entry = self.entry(node)
        if not isinstance(entry, WeightedEntry):
            raise ValueError("node {!r} is not a weighted entry".format(node))
        entries = dict(self._entries)
        entries[node] = entry.with_gamma(gamma)
        return SensitivitySpec(entries)

    def __repr__(self):
        return 'SensitivitySpec({})'.format(self.to_dict())


def ratio_bounds(spec, node, propensity=None, a=None, x=None):
    r"""
    Converts the restriction of one node into ratio bounds and switching
    quantiles at ``(a, x)``.

    Parameters
    ----------
    spec : `SensitivitySpec`
        The sensitivity model.
    node : `str`
        The node label.
    propensity : `float` or ``None``, optional
        ``P(a | x)``, required by the propensity weight.
    a : `object`, optional
        The treatment value, used by tabulated entries.
    x : `float` or `ndarray`, optional
        The covariate value, used by tabulated entries.

    Returns
    -------
    bounds : `RatioBounds`
        The ratio bounds.

    Raises
    ------
    ValueError
        missing propensity, invalid gamma or weight outside [0, 1]
    """
    if propensity is not None:
        propensity = check_probability(propensity, name='propensity')
    return spec.entry(node).bounds(a=a, x=x, propensity=propensity)


def is_sharp(bounds, propensity, treatment_kind):
    r"""
    Sharpness diagnostic: the bounds are sharp for continuous treatments and,
    for discrete treatments, whenever ``1 / s_plus >= P(a | x)``.

    Parameters
    ----------
    bounds : `RatioBounds`
        The ratio bounds of the node.
    propensity : `float` or ``None``
        ``P(a | x)``. Ignored for continuous treatments.
    treatment_kind : `str`
        ``'discrete'`` (or ``'binary'``) or ``'continuous'``.

    Returns
    -------
    sharp : `bool`
        The diagnostic.
    """
    if check_treatment_kind(treatment_kind) == CONTINUOUS:
        return True
    propensity = check_probability(propensity, name='propensity')
    return 1. / bounds.s_plus >= propensity - SHARPNESS_TOLERANCE


def sharpness_condition_weighted(gamma, q, propensity):
    r"""
    Sharpness condition of a weighted model with discrete treatment,
    ``(1 - 1 / gamma) q + 1 / gamma >= P(a | x)``.
    """
    gamma = check_gamma(gamma)
    q = check_probability(q, name='weight')
    propensity = check_probability(propensity, name='propensity')
    return (1. - 1. / gamma) * q + 1. / gamma >= propensity - \
        SHARPNESS_TOLERANCE
