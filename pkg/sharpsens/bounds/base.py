import numpy as np

from sharpsens.base import DataError
from sharpsens.checks import check_treatment_kind, check_probability
from sharpsens.dist import DiscreteDist, SampleDist
from sharpsens.functional import Functional


class CausalQuery(object):
    r"""
    A causal query ``D(P(Y | x, do(a_1), ..., do(a_{l+1})))``: the
    functional of the outcome distribution when mediator ``i`` responds to
    treatment ``a_i`` and the outcome to ``a_{l+1}``.

    Parameters
    ----------
    x : `float` or `list` of `float`
        The covariate value.
    treatments : `list`
        The treatments ``(a_1, ..., a_{l+1})``.
    functional : `Functional` or `str` or `dict`, optional
        The functional, the expectation by default.
    mediator_labels : `list` of `str`, optional
        The mediator node labels in causal order.
    outcome_label : `str`, optional
        The outcome node label.

    Raises
    ------
    ValueError
        treatments must have one entry per mediator plus one
    """
    def __init__(self, x, treatments, functional=None, mediator_labels=(),
                 outcome_label='Y'):
        treatments = tuple(treatments)
        mediator_labels = tuple(mediator_labels)
        if len(treatments) != len(mediator_labels) + 1:
            raise ValueError("treatments must have one entry per mediator "
                             "plus one, got {} treatments for {} "
                             "mediators".format(len(treatments),
                                                len(mediator_labels)))
        self.x = None if x is None else np.atleast_1d(
            np.asarray(x, dtype=float))
        self.treatments = treatments
        self.functional = Functional.from_dict(
            Functional.expectation() if functional is None else functional)
        self.mediator_labels = mediator_labels
        self.outcome_label = outcome_label

    @property
    def n_mediators(self):
        return len(self.mediator_labels)

    @property
    def nodes(self):
        return list(self.mediator_labels) + [self.outcome_label]

    def with_x(self, x):
        return CausalQuery(x, self.treatments, self.functional,
                           self.mediator_labels, self.outcome_label)

    def with_treatments(self, treatments):
        return CausalQuery(self.x, treatments, self.functional,
                           self.mediator_labels, self.outcome_label)

    def same_shape(self, other):
        r"""
        Whether two queries share the functional, the mediator chain and
        the covariate value.
        """
        same_x = ((self.x is None and other.x is None) or
                  (self.x is not None and other.x is not None and
                   np.array_equal(self.x, other.x)))
        return (self.functional == other.functional and
                self.mediator_labels == other.mediator_labels and
                self.outcome_label == other.outcome_label and same_x)

    def to_dict(self):
        return {'x': None if self.x is None else self.x.tolist(),
                'treatments': list(self.treatments),
                'functional': self.functional.to_dict(),
                'mediators': list(self.mediator_labels)}

    def __repr__(self):
        return 'CausalQuery({})'.format(self.to_dict())


def natural_effect_queries(x, mediator_labels, treated=1, control=0,
                           effect='direct', functional=None):
    r"""
    The pair of queries whose difference is the natural direct or indirect
    effect. The direct effect switches only the outcome treatment,
    ``(control, ..., control, treated)`` against all ``control``; the
    indirect effect switches only the mediator treatments,
    ``(treated, ..., treated, control)`` against all ``control``.

    Returns
    -------
    query_1, query_2 : `CausalQuery`
        The minuend and subtrahend queries.
    """
    n = len(mediator_labels)
    if effect == 'direct':
        first = (control,) * n + (treated,)
    elif effect == 'indirect':
        first = (treated,) * n + (control,)
    else:
        raise ValueError("effect must be 'direct' or 'indirect'")
    second = (control,) * (n + 1)
    return (CausalQuery(x, first, functional, mediator_labels),
            CausalQuery(x, second, functional, mediator_labels))


def nde_queries(x, mediator_labels=('M1',), treated=1, control=0,
                functional=None):
    return natural_effect_queries(x, mediator_labels, treated=treated,
                                  control=control, effect='direct',
                                  functional=functional)


def nie_queries(x, mediator_labels=('M1',), treated=1, control=0,
                functional=None):
    return natural_effect_queries(x, mediator_labels, treated=treated,
                                  control=control, effect='indirect',
                                  functional=functional)


class ConditionalModel(object):
    r"""
    The observational conditionals needed to compute bounds, given as
    callables.

    Parameters
    ----------
    mediator_pmf : `callable` or ``None``, optional
        ``mediator_pmf(i, x, m_prev, a) -> DiscreteDist`` for the ``i``-th
        mediator (zero based) given the previous mediator values.
    outcome_sampler : `callable` or ``None``, optional
        ``outcome_sampler(x, m, a, k, seed) -> SampleDist``.
    outcome_pmf : `callable` or ``None``, optional
        ``outcome_pmf(x, m, a) -> DiscreteDist`` for discrete outcomes. Takes
        precedence over `outcome_sampler`.
    propensity : `callable` or ``None``, optional
        ``propensity(a, x) -> float``, needed by propensity weights and the
        sharpness diagnostic.
    treatment_kind : `str`, optional
        ``'discrete'`` or ``'continuous'``.
    flag_sources : `list`, optional
        Fitted estimators exposing a ``flags`` attribute.
    """
    def __init__(self, mediator_pmf=None, outcome_sampler=None,
                 outcome_pmf=None, propensity=None, treatment_kind='discrete',
                 flag_sources=()):
        if outcome_sampler is None and outcome_pmf is None:
            raise ValueError("a conditional model needs an outcome sampler or "
                             "an outcome pmf")
        self._mediator_pmf = mediator_pmf
        self._outcome_sampler = outcome_sampler
        self._outcome_pmf = outcome_pmf
        self._propensity = propensity
        self.treatment_kind = check_treatment_kind(treatment_kind)
        self._flag_sources = list(flag_sources)

    @property
    def has_propensity(self):
        return self._propensity is not None

    @property
    def has_outcome_pmf(self):
        return self._outcome_pmf is not None

    @property
    def flags(self):
        r"""
        The sorted estimation flags (fallbacks) raised so far.

        :type: `list` of `str`
        """
        flags = set()
        for source in self._flag_sources:
            flags.update(source.flags)
        return sorted(flags)

    def mediator_distribution(self, i, x, m_prev, a):
        if self._mediator_pmf is None:
            raise ValueError("the model has no mediator distributions")
        pmf = self._mediator_pmf(i, x, tuple(m_prev), a)
        if not isinstance(pmf, DiscreteDist):
            raise DataError("mediator {} pmf must be a DiscreteDist".format(i))
        return pmf

    def outcome_sample(self, x, m, a, k, seed):
        sample = self._outcome_sampler(x, tuple(m), a, k, seed)
        if not isinstance(sample, SampleDist):
            sample = SampleDist.from_draws(sample)
        return sample

    def outcome_distribution(self, x, m, a):
        return self._outcome_pmf(x, tuple(m), a)

    def propensity_score(self, a, x):
        if self._propensity is None:
            return None
        return check_probability(self._propensity(a, x), name='propensity')
