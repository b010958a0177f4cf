from sharpsens.bounds import ConditionalModel
from sharpsens.checks import check_treatment_kind, DISCRETE
from sharpsens.visualize import print_dynamic
from .base import FitConfig
from .pmf import fit_conditional_pmf
from .outcome import fit_outcome_sampler
from .propensity import fit_propensity


def fit_conditional_model(data, x_columns=('x',), mediator_columns=(),
                          treatment_column='a', outcome_column='y', cfg=None,
                          treatment_kind='discrete',
                          outcome_kind='continuous', mediator_supports=None,
                          verbose=False):
    r"""
    Fits every conditional needed for bounds: one pmf per mediator, the
    outcome sampler (or the outcome pmf for discrete outcomes) and, for
    discrete treatments, the propensity.

    Parameters
    ----------
    data : `pandas.DataFrame`
        The observational data.
    x_columns : `list` of `str`, optional
        The covariate columns.
    mediator_columns : `list` of `str`, optional
        The mediator columns in causal order.
    treatment_column : `str`, optional
        The treatment column.
    outcome_column : `str`, optional
        The outcome column.
    cfg : `FitConfig` or ``None``, optional
        The estimator settings.
    treatment_kind : `str`, optional
        ``'discrete'`` (or ``'binary'``) or ``'continuous'``.
    outcome_kind : `str`, optional
        ``'continuous'`` (sampled outcome) or ``'discrete'`` (outcome pmf).
    mediator_supports : `list` or ``None``, optional
        Declared supports, one per mediator.
    verbose : `bool`, optional
        If ``True``, the fitting steps are printed.

    Returns
    -------
    model : `ConditionalModel`
        The fitted model.
    """
    cfg = cfg or FitConfig()
    treatment_kind = check_treatment_kind(treatment_kind)
    if outcome_kind not in ('continuous', 'discrete'):
        raise ValueError("outcome_kind must be 'continuous' or 'discrete'")
    mediator_columns = list(mediator_columns)
    supports = mediator_supports or [None] * len(mediator_columns)
    if len(supports) != len(mediator_columns):
        raise ValueError("one support per mediator is required")

    pmfs = []
    for i, column in enumerate(mediator_columns):
        print_dynamic('Fitting the pmf of {}'.format(column), verbose=verbose)
        pmfs.append(fit_conditional_pmf(
            data, column, x_columns=x_columns,
            mediator_columns=mediator_columns[:i],
            treatment_column=treatment_column, cfg=cfg,
            treatment_kind=treatment_kind, support=supports[i]))

    print_dynamic('Fitting the outcome model', verbose=verbose)
    outcome_sampler = outcome_pmf = None
    if outcome_kind == 'discrete':
        outcome_pmf = fit_conditional_pmf(
            data, outcome_column, x_columns=x_columns,
            mediator_columns=mediator_columns,
            treatment_column=treatment_column, cfg=cfg,
            treatment_kind=treatment_kind)
        outcome_estimator = outcome_pmf
    else:
        outcome_sampler = fit_outcome_sampler(
            data, x_columns=x_columns, mediator_columns=mediator_columns,
            treatment_column=treatment_column, outcome_column=outcome_column,
            cfg=cfg, treatment_kind=treatment_kind)
        outcome_estimator = outcome_sampler

    propensity = None
    if treatment_kind == DISCRETE:
        print_dynamic('Fitting the propensity', verbose=verbose)
        propensity = fit_propensity(data, x_columns=x_columns,
                                    treatment_column=treatment_column,
                                    cfg=cfg)

    def mediator_pmf(i, x, m_prev, a):
        return pmfs[i](x, m_prev, a)

    sources = pmfs + [outcome_estimator]
    if propensity is not None:
        sources.append(propensity)
    return ConditionalModel(mediator_pmf=mediator_pmf if pmfs else None,
                            outcome_sampler=outcome_sampler,
                            outcome_pmf=outcome_pmf, propensity=propensity,
                            treatment_kind=treatment_kind,
                            flag_sources=sources)
