from __future__ import division
import itertools
import numpy as np
from scipy import stats
from scipy.special import expit
from sklearn.neighbors import KernelDensity

from sharpsens.base import DataError, rng_for
from sharpsens.checks import check_positive_int
from sharpsens.dist import SampleDist
from sharpsens.estimate import silverman_bandwidth
from .scm import (BINARY, CONFOUNDER_COLUMNS, MEDIATOR_COLUMNS, mediator_1,
                  mediator_2, outcome, sample_dataset)


DEFAULT_N_MC = 100000
N_X_BINS = 64


def _treatment_density(config, x, a, u_m1, u_m2, u_y):
    if config.treatment_kind == BINARY:
        p = expit(config.treatment_logit(x, u_m1, u_m2, u_y))
        return p if a == 1 else 1. - p
    alpha = config.beta_parameter(x, u_m1, u_m2, u_y)
    return stats.beta.pdf(a, alpha, alpha)


def _check_treatment(config, a):
    if config.treatment_kind == BINARY:
        if a not in (0, 1):
            raise ValueError("binary treatments must be 0 or 1")
    elif not 0. < a < 1.:
        raise ValueError("continuous treatments must lie in (0, 1)")


def _exact_ratios(config, node, x, a):
    r"""
    ``P(a | x, u_W) / P(a | x)`` for ``u_W = 0, 1`` and ``P(a | x)``,
    enumerating the binary confounders.
    """
    index = list(CONFOUNDER_COLUMNS).index(node)
    combos = np.array(list(itertools.product((0, 1), repeat=3)))
    density = _treatment_density(config, np.full(len(combos), x), a,
                                 combos[:, 0], combos[:, 1], combos[:, 2])
    marginal = density.mean()
    conditional = np.array([density[combos[:, index] == u].mean()
                            for u in (0, 1)])
    return conditional / marginal, marginal


def _kde_bandwidth(values):
    return max(silverman_bandwidth(values), 1e-3)


def _monte_carlo_ratios(config, node, x, a, n_mc, seed):
    data = sample_dataset(config.with_seed(seed), n_mc)
    edges = np.linspace(-1., 1., N_X_BINS + 1)
    x_bin = np.clip(np.searchsorted(edges, x, side='right') - 1, 0,
                    N_X_BINS - 1)
    in_bin = data[(data['x'] >= edges[x_bin]) & (data['x'] < edges[x_bin + 1])]
    column = CONFOUNDER_COLUMNS[node]
    groups = [in_bin[in_bin[column] == u] for u in (0, 1)]
    if in_bin.empty or any(g.empty for g in groups):
        raise DataError("empty Monte Carlo cell at x={}; increase "
                        "n_mc".format(x))
    if config.treatment_kind == BINARY:
        marginal = np.mean(in_bin['a'] == a)
        conditional = np.array([np.mean(g['a'] == a) for g in groups])
    else:
        def density(values):
            kde = KernelDensity(bandwidth=_kde_bandwidth(values))
            kde.fit(values[:, None])
            return float(np.exp(kde.score_samples([[a]]))[0])
        marginal = density(in_bin['a'].values)
        conditional = np.array([density(g['a'].values) for g in groups])
    if marginal <= 0:
        raise DataError("degenerate propensity at x={}, a={}".format(x, a))
    return conditional / marginal, marginal


def _invert(ratios, propensity, treatment_kind):
    r_plus, r_minus = ratios.max(), ratios.min()
    if treatment_kind == BINARY:
        if propensity <= 0 or propensity >= 1:
            raise DataError("degenerate propensity {}".format(propensity))
        slack = 1. / r_plus - propensity
        gamma_plus = (1. - propensity) / slack if slack > 0 else np.inf
        gamma_minus = ((1. / r_minus - propensity) / (1. - propensity)
                       if r_minus > 0 else np.inf)
    else:
        gamma_plus = r_plus
        gamma_minus = 1. / r_minus if r_minus > 0 else np.inf
    return float(max(gamma_plus, gamma_minus, 1.))


def oracle_gamma(config, node, x, a, method='exact', n_mc=10 ** 6,
                 seed=None):
    r"""
    Oracle sensitivity parameter ``Gamma*_W(x, a)``: the smallest parameter
    of the MSM (binary treatment) or CMSM (continuous treatment) that is
    compatible with the true SCM at ``(x, a)``.

    The density ratios ``r(u_W) = P(a | x, u_W) / P(a | x)`` are inverted
    into ``Gamma+`` and ``Gamma-`` at their max and min over ``u_W`` and the
    larger of the two is returned.

    Parameters
    ----------
    config : `ScmConfig`
        The SCM parameters.
    node : `str`
        ``'M1'``, ``'M2'`` or ``'Y'``.
    x : `float`
        The covariate value.
    a : `int` or `float`
        The treatment value.
    method : `str`, optional
        ``'exact'`` enumerates the binary confounders; ``'monte_carlo'``
        estimates the ratios from ``n_mc`` simulated rows binned in
        ``N_X_BINS`` covariate bins (with a kernel density for continuous
        treatments).
    n_mc : `int`, optional
        The Monte Carlo sample size.
    seed : `int` or ``None``, optional
        The Monte Carlo seed, ``config.seed`` if ``None``.

    Returns
    -------
    gamma : `float`
        ``Gamma* >= 1``.

    Raises
    ------
    DataError
        degenerate propensity or empty Monte Carlo cell
    """
    if node not in CONFOUNDER_COLUMNS:
        raise ValueError("node must be one of {}".format(
            list(CONFOUNDER_COLUMNS)))
    _check_treatment(config, a)
    if method == 'exact':
        ratios, marginal = _exact_ratios(config, node, float(x), a)
    elif method == 'monte_carlo':
        n_mc = check_positive_int(n_mc, 'n_mc')
        ratios, marginal = _monte_carlo_ratios(
            config, node, float(x), a, n_mc,
            config.seed if seed is None else seed)
    else:
        raise ValueError("method must be 'exact' or 'monte_carlo'")
    return _invert(ratios, marginal, config.treatment_kind)


def oracle_gamma_curve(config, node, x_grid, a, **kwargs):
    r"""
    Evaluates `oracle_gamma` over a covariate grid.

    Returns
    -------
    gammas : ``(n,)`` `ndarray`
        One oracle parameter per grid point.
    """
    return np.array([oracle_gamma(config, node, x, a, **kwargs)
                     for x in np.asarray(x_grid, dtype=float)])


def _check_mediators(labels):
    labels = tuple(labels)
    if labels != tuple(MEDIATOR_COLUMNS)[:len(labels)]:
        raise ValueError("oracle queries need the mediators in the order "
                         "{}".format(list(MEDIATOR_COLUMNS)))
    return labels


def oracle_effect(config, query, n_mc=DEFAULT_N_MC, seed=None):
    r"""
    Monte Carlo value of a causal query under the true SCM.

    Hidden confounders and noise are drawn from their priors, mediator ``i``
    responds to treatment ``a_i``, the outcome (and every mediator outside
    the query) to the last treatment. The functional is applied to the
    outcome draws of each mediator path of the query and averaged with the
    path frequencies.

    Parameters
    ----------
    config : `ScmConfig`
        The SCM parameters.
    query : `CausalQuery`
        The query, with mediators ``()``, ``('M1',)`` or ``('M1', 'M2')``.
    n_mc : `int`, optional
        The Monte Carlo sample size.
    seed : `int` or ``None``, optional
        The Monte Carlo seed, ``config.seed`` if ``None``.

    Returns
    -------
    effect : `float`
        The oracle value.
    """
    n_mc = check_positive_int(n_mc, 'n_mc')
    labels = _check_mediators(query.mediator_labels)
    for a in query.treatments:
        _check_treatment(config, a)
    seed = config.seed if seed is None else seed
    x = float(query.x[0])
    a_y = query.treatments[-1]
    treatment = dict(zip(labels, query.treatments[:-1]))

    def stream(name):
        return rng_for(seed, 'oracle', name)

    u = {node: stream(column).binomial(1, .5, n_mc)
         for node, column in CONFOUNDER_COLUMNS.items()}
    eps = {node: stream('eps_' + node).standard_normal(n_mc)
           for node in CONFOUNDER_COLUMNS}
    m1 = mediator_1(x, treatment.get('M1', a_y), u['M1'], eps['M1'],
                    config.rho_m1)
    m2 = mediator_2(x, treatment.get('M2', a_y), m1, u['M2'], eps['M2'],
                    config.rho_m2)
    y = outcome(x, a_y, m1, m2, u['Y'], eps['Y'], config.rho_y)
    if not query.functional.is_quantile:
        return float(y.mean())

    paths = np.stack([m1, m2], axis=1)[:, :len(labels)]
    if paths.shape[1] == 0:
        return SampleDist.from_draws(y).quantile(query.functional.alpha)
    keys, inverse = np.unique(paths, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).ravel()
    effect = 0.
    for i in range(len(keys)):
        draws = y[inverse == i]
        effect += draws.size / n_mc * SampleDist.from_draws(draws).quantile(
            query.functional.alpha)
    return float(effect)
