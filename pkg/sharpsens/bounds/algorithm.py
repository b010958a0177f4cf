from __future__ import division
import numpy as np
from joblib import Parallel, delayed

from sharpsens.base import derive_seed
from sharpsens.checks import (check_direction, check_positive_int, DIRECTIONS,
                              CONTINUOUS)
from sharpsens.functional import apply_discrete, apply_sampled
from sharpsens.model import ratio_bounds, is_sharp
from sharpsens.result import BoundsResult
from sharpsens.shift import shift_discrete, shift_probs
from sharpsens.visualize import print_progress


DEFAULT_K = 10000


def node_bounds(model, spec, node, a, x):
    r"""
    Ratio bounds and sharpness diagnostic of one node at ``(a, x)``.

    Returns
    -------
    bounds : `RatioBounds`
        The ratio bounds.
    sharp : `bool` or ``None``
        The sharpness diagnostic, ``None`` for discrete treatments when the
        model has no propensity.

    Raises
    ------
    ValueError
        the propensity weight requires a model with a propensity
    """
    entry = spec.entry(node)
    propensity = None
    if entry.requires_propensity or (model.treatment_kind != CONTINUOUS and
                                     model.has_propensity):
        propensity = model.propensity_score(a, x)
        if propensity is None:
            raise ValueError("the propensity weight of node {!r} requires a "
                             "model with a propensity".format(node))
    bounds = ratio_bounds(spec, node, propensity=propensity, a=a, x=x)
    if model.treatment_kind == CONTINUOUS:
        sharp = True
    elif propensity is None:
        sharp = None
    else:
        sharp = is_sharp(bounds, propensity, model.treatment_kind)
    return bounds, sharp


def _outcome_bounds(model, query, bounds, path, directions, k, seed):
    a = query.treatments[-1]
    if model.has_outcome_pmf:
        pmf = model.outcome_distribution(query.x, path, a)
        values = {d: apply_discrete(query.functional,
                                    shift_discrete(pmf, bounds, d))
                  for d in directions}
        return values, False
    # one sample per path so that both directions share random numbers
    sample = model.outcome_sample(query.x, path, a, k, seed)
    values = {}
    capped = False
    for d in directions:
        values[d], path_capped = apply_sampled(query.functional, sample,
                                               bounds, d)
        capped = capped or path_capped
    return values, capped


def _mediator_tree(model, query):
    pmfs = {}
    paths = []

    def visit(prefix):
        i = len(prefix)
        if i == query.n_mediators:
            paths.append(prefix)
            return
        pmf = model.mediator_distribution(i, query.x, prefix,
                                          query.treatments[i])
        pmfs[prefix] = pmf
        for value, p in zip(pmf.support.tolist(), pmf.probs):
            if p > 0:
                visit(prefix + (value,))

    visit(())
    return pmfs, paths


def _solve(model, query, spec, directions, k, seed, n_jobs, verbose):
    if query.x is None:
        raise ValueError("the query has no covariate value")
    k = check_positive_int(k, 'k')
    spec.check_nodes(query.nodes)
    x = query.x
    outcome = node_bounds(model, spec, query.outcome_label,
                          query.treatments[-1], x)
    mediators = [node_bounds(model, spec, label, query.treatments[i], x)
                 for i, label in enumerate(query.mediator_labels)]

    pmfs, paths = _mediator_tree(model, query)
    jobs = print_progress(
        ((path, derive_seed(seed, index)) for index, path in enumerate(paths)),
        prefix='Outcome bounds', n_items=len(paths), verbose=verbose)
    results = Parallel(n_jobs=n_jobs, prefer='threads')(
        delayed(_outcome_bounds)(model, query, outcome[0], path, directions,
                                 k, path_seed)
        for path, path_seed in jobs)
    leaves = {path: values for path, (values, _) in zip(paths, results)}
    capped = any(c for _, c in results)

    def backward(prefix, direction):
        if len(prefix) == query.n_mediators:
            return leaves[prefix][direction]
        pmf = pmfs[prefix]
        downstream = np.array([
            backward(prefix + (value,), direction) if p > 0 else 0.
            for value, p in zip(pmf.support.tolist(), pmf.probs)])
        # ascending downstream bound, ties broken by support value
        order = np.lexsort((pmf.support, downstream))
        bounds = mediators[len(prefix)][0]
        shifted = shift_probs(pmf.probs[order], bounds, direction)
        return float(np.dot(downstream[order], shifted))

    values = {d: backward((), d) for d in directions}
    labels = list(query.mediator_labels) + [query.outcome_label]
    pairs = mediators + [outcome]
    diagnostics = {'k': k, 'seed': seed, 'n_paths': len(paths),
                   'quantile_capped': capped, 'model_flags': model.flags}
    return (values, {l: b for l, (b, _) in zip(labels, pairs)},
            {l: s for l, (_, s) in zip(labels, pairs)}, diagnostics)


def bound_no_mediators(model, query, spec, direction, k=DEFAULT_K, seed=0):
    r"""
    Sharp bound of a query without mediators: the functional of the
    maximally shifted outcome distribution at ``(x, a)``.

    Parameters
    ----------
    model : `ConditionalModel`
        The observational conditionals.
    query : `CausalQuery`
        A query with no mediators.
    spec : `SensitivitySpec`
        The sensitivity model.
    direction : `str`
        ``'upper'`` or ``'lower'``.
    k : `int`, optional
        The outcome sample size for sampled outcomes.
    seed : `int`, optional
        The root seed.

    Returns
    -------
    bound : `float`
        The bound.
    """
    direction = check_direction(direction)
    if query.n_mediators != 0:
        raise ValueError("bound_no_mediators requires a query without "
                         "mediators")
    values, _, _, _ = _solve(model, query, spec, (direction,), k, seed, 1,
                             False)
    return values[direction]


def bound_with_mediators(model, query, spec, direction, k=DEFAULT_K, seed=0,
                         n_jobs=1, verbose=False):
    r"""
    Sharp bound of a query through a chain of discrete mediators.

    The outcome bound is computed for every mediator path first. Then, from
    the last mediator to the first, the support of each mediator is sorted by
    ascending downstream bound (ties by support value), the maximal discrete
    shift is applied to the masses in that order and the shifted masses
    average the downstream bounds.

    Parameters
    ----------
    model : `ConditionalModel`
        The observational conditionals.
    query : `CausalQuery`
        A query with at least one mediator.
    spec : `SensitivitySpec`
        The sensitivity model.
    direction : `str`
        ``'upper'`` or ``'lower'``.
    k : `int`, optional
        The outcome sample size per mediator path.
    seed : `int`, optional
        The root seed; path ``i`` uses ``derive_seed(seed, i)``.
    n_jobs : `int`, optional
        The number of threads evaluating outcome bounds.
    verbose : `bool`, optional
        If ``True``, the progress over mediator paths is printed.

    Returns
    -------
    bound : `float`
        The bound.
    """
    direction = check_direction(direction)
    if query.n_mediators < 1:
        raise ValueError("bound_with_mediators requires at least one "
                         "mediator")
    values, _, _, _ = _solve(model, query, spec, (direction,), k, seed,
                             n_jobs, verbose)
    return values[direction]


def compute_bounds(model, query, spec, k=DEFAULT_K, seed=0, n_jobs=1,
                   verbose=False):
    r"""
    Computes both bounds of a query, with or without mediators, sharing the
    outcome samples between the two directions.

    Returns
    -------
    result : `BoundsResult`
        The bounds with per-node ratio bounds, sharpness flags and
        diagnostics.
    """
    values, bounds, sharp, diagnostics = _solve(model, query, spec,
                                                DIRECTIONS, k, seed, n_jobs,
                                                verbose)
    return BoundsResult(values['lower'], values['upper'], ratio_bounds=bounds,
                        sharp=sharp, diagnostics=diagnostics)
