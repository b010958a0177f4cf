from __future__ import division
import numpy as np
from joblib import Parallel, delayed

from sharpsens.base import derive_seed
from sharpsens.checks import check_direction, UPPER
from sharpsens.result import BoundsResult
from sharpsens.visualize import print_progress
from .algorithm import compute_bounds, DEFAULT_K


def _covariate_rows(x_sample):
    x_sample = np.asarray(x_sample, dtype=float)
    if x_sample.size == 0:
        raise ValueError("the covariate sample is empty")
    if x_sample.ndim == 1:
        x_sample = x_sample[:, None]
    return x_sample


def _per_x_bounds(model, query, spec, x_sample, k, seed, n_jobs, verbose):
    rows = _covariate_rows(x_sample)
    # the x loop is the parallel one, each point runs its paths serially
    return Parallel(n_jobs=n_jobs, prefer='threads')(
        delayed(compute_bounds)(model, query.with_x(x), spec, k=k,
                                seed=derive_seed(seed, i))
        for i, x in enumerate(print_progress(rows, prefix='Covariates',
                                             verbose=verbose)))


def average_bounds(model, query, spec, x_sample, k=DEFAULT_K, seed=0,
                   n_jobs=1, verbose=False):
    r"""
    Bounds of the covariate-averaged query: the mean of the per-``x``
    bounds over an empirical covariate sample.

    Parameters
    ----------
    model : `ConditionalModel`
        The observational conditionals.
    query : `CausalQuery`
        The query; its covariate value is ignored.
    spec : `SensitivitySpec`
        The sensitivity model.
    x_sample : ``(n,)`` or ``(n, d)`` `ndarray`
        The covariate sample.
    k : `int`, optional
        The outcome sample size per path.
    seed : `int`, optional
        The root seed; covariate ``i`` uses ``derive_seed(seed, i)``.
    n_jobs : `int`, optional
        The number of threads over covariate values.
    verbose : `bool`, optional
        If ``True``, the progress over covariate values is printed.

    Returns
    -------
    result : `BoundsResult`
        The averaged bounds.

    Raises
    ------
    ValueError
        the covariate sample is empty
    """
    results = _per_x_bounds(model, query, spec, x_sample, k, seed, n_jobs,
                            verbose)
    lower = np.mean([r.lower for r in results])
    upper = np.mean([r.upper for r in results])
    flags = sorted({f for r in results for f in r.diagnostics['model_flags']})
    diagnostics = {'k': k, 'seed': seed, 'n_covariates': len(results),
                   'quantile_capped': any(r.diagnostics['quantile_capped']
                                          for r in results),
                   'n_crossed': sum(r.diagnostics['crossed'] for r in results),
                   'n_not_sharp': sum(r.is_sharp is False for r in results),
                   'model_flags': flags}
    return BoundsResult(lower, upper, diagnostics=diagnostics)


def bound_average(model, query, spec, direction, x_sample, k=DEFAULT_K,
                  seed=0, n_jobs=1, verbose=False):
    r"""
    One direction of `average_bounds`: the arithmetic mean of the per-``x``
    bounds over the covariate sample.

    Returns
    -------
    bound : `float`
        The averaged bound.
    """
    direction = check_direction(direction)
    result = average_bounds(model, query, spec, x_sample, k=k, seed=seed,
                            n_jobs=n_jobs, verbose=verbose)
    return result.upper if direction == UPPER else result.lower


def bound_difference(model, query_1, query_2, spec, k=DEFAULT_K, seed=0,
                     n_jobs=1, x_sample=None, verbose=False):
    r"""
    Bounds of the difference of two queries,
    ``[Q-(query_1) - Q+(query_2), Q+(query_1) - Q-(query_2)]``.

    Both queries use the same seed, so identical queries give an interval
    symmetric around zero. With `x_sample`, both queries are averaged over
    the covariate sample first (e.g. an averaged natural direct effect).

    Parameters
    ----------
    model : `ConditionalModel`
        The observational conditionals.
    query_1 : `CausalQuery`
        The minuend query.
    query_2 : `CausalQuery`
        The subtrahend query.
    spec : `SensitivitySpec`
        The sensitivity model.
    k : `int`, optional
        The outcome sample size per path.
    seed : `int`, optional
        The root seed.
    n_jobs : `int`, optional
        The number of threads.
    x_sample : `ndarray` or ``None``, optional
        A covariate sample to average over.
    verbose : `bool`, optional
        If ``True``, progress is printed.

    Returns
    -------
    lower : `float`
        The lower bound of the difference.
    upper : `float`
        The upper bound of the difference.

    Raises
    ------
    ValueError
        mismatched query shapes
    """
    if x_sample is None:
        if not query_1.same_shape(query_2):
            raise ValueError("mismatched query shapes: the queries must share "
                             "x, the functional and the mediators")
        first = compute_bounds(model, query_1, spec, k=k, seed=seed,
                               n_jobs=n_jobs, verbose=verbose)
        second = compute_bounds(model, query_2, spec, k=k, seed=seed,
                                n_jobs=n_jobs, verbose=verbose)
    else:
        if not query_1.with_x(0.).same_shape(query_2.with_x(0.)):
            raise ValueError("mismatched query shapes: the queries must share "
                             "the functional and the mediators")
        first = average_bounds(model, query_1, spec, x_sample, k=k, seed=seed,
                               n_jobs=n_jobs, verbose=verbose)
        second = average_bounds(model, query_2, spec, x_sample, k=k,
                                seed=seed, n_jobs=n_jobs, verbose=verbose)
    return first.lower - second.upper, first.upper - second.lower


def difference_bounds(model, query_1, query_2, spec, **kwargs):
    r"""
    `bound_difference` wrapped in a `BoundsResult`.
    """
    lower, upper = bound_difference(model, query_1, query_2, spec, **kwargs)
    return BoundsResult(lower, upper,
                        diagnostics={'contrast': [list(query_1.treatments),
                                                  list(query_2.treatments)]})
