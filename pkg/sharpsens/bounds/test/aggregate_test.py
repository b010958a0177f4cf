import numpy as np
from numpy.testing import assert_allclose, assert_equal
import pytest

from sharpsens.base import derive_seed
from sharpsens.bounds import (average_bounds, bound_average, bound_difference,
                              CausalQuery, compute_bounds, ConditionalModel,
                              difference_bounds, nde_queries, nie_queries)
from sharpsens.dist import DiscreteDist, SampleDist
from sharpsens.model import SensitivitySpec
from sharpsens.shift import LOWER, UPPER


def point_model():
    r"""
    Outcome fixed at 1 for x < 0 and 3 otherwise.
    """
    def outcome_pmf(x, m, a):
        return DiscreteDist([1. if x[0] < 0 else 3.], [1.])
    return ConditionalModel(outcome_pmf=outcome_pmf)


def mediated_model():
    mediator = DiscreteDist([0, 1], [.5, .5])

    def mediator_pmf(i, x, m_prev, a):
        return mediator if a == 0 else DiscreteDist([0, 1], [.2, .8])

    def outcome_sampler(x, m, a, k, seed):
        rng = np.random.default_rng(seed)
        return SampleDist.from_draws(rng.normal(m[0] + a + x[0], 1., k))

    return ConditionalModel(mediator_pmf=mediator_pmf,
                            outcome_sampler=outcome_sampler,
                            treatment_kind='continuous')


def test_bound_average_two_points():
    spec = SensitivitySpec.cmsm({'Y': 4.})
    query = CausalQuery(None, [1])
    assert_allclose(bound_average(point_model(), query, spec, UPPER,
                                  [-1., 1.]), 2.)
    assert_allclose(bound_average(point_model(), query, spec, LOWER,
                                  [-1., 1.]), 2.)


def test_average_single_point_equals_conditional():
    model = mediated_model()
    spec = SensitivitySpec.cmsm({'M1': 2., 'Y': 2.})
    query = CausalQuery(None, [1, 1], mediator_labels=['M1'])
    averaged = average_bounds(model, query, spec, [.3], k=500, seed=4)
    single = compute_bounds(model, query.with_x(.3), spec, k=500,
                            seed=derive_seed(4, 0))
    assert_allclose([averaged.lower, averaged.upper],
                    [single.lower, single.upper])
    assert_equal(averaged.diagnostics['n_covariates'], 1)


def test_average_empty_sample():
    with pytest.raises(ValueError):
        average_bounds(point_model(), CausalQuery(None, [1]),
                       SensitivitySpec.cmsm({'Y': 2.}), [])


def test_self_difference_contains_zero():
    model = mediated_model()
    spec = SensitivitySpec.cmsm({'M1': 2., 'Y': 2.})
    query = CausalQuery(0., [1, 1], mediator_labels=['M1'])
    lower, upper = bound_difference(model, query, query, spec, k=500, seed=1)
    single = compute_bounds(model, query, spec, k=500, seed=1)
    assert_allclose([lower, upper], [single.lower - single.upper,
                                     single.upper - single.lower])
    assert lower <= 0. <= upper


def test_difference_gamma_one_is_point_difference():
    model = mediated_model()
    spec = SensitivitySpec.cmsm({'M1': 1., 'Y': 1.})
    first, second = nde_queries(0., treated=1., control=0.)
    result = difference_bounds(model, first, second, spec, k=2000, seed=2)
    assert_allclose(result.lower, result.upper)
    assert_allclose(result.lower, 1., atol=.1)
    assert_equal(result.diagnostics['contrast'], [[0., 1.], [0., 0.]])


def test_nde_band_widens_with_mediator_gamma():
    model = mediated_model()
    first, second = nde_queries(0., treated=1., control=0.)
    widths = []
    for gamma in (1., 2., 5.):
        spec = SensitivitySpec.cmsm({'M1': gamma, 'Y': 1.})
        lower, upper = bound_difference(model, first, second, spec, k=1000,
                                        seed=3)
        widths.append(upper - lower)
    assert np.all(np.diff(widths) > 0)


def test_nie_queries():
    first, second = nie_queries(.5, mediator_labels=['M1', 'M2'])
    assert_equal(first.treatments, (1, 1, 0))
    assert_equal(second.treatments, (0, 0, 0))


def test_difference_mismatched_shapes():
    spec = SensitivitySpec.cmsm({'M1': 2., 'Y': 2.})
    first = CausalQuery(0., [1, 1], mediator_labels=['M1'])
    second = CausalQuery(.5, [0, 0], mediator_labels=['M1'])
    with pytest.raises(ValueError):
        bound_difference(mediated_model(), first, second, spec)


def test_averaged_difference():
    model = mediated_model()
    spec = SensitivitySpec.cmsm({'M1': 1., 'Y': 1.})
    first, second = nde_queries(None, treated=1., control=0.)
    lower, upper = bound_difference(model, first, second, spec, k=2000,
                                    seed=0, x_sample=[-.5, .5])
    assert_allclose(lower, upper)
    assert_allclose(lower, 1., atol=.1)
