import numpy as np
from numpy.testing import assert_allclose, assert_equal
import pytest
from scipy import stats

from sharpsens.bounds import (bound_no_mediators, bound_with_mediators,
                              CausalQuery, compute_bounds, ConditionalModel,
                              node_bounds)
from sharpsens.dist import AnalyticDist, DiscreteDist
from sharpsens.functional import Functional, knapsack_expectation_bound
from sharpsens.model import RatioBounds, SensitivitySpec
from sharpsens.shift import LOWER, UPPER


def outcome_pmf_model(pmfs_by_path, mediator_pmfs=None, propensity=None):
    r"""
    A model with tabulated mediator pmfs keyed by ``(i, m_prev)`` and an
    outcome pmf keyed by the mediator path.
    """
    def mediator_pmf(i, x, m_prev, a):
        return mediator_pmfs[(i, m_prev)]

    def outcome_pmf(x, m, a):
        return pmfs_by_path[m]

    return ConditionalModel(
        mediator_pmf=mediator_pmf if mediator_pmfs else None,
        outcome_pmf=outcome_pmf, propensity=propensity)


def normal_sampler(x, m, a, k, seed):
    return AnalyticDist.standard_normal().sample(k, seed=seed)


uniform_4 = DiscreteDist([1, 2, 3, 4], [.25] * 4)
explicit_2 = {'s_minus': .5, 's_plus': 2.}


def test_no_mediators_discrete_outcome():
    model = outcome_pmf_model({(): uniform_4})
    spec = SensitivitySpec({'Y': explicit_2})
    query = CausalQuery(0., [1])
    assert_allclose(bound_no_mediators(model, query, spec, UPPER), 3.125)
    assert_allclose(bound_no_mediators(model, query, spec, LOWER), 1.875)


def test_no_mediators_gamma_one_is_plug_in():
    model = outcome_pmf_model({(): uniform_4})
    spec = SensitivitySpec.cmsm({'Y': 1.})
    result = compute_bounds(model, CausalQuery(0., [1]), spec)
    assert_allclose([result.lower, result.upper], [2.5, 2.5])


def test_no_mediators_matches_knapsack():
    model = outcome_pmf_model({(): uniform_4})
    spec = SensitivitySpec({'Y': explicit_2})
    result = compute_bounds(model, CausalQuery(0., [1]), spec)
    bounds = RatioBounds(.5, 2.)
    assert_allclose(result.upper,
                    knapsack_expectation_bound(uniform_4, bounds, UPPER))
    assert_allclose(result.lower,
                    knapsack_expectation_bound(uniform_4, bounds, LOWER))


def test_no_mediators_sampled_normal():
    model = ConditionalModel(outcome_sampler=normal_sampler,
                             treatment_kind='continuous')
    spec = SensitivitySpec.cmsm({'Y': 2.})
    result = compute_bounds(model, CausalQuery(0., [.5]), spec, k=10 ** 6,
                            seed=0)
    expected = stats.norm.pdf(stats.norm.ppf(2. / 3)) * 1.5
    assert_allclose([result.lower, result.upper], [-expected, expected],
                    atol=.01)
    assert result.is_sharp


def test_quantile_query_sampled_normal():
    model = ConditionalModel(outcome_sampler=normal_sampler,
                             treatment_kind='continuous')
    spec = SensitivitySpec.cmsm({'Y': 2.})
    query = CausalQuery(0., [.5], functional=Functional.quantile(.5))
    result = compute_bounds(model, query, spec, k=10 ** 5, seed=4)
    assert_allclose(result.upper, stats.norm.ppf(.75), atol=.02)
    assert_allclose(result.lower, stats.norm.ppf(.25), atol=.02)


def test_manski_limit():
    model = outcome_pmf_model({(): DiscreteDist([0, 1], [.5, .5])},
                              propensity=lambda a, x: .5)
    spec = SensitivitySpec.msm(1e6, nodes=['Y'])
    result = compute_bounds(model, CausalQuery(0., [1]), spec)
    assert_allclose(result.upper, .75, atol=1e-3)
    assert_allclose(result.lower, .25, atol=1e-3)
    assert result.is_sharp


def test_msm_requires_propensity():
    model = outcome_pmf_model({(): uniform_4})
    spec = SensitivitySpec.msm(2., nodes=['Y'])
    with pytest.raises(ValueError):
        compute_bounds(model, CausalQuery(0., [1]), spec)


def test_node_bounds_sharpness():
    model = outcome_pmf_model({(): uniform_4}, propensity=lambda a, x: .5)
    spec = SensitivitySpec({'Y': {'s_minus': .25, 's_plus': 4.}})
    _, sharp = node_bounds(model, spec, 'Y', 1, 0.)
    assert sharp is False
    no_propensity = outcome_pmf_model({(): uniform_4})
    _, sharp = node_bounds(no_propensity, spec, 'Y', 1, 0.)
    assert sharp is None


binary_m = DiscreteDist([0, 1], [.5, .5])
deterministic = {(0,): DiscreteDist([1.], [1.]), (1,): DiscreteDist([3.], [1.])}


def test_one_mediator_hand_trace():
    model = outcome_pmf_model(deterministic, {(0, ()): binary_m})
    spec = SensitivitySpec({'M1': explicit_2, 'Y': {'gamma': 1.}})
    query = CausalQuery(0., [1, 1], mediator_labels=['M1'])
    assert_allclose(bound_with_mediators(model, query, spec, UPPER), 2.5)
    assert_allclose(bound_with_mediators(model, query, spec, LOWER), 1.5)


def test_one_mediator_gamma_one_is_mediation_formula():
    outcome = {(0,): DiscreteDist([0, 2], [.5, .5]),
               (1,): DiscreteDist([1, 5], [.25, .75])}
    mediator = DiscreteDist([0, 1], [.3, .7])
    model = outcome_pmf_model(outcome, {(0, ()): mediator})
    spec = SensitivitySpec.cmsm({'M1': 1., 'Y': 1.})
    result = compute_bounds(model, CausalQuery(0., [0, 1], mediator_labels=[
        'M1']), spec)
    expected = .3 * 1. + .7 * 4.
    assert_allclose([result.lower, result.upper], [expected, expected])


def test_constant_downstream_ignores_mediator_gamma():
    model = outcome_pmf_model({(0,): uniform_4, (1,): uniform_4},
                              {(0, ()): binary_m})
    query = CausalQuery(0., [1, 1], mediator_labels=['M1'])
    results = [compute_bounds(model, query, SensitivitySpec.cmsm(
        {'M1': g, 'Y': 2.})) for g in (1., 3., 10.)]
    for r in results[1:]:
        assert_allclose([r.lower, r.upper],
                        [results[0].lower, results[0].upper])


def test_zero_probability_branch_skipped():
    calls = []

    def outcome_pmf(x, m, a):
        calls.append(m)
        return uniform_4

    mediator = DiscreteDist([0, 1, 2], [.5, 0., .5])
    model = ConditionalModel(mediator_pmf=lambda i, x, m, a: mediator,
                             outcome_pmf=outcome_pmf)
    spec = SensitivitySpec.cmsm({'M1': 2., 'Y': 2.})
    result = compute_bounds(model, CausalQuery(0., [1, 1], mediator_labels=[
        'M1']), spec)
    assert (1,) not in calls
    assert_equal(result.diagnostics['n_paths'], 2)


def _brute_force_upper(mediator, outcome_values, bounds_m):
    best = -np.inf
    p1 = mediator.probs[1]
    low = max(p1 / bounds_m.s_plus, 1. - mediator.probs[0] / bounds_m.s_minus)
    high = min(p1 / bounds_m.s_minus, 1. - mediator.probs[0] / bounds_m.s_plus)
    for q in np.append(np.arange(low, high, 1e-3), high):
        best = max(best, (1. - q) * outcome_values[0] + q * outcome_values[1])
    return best


def test_one_mediator_matches_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(200):
        outcome = {}
        for m in (0, 1):
            n = rng.integers(2, 6)
            support = np.sort(rng.choice(20, size=n, replace=False))
            outcome[(m,)] = DiscreteDist(support, rng.dirichlet(np.ones(n)))
        p1 = rng.uniform(.05, .95)
        mediator = DiscreteDist([0, 1], [1. - p1, p1])
        gamma_m, gamma_y = rng.uniform(1., 5., size=2)
        spec = SensitivitySpec.cmsm({'M1': gamma_m, 'Y': gamma_y})
        model = outcome_pmf_model(outcome, {(0, ()): mediator})
        query = CausalQuery(0., [1, 1], mediator_labels=['M1'])
        bounds_y = spec.entry('Y').bounds()
        downstream = [knapsack_expectation_bound(outcome[(m,)], bounds_y,
                                                 UPPER) for m in (0, 1)]
        expected = _brute_force_upper(mediator, downstream,
                                      spec.entry('M1').bounds())
        assert_allclose(bound_with_mediators(model, query, spec, UPPER),
                        expected, atol=5e-3)


def test_relabeling_invariance():
    outcome = {(0,): DiscreteDist([0, 2], [.5, .5]),
               (1,): DiscreteDist([1, 5], [.25, .75]),
               (2,): DiscreteDist([3, 4], [.5, .5])}
    relabel = {0: 2, 1: 0, 2: 1}
    mediator = DiscreteDist([0, 1, 2], [.2, .5, .3])
    relabeled_mediator = DiscreteDist([0, 1, 2], [.5, .3, .2])
    relabeled_outcome = {(relabel[m],): pmf for (m,), pmf in outcome.items()}
    spec = SensitivitySpec.cmsm({'M1': 3., 'Y': 2.})
    query = CausalQuery(0., [1, 1], mediator_labels=['M1'])
    original = compute_bounds(outcome_pmf_model(outcome,
                                                 {(0, ()): mediator}),
                              query, spec)
    relabeled = compute_bounds(outcome_pmf_model(
        relabeled_outcome, {(0, ()): relabeled_mediator}), query, spec)
    assert_allclose([original.lower, original.upper],
                    [relabeled.lower, relabeled.upper])


def test_two_mediators_nesting_in_gamma():
    m1 = DiscreteDist([0, 1], [.4, .6])
    m2 = {(1, (0,)): DiscreteDist([0, 1], [.7, .3]),
          (1, (1,)): DiscreteDist([0, 1], [.2, .8])}
    mediators = dict(m2)
    mediators[(0, ())] = m1

    def sampler(x, m, a, k, seed):
        shift = 2. * m[0] + m[1]
        return AnalyticDist.standard_normal().sample(k, seed=seed).values + \
            shift

    model = ConditionalModel(
        mediator_pmf=lambda i, x, m_prev, a: mediators[(i, m_prev)],
        outcome_sampler=sampler, treatment_kind='continuous')
    query = CausalQuery(0., [0., 1., 1.], mediator_labels=['M1', 'M2'])
    previous = None
    for gamma in (1., 1.5, 3., 6.):
        result = compute_bounds(model, query, SensitivitySpec.cmsm(
            gamma, nodes=['M1', 'M2', 'Y']), k=2000, seed=3)
        if previous is not None:
            assert result.lower <= previous.lower + 1e-12
            assert result.upper >= previous.upper - 1e-12
        previous = result
    assert_equal(previous.diagnostics['n_paths'], 4)


def test_gamma_one_collapse_with_sampled_outcome():
    model = ConditionalModel(outcome_sampler=normal_sampler,
                             treatment_kind='continuous')
    result = compute_bounds(model, CausalQuery(0., [.5]),
                            SensitivitySpec.cmsm({'Y': 1.}), k=500, seed=1)
    assert_equal(result.lower, result.upper)
    assert_equal(result.width, 0.)


def test_deterministic_with_threads():
    mediator = DiscreteDist([0, 1, 2], [.2, .5, .3])
    model = ConditionalModel(mediator_pmf=lambda i, x, m, a: mediator,
                             outcome_sampler=normal_sampler,
                             treatment_kind='continuous')
    query = CausalQuery(0., [.5, .5], mediator_labels=['M1'])
    spec = SensitivitySpec.cmsm({'M1': 2., 'Y': 2.})
    serial = compute_bounds(model, query, spec, k=1000, seed=9, n_jobs=1)
    threaded = compute_bounds(model, query, spec, k=1000, seed=9, n_jobs=3)
    assert_equal([serial.lower, serial.upper],
                 [threaded.lower, threaded.upper])


def test_query_requires_matching_treatments():
    with pytest.raises(ValueError):
        CausalQuery(0., [1, 1], mediator_labels=[])


def test_wrong_mediator_count():
    model = outcome_pmf_model({(): uniform_4})
    spec = SensitivitySpec.cmsm({'Y': 2.})
    with pytest.raises(ValueError):
        bound_with_mediators(model, CausalQuery(0., [1]), spec, UPPER)
