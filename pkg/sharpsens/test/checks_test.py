import numpy as np
from numpy.testing import assert_allclose, assert_equal
import pytest

from sharpsens.checks import (check_alpha, check_direction, check_gamma,
                              check_pmf, check_positive_int,
                              check_probability, check_ratio_bounds,
                              check_treatment_kind)


def test_check_gamma():
    assert_equal(check_gamma(1), 1.)
    assert_equal(check_gamma(2.5), 2.5)


@pytest.mark.parametrize('gamma', [0.5, np.inf, np.nan])
def test_check_gamma_raises(gamma):
    with pytest.raises(ValueError):
        check_gamma(gamma)


def test_check_probability_bounds_inclusive():
    assert_equal(check_probability(0.), 0.)
    assert_equal(check_probability(1.), 1.)
    with pytest.raises(ValueError):
        check_probability(1.01, 'q')


def test_check_alpha_open_interval():
    assert_equal(check_alpha(.5), .5)
    for alpha in (0., 1.):
        with pytest.raises(ValueError):
            check_alpha(alpha)


def test_check_direction():
    assert_equal(check_direction('upper'), 'upper')
    with pytest.raises(ValueError):
        check_direction('up')


def test_check_treatment_kind_binary_alias():
    assert_equal(check_treatment_kind('binary'), 'discrete')
    assert_equal(check_treatment_kind('continuous'), 'continuous')
    with pytest.raises(ValueError):
        check_treatment_kind('ordinal')


def test_check_ratio_bounds():
    assert_equal(check_ratio_bounds(.5, 2), (.5, 2.))
    with pytest.raises(ValueError):
        check_ratio_bounds(0., 2.)
    with pytest.raises(ValueError):
        check_ratio_bounds(.5, .9)


def test_check_pmf():
    assert_allclose(check_pmf([.25, .75]), [.25, .75])
    with pytest.raises(ValueError):
        check_pmf([.5, .6])
    with pytest.raises(ValueError):
        check_pmf([1.5, -.5])
    with pytest.raises(ValueError):
        check_pmf([])


def test_check_positive_int():
    assert_equal(check_positive_int(3, 'k'), 3)
    assert_equal(check_positive_int(0, 'k', minimum=0), 0)
    for value in (0, 2.5, True):
        with pytest.raises(ValueError):
            check_positive_int(value, 'k')
