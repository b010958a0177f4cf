from numpy.testing import assert_equal
import pytest

from sharpsens.model import (ConstantWeight, PropensityWeight, TableWeight,
                             weight_from_dict, ZeroWeight)


def test_weight_from_dict():
    assert_equal(weight_from_dict('zero'), ZeroWeight())
    assert_equal(weight_from_dict('propensity'), PropensityWeight())
    assert_equal(weight_from_dict({'constant': .3}), ConstantWeight(.3))
    table = weight_from_dict({'table': {'x_edges': [0.],
                                        'values': [0., 1.]}})
    assert_equal(table, TableWeight.indicator_positive())


def test_weight_from_dict_unknown():
    with pytest.raises(ValueError):
        weight_from_dict('logistic')


def test_propensity_weight():
    assert_equal(PropensityWeight()(1, 0., propensity=.25), .25)
    with pytest.raises(ValueError):
        PropensityWeight()(1, 0.)


def test_table_weight_with_treatment_rows():
    w = TableWeight([0.], [[0., 1.], [1., 0.]], a_values=[0, 1])
    assert_equal(w(0, -1.), 0.)
    assert_equal(w(1, -1.), 1.)
    assert_equal(w(1, 1.), 0.)
    with pytest.raises(ValueError):
        w(2, 0.)


def test_table_weight_invalid():
    with pytest.raises(ValueError):
        TableWeight([0.], [0., 1.5])
    with pytest.raises(ValueError):
        TableWeight([1., 0.], [0., .5, 1.])
    with pytest.raises(ValueError):
        TableWeight([0.], [0., .5, 1.])
