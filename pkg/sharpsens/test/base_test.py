import numpy as np
from numpy.testing import assert_allclose, assert_equal
import pytest

from sharpsens.base import (build_x_grid, ConfigurationError, DataError,
                            derive_seed, NumericalError, rng_for)


def test_derive_seed_deterministic():
    assert_equal(derive_seed(7, 'x', 3), derive_seed(7, 'x', 3))


def test_derive_seed_depends_on_key_and_root():
    seeds = {derive_seed(0, 0), derive_seed(0, 1), derive_seed(1, 0),
             derive_seed(0, 'a'), derive_seed(0, 'a', 0)}
    assert len(seeds) == 5


def test_derive_seed_negative_key_raises():
    with pytest.raises(ValueError):
        derive_seed(0, -1)


def test_rng_for_reproducible():
    assert_allclose(rng_for(3, 'y').random(5), rng_for(3, 'y').random(5))
    assert not np.allclose(rng_for(3, 'y').random(5),
                           rng_for(3, 'z').random(5))


def test_build_x_grid():
    assert_allclose(build_x_grid(5), [-1., -.5, 0., .5, 1.])
    assert_allclose(build_x_grid(1, 0., 2.), [1.])
    with pytest.raises(ValueError):
        build_x_grid(0)


def test_error_hierarchy():
    assert issubclass(ConfigurationError, ValueError)
    assert issubclass(DataError, ValueError)
    assert not issubclass(NumericalError, ValueError)
