from __future__ import division
import zlib
import numpy as np


class SharpSensWarning(Warning):
    r"""
    Base class of the warnings issued by `sharpsens`.
    """
    pass


class CellFallbackWarning(SharpSensWarning):
    r"""
    A conditioning cell had too few rows and the marginal estimate was used
    instead.
    """
    pass


class QuantileCapWarning(SharpSensWarning):
    r"""
    The weighted empirical CDF of a sampled bound never reached the requested
    quantile level, so the largest sample value was returned.
    """
    pass


class BootstrapSizeWarning(SharpSensWarning):
    r"""
    Fewer than 20 bootstrap replicates were requested.
    """
    pass


class ConfigurationError(ValueError):
    r"""
    Invalid run configuration (unknown keys, wrong types, missing entries).
    """
    pass


class DataError(ValueError):
    r"""
    The data cannot support the requested computation (empty dataset, unseen
    category, empty stratum, invalid data-generating parameters).
    """
    pass


class NumericalError(ArithmeticError):
    r"""
    A computation produced a non-finite or otherwise unusable number.
    """
    pass


def _key_to_int(key):
    if isinstance(key, (int, np.integer)):
        if key < 0:
            raise ValueError('seed keys must be non-negative integers or '
                             'strings')
        return int(key)
    return zlib.crc32(str(key).encode('utf-8')) & 0xffffffff


def derive_seed(root_seed, *key):
    r"""
    Derives an independent child seed from a root seed and a key path.

    The child only depends on ``(root_seed, key)``, so tasks can be executed
    in any order or in parallel and still draw the same random numbers.

    Parameters
    ----------
    root_seed : `int`
        The root seed of the run.
    key : `int` or `str`
        Components that identify the task (e.g. a column name and an index).

    Returns
    -------
    seed : `int`
        A 32 bit seed.
    """
    spawn_key = tuple(_key_to_int(k) for k in key)
    sequence = np.random.SeedSequence(int(root_seed), spawn_key=spawn_key)
    return int(sequence.generate_state(1)[0])


def rng_for(root_seed, *key):
    r"""
    Returns a `numpy.random.Generator` seeded with
    ``derive_seed(root_seed, *key)``.
    """
    return np.random.default_rng(derive_seed(root_seed, *key))


def build_x_grid(n_points, low=-1., high=1.):
    r"""
    Builds an equally spaced grid of covariate values.

    Parameters
    ----------
    n_points : `int`
        The number of grid points.
    low : `float`, optional
        The first grid point.
    high : `float`, optional
        The last grid point.

    Returns
    -------
    grid : ``(n_points,)`` `ndarray`
        The grid.
    """
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    if n_points == 1:
        return np.array([(low + high) / 2.])
    return np.linspace(low, high, n_points)
