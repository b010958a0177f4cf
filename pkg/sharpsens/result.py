import numpy as np

from sharpsens.base import NumericalError


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if hasattr(value, 'to_dict'):
        return _jsonable(value.to_dict())
    return value


class BoundsResult(object):
    r"""
    Class holding the lower and upper bound of a causal query together with
    the ratio bounds and sharpness diagnostics of every node.

    If the estimated lower bound exceeds the upper bound (possible by
    ``O(1 / k)`` because of the floor truncation of the sampled estimators),
    the two values are swapped and ``diagnostics['crossed']`` is set.

    Parameters
    ----------
    lower : `float`
        The lower bound.
    upper : `float`
        The upper bound.
    ratio_bounds : `dict` of `str` to `RatioBounds`, optional
        The ratio bounds used per node.
    sharp : `dict` of `str` to `bool` or ``None``, optional
        The sharpness diagnostic per node, ``None`` when it could not be
        evaluated.
    diagnostics : `dict`, optional
        Additional diagnostics (sample size, seed, flags).

    Raises
    ------
    NumericalError
        the bounds are not finite
    """
    def __init__(self, lower, upper, ratio_bounds=None, sharp=None,
                 diagnostics=None):
        lower, upper = float(lower), float(upper)
        if not (np.isfinite(lower) and np.isfinite(upper)):
            raise NumericalError("non-finite bounds ({}, {})".format(lower,
                                                                     upper))
        self._diagnostics = dict(diagnostics or {})
        self._diagnostics['crossed'] = lower > upper
        if lower > upper:
            lower, upper = upper, lower
        self._lower = lower
        self._upper = upper
        self._ratio_bounds = dict(ratio_bounds or {})
        self._sharp = dict(sharp or {})

    @property
    def lower(self):
        r"""
        :type: `float`
        """
        return self._lower

    @property
    def upper(self):
        r"""
        :type: `float`
        """
        return self._upper

    @property
    def width(self):
        r"""
        The interval length ``upper - lower``.

        :type: `float`
        """
        return self._upper - self._lower

    @property
    def ratio_bounds(self):
        r"""
        :type: `dict` of `str` to `RatioBounds`
        """
        return self._ratio_bounds

    @property
    def sharp(self):
        r"""
        :type: `dict` of `str` to `bool` or ``None``
        """
        return self._sharp

    @property
    def is_sharp(self):
        r"""
        ``True`` if every node passed the sharpness diagnostic, ``None`` if
        some node could not be checked.

        :type: `bool` or ``None``
        """
        flags = list(self._sharp.values())
        if any(f is False for f in flags):
            return False
        if any(f is None for f in flags):
            return None
        return True

    @property
    def diagnostics(self):
        r"""
        :type: `dict`
        """
        return self._diagnostics

    def contains(self, value, tolerance=0.):
        r"""
        Whether ``value`` lies in ``[lower - tolerance, upper + tolerance]``.
        """
        return self._lower - tolerance <= value <= self._upper + tolerance

    def to_dict(self):
        return _jsonable({'lower': self.lower, 'upper': self.upper,
                          'ratio_bounds': self.ratio_bounds,
                          'sharp': self.sharp,
                          'diagnostics': self.diagnostics})

    def __str__(self):
        return '[{:.4f}, {:.4f}]'.format(self.lower, self.upper)

    def __repr__(self):
        return 'BoundsResult(lower={!r}, upper={!r})'.format(self.lower,
                                                              self.upper)
