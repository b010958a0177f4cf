import numpy as np


UPPER = 'upper'
LOWER = 'lower'
DIRECTIONS = (UPPER, LOWER)

DISCRETE = 'discrete'
CONTINUOUS = 'continuous'
TREATMENT_KINDS = (DISCRETE, CONTINUOUS)

PMF_TOLERANCE = 1e-9


def check_gamma(gamma):
    r"""
    Checks that a sensitivity parameter is a finite number ``>= 1``.

    Parameters
    ----------
    gamma : `float`
        The value to check.

    Returns
    -------
    gamma : `float`
        The value if it's correct.

    Raises
    ------
    ValueError
        gamma must be a finite number >= 1
    """
    gamma = float(gamma)
    if not np.isfinite(gamma) or gamma < 1:
        raise ValueError("gamma must be a finite number >= 1, "
                         "got {}".format(gamma))
    return gamma


def check_probability(value, name='value'):
    r"""
    Checks that a value lies in ``[0, 1]``.

    Parameters
    ----------
    value : `float`
        The value to check.
    name : `str`, optional
        The name used in the error message.

    Returns
    -------
    value : `float`
        The value if it's correct.

    Raises
    ------
    ValueError
        {name} must lie in [0, 1]
    """
    value = float(value)
    if not 0. <= value <= 1.:
        raise ValueError("{} must lie in [0, 1], got {}".format(name, value))
    return value


def check_alpha(alpha):
    r"""
    Checks that a quantile level lies in the open interval ``(0, 1)``.

    Raises
    ------
    ValueError
        alpha must lie in (0, 1)
    """
    alpha = float(alpha)
    if not 0. < alpha < 1.:
        raise ValueError("alpha must lie in (0, 1), got {}".format(alpha))
    return alpha


def check_direction(direction):
    r"""
    Checks that the bound direction is either ``'upper'`` or ``'lower'``.

    Raises
    ------
    ValueError
        direction must be 'upper' or 'lower'
    """
    if direction not in DIRECTIONS:
        raise ValueError("direction must be 'upper' or 'lower', "
                         "got {!r}".format(direction))
    return direction


def check_treatment_kind(kind):
    r"""
    Checks the treatment kind. ``'binary'`` is accepted as an alias of
    ``'discrete'``.

    Returns
    -------
    kind : `str`
        Either ``'discrete'`` or ``'continuous'``.

    Raises
    ------
    ValueError
        treatment_kind must be 'discrete' or 'continuous'
    """
    if kind == 'binary':
        return DISCRETE
    if kind not in TREATMENT_KINDS:
        raise ValueError("treatment_kind must be 'discrete' or 'continuous', "
                         "got {!r}".format(kind))
    return kind


def check_ratio_bounds(s_minus, s_plus):
    r"""
    Checks that explicit density ratio bounds satisfy
    ``0 < s_minus <= 1 <= s_plus``.

    Returns
    -------
    s_minus, s_plus : `float`
        The bounds if they are correct.

    Raises
    ------
    ValueError
        s_minus must lie in (0, 1]
    ValueError
        s_plus must be a finite number >= 1
    """
    s_minus = float(s_minus)
    s_plus = float(s_plus)
    if not 0. < s_minus <= 1.:
        raise ValueError("s_minus must lie in (0, 1], got {}".format(s_minus))
    if not np.isfinite(s_plus) or s_plus < 1.:
        raise ValueError("s_plus must be a finite number >= 1, "
                         "got {}".format(s_plus))
    return s_minus, s_plus


def check_pmf(probs, tolerance=PMF_TOLERANCE):
    r"""
    Checks that a vector of probability masses is non-negative and sums to
    one.

    Parameters
    ----------
    probs : `list` or ``(n,)`` `ndarray`
        The probability masses.
    tolerance : `float`, optional
        The allowed deviation of the total mass from one.

    Returns
    -------
    probs : ``(n,)`` `ndarray`
        The masses as a float array.

    Raises
    ------
    ValueError
        probabilities must be non-negative
    ValueError
        probabilities must sum to 1
    """
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or probs.size == 0:
        raise ValueError("probabilities must be a non-empty 1D sequence")
    if not np.all(np.isfinite(probs)) or np.any(probs < 0):
        raise ValueError("probabilities must be finite and non-negative")
    total = probs.sum()
    if abs(total - 1.) > tolerance:
        raise ValueError("probabilities must sum to 1, got {}".format(total))
    return probs


def check_positive_int(value, name, minimum=1):
    r"""
    Checks that a value is an integer ``>= minimum``.

    Raises
    ------
    ValueError
        {name} must be an integer >= {minimum}
    """
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValueError("{} must be an integer >= {}, got {!r}".format(
            name, minimum, value))
    return int(value)
