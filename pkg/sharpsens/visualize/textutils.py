from collections import OrderedDict
import pandas as pd

from menpo.visualize import print_progress as menpo_print_progress
from menpo.visualize import print_dynamic as menpo_print_dynamic

from sharpsens.stats import compute_interval_statistics


def print_progress(iterable, prefix='', n_items=None, offset=0,
                   show_bar=True, show_count=True, show_eta=True,
                   end_with_newline=True, verbose=True):
    r"""
    Print the remaining time needed to compute over an iterable.

    This method is identical to `menpo.visualize.print_progress`, but adds a
    `verbose` flag which allows the printing to be skipped if necessary.

    Parameters
    ----------
    iterable : `iterable`
        An iterable that will be processed.
    prefix : `str`, optional
        If provided a string that will be prepended to the progress report.
    n_items : `int`, optional
        The length of ``iterable`` when it is a generator.
    offset : `int`, optional
        Report the progress as if `offset` items have already been handled.
    show_bar : `bool`, optional
        If False, the progress bar will be hidden.
    show_count : `bool`, optional
        If False, the item count will be hidden.
    show_eta : `bool`, optional
        If False, the estimated time to finish will be hidden.
    end_with_newline : `bool`, optional
        If False, there will be no new line added at the end.
    verbose : `bool`, optional
        Printing is performed only if set to ``True``.
    """
    if verbose:
        for i in menpo_print_progress(iterable, prefix=prefix, n_items=n_items,
                                      offset=offset, show_bar=show_bar,
                                      show_count=show_count, show_eta=show_eta,
                                      end_with_newline=end_with_newline):
            yield i
    else:
        for i in iterable:
            yield i


def print_dynamic(message, verbose=True):
    r"""
    Prints a status line that overwrites the previous one, if `verbose`.
    """
    if verbose:
        menpo_print_dynamic(message)


_STATS = OrderedDict([('mean_length', 'Mean length'),
                      ('std_length', 'Std length'),
                      ('median_length', 'Median length'),
                      ('mad_length', 'MAD length'),
                      ('max_length', 'Max length'),
                      ('coverage', 'Coverage')])


def interval_statistics_table(lowers, uppers, method_names, values=None,
                              tolerance=0., stats_types=None, sort_by=None,
                              precision=4):
    r"""
    Generates a pandas table with interval statistics (lengths and coverage)
    of several bounding methods.

    Parameters
    ----------
    lowers : `list` of `list` of `float`
        The lower ends per method.
    uppers : `list` of `list` of `float`
        The upper ends per method.
    method_names : `list` of `str`
        The name of each method.
    values : `list` of `float` or ``None``, optional
        Reference values (e.g. oracle effects) used for the coverage.
    tolerance : `float`, optional
        The slack used for the coverage.
    stats_types : `list` of `str` or ``None``, optional
        Subset of ``mean_length``, ``std_length``, ``median_length``,
        ``mad_length``, ``max_length``, ``coverage``. If ``None``, all that
        apply are used.
    sort_by : `str` or ``None``, optional
        The statistic used to sort the methods.
    precision : `int`, optional
        The number of decimals.

    Returns
    -------
    table : `pandas.DataFrame`
        One row per method.

    Raises
    ------
    ValueError
        stat_type must be selected from the available statistics
    """
    if not (len(lowers) == len(uppers) == len(method_names)):
        raise ValueError("one lower/upper list per method is required")
    if stats_types is None:
        stats_types = [s for s in _STATS
                       if s != 'coverage' or values is not None]
    for s in stats_types:
        if s not in _STATS:
            raise ValueError("stat_type must be selected from "
                             "{}".format(list(_STATS)))
    if sort_by is not None and sort_by not in stats_types:
        raise ValueError("sort_by must be one of the selected statistics")

    rows = []
    for lower, upper in zip(lowers, uppers):
        statistics = compute_interval_statistics(lower, upper, values=values,
                                                 tolerance=tolerance)
        rows.append([statistics[s] for s in stats_types])
    table = pd.DataFrame(rows, index=method_names,
                         columns=[_STATS[s] for s in stats_types])
    if sort_by is not None:
        table = table.sort_values(_STATS[sort_by])
    return table.round(precision)
