from __future__ import division
import json
import sys
import warnings
import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from sharpsens.base import (BootstrapSizeWarning, ConfigurationError,
                            DataError, NumericalError, build_x_grid,
                            derive_seed, rng_for)
from sharpsens.bounds import (CausalQuery, average_bounds, compute_bounds,
                              difference_bounds)
from sharpsens.checks import check_treatment_kind, CONTINUOUS
from sharpsens.estimate import FitConfig, fit_conditional_model
from sharpsens.model import SensitivitySpec, TableWeight
from sharpsens.stats import coverage, percentile_interval
from sharpsens.synth import (MEDIATOR_COLUMNS, ScmConfig, oracle_effect,
                             oracle_gamma, read_csv, sample_dataset,
                             write_csv)
from sharpsens.visualize import (interval_statistics_table, print_dynamic,
                                 print_progress)


MIN_BOOTSTRAP_REPLICATES = 20


class DataSource(object):
    r"""
    The dataset of a run together with its column roles, either read from
    a CSV file or simulated from the synthetic SCM.
    """
    def __init__(self, data, x_columns, treatment_column, mediator_columns,
                 outcome_column, treatment_kind, outcome_kind,
                 mediator_labels, scm=None):
        self.data = data
        self.x_columns = list(x_columns)
        self.treatment_column = treatment_column
        self.mediator_columns = list(mediator_columns)
        self.outcome_column = outcome_column
        self.treatment_kind = check_treatment_kind(treatment_kind)
        self.outcome_kind = outcome_kind
        self.mediator_labels = tuple(mediator_labels)
        self.scm = scm

    def with_data(self, data):
        return DataSource(data, self.x_columns, self.treatment_column,
                          self.mediator_columns, self.outcome_column,
                          self.treatment_kind, self.outcome_kind,
                          self.mediator_labels, scm=self.scm)

    @property
    def x_values(self):
        return self.data[self.x_columns].values.astype(float)


def scm_config(run):
    r"""
    The `ScmConfig` of a run, seeded with the run seed unless the scm
    section overrides it.
    """
    section = run.section('scm')
    params = {k: v for k, v in section.items() if k not in ('n', 'mediators')}
    params.setdefault('seed', run.seed)
    try:
        return ScmConfig.from_dict(params)
    except (TypeError, ValueError) as e:
        raise ConfigurationError("invalid scm section: {}".format(e))


def load_source(run):
    r"""
    Reads or simulates the dataset of a run.

    Raises
    ------
    ConfigurationError
        neither data nor scm is configured
    DataError
        the dataset cannot be read or misses columns
    """
    if run.get('data') is not None:
        d = run['data']
        columns = d['x'] + [d['a']] + d['mediators'] + [d['y']]
        try:
            data = read_csv(d['path'], columns=columns)
        except (IOError, OSError, pd.errors.ParserError,
                pd.errors.EmptyDataError) as e:
            raise DataError("cannot read {}: {}".format(d['path'], e))
        labels = ['M{}'.format(i + 1) for i in range(len(d['mediators']))]
        return DataSource(data, d['x'], d['a'], d['mediators'], d['y'],
                          d['treatment_kind'], d['outcome_kind'], labels)
    if run.get('scm') is not None:
        config = scm_config(run)
        section = run['scm']
        labels = tuple(section.get('mediators', config.mediator_labels))
        unknown = [l for l in labels if l not in MEDIATOR_COLUMNS]
        if unknown:
            raise ConfigurationError("unknown scm mediators {}".format(unknown))
        print_dynamic('Simulating {} rows'.format(section['n']),
                      verbose=run.verbose)
        data = sample_dataset(config, section['n'])
        return DataSource(data, ['x'], 'a',
                          [MEDIATOR_COLUMNS[l] for l in labels], 'y',
                          config.treatment_kind, 'continuous', labels,
                          scm=config)
    raise ConfigurationError("either config.data or config.scm is required")


def fit_model(run, source):
    try:
        cfg = FitConfig.from_dict(run.section('fit'))
    except ValueError as e:
        raise ConfigurationError("invalid fit section: {}".format(e))
    return fit_conditional_model(
        source.data, x_columns=source.x_columns,
        mediator_columns=source.mediator_columns,
        treatment_column=source.treatment_column,
        outcome_column=source.outcome_column, cfg=cfg,
        treatment_kind=source.treatment_kind,
        outcome_kind=source.outcome_kind, verbose=run.verbose)


def sensitivity_spec(run):
    if run.get('sensitivity') is None:
        raise ConfigurationError("config.sensitivity is required for "
                                 "{}".format(run.command))
    try:
        return SensitivitySpec.from_dict(run['sensitivity'])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError("invalid sensitivity section: {}".format(e))


def covariate_points(run, source):
    r"""
    The covariate values of the run's queries: explicit ``query.x`` values
    or an equally spaced ``query.x_grid`` over ``query.x_range``.
    """
    query = run.section('query')
    if 'x' in query:
        points = [np.atleast_1d(np.asarray(x, dtype=float))
                  for x in query['x']]
    elif 'x_grid' in query:
        low, high = query['x_range']
        points = [np.atleast_1d(x) for x in build_x_grid(query['x_grid'],
                                                         low, high)]
    else:
        raise ConfigurationError("config.query needs x or x_grid")
    for p in points:
        if p.size != len(source.x_columns):
            raise ConfigurationError("query covariates must have {} "
                                     "components".format(
                                         len(source.x_columns)))
    return points


def base_query(run, source):
    query = run.section('query')
    treatments = query.get('treatments')
    if treatments is None:
        if source.scm is None:
            raise ConfigurationError("config.query.treatments is required")
        treatments = source.scm.default_treatments
    try:
        first = CausalQuery(None, treatments, query['functional'],
                            source.mediator_labels)
        second = None
        if 'contrast' in query:
            second = CausalQuery(None, query['contrast'], query['functional'],
                                 source.mediator_labels)
    except ValueError as e:
        raise ConfigurationError("invalid query: {}".format(e))
    return first, second


def _covariate_sample(run, source):
    n = min(run.section('query')['average_sample'], len(source.data))
    rows = rng_for(run.seed, 'average').choice(len(source.data), size=n,
                                               replace=False)
    return source.x_values[np.sort(rows)]


def _record(run, spec, query, contrast, result, x):
    record = {'config_hash': run.hash,
              'x': None if x is None else np.asarray(x).tolist(),
              'treatments': list(query.treatments),
              'functional': query.functional.to_dict(),
              'sensitivity': spec.to_dict(),
              'lower': result.lower, 'upper': result.upper,
              'sharp': {node: flag for node, flag in result.sharp.items()},
              'k': run.k, 'seed': run.seed,
              'diagnostics': result.to_dict()['diagnostics']}
    if contrast is not None:
        record['contrast'] = list(contrast.treatments)
    return record


def bound_records(run, source, model, spec, n_jobs=None):
    r"""
    Computes one record per configured query (or a single record for an
    averaged query). Differences are computed when ``query.contrast`` is
    set.
    """
    n_jobs = run.threads if n_jobs is None else n_jobs
    first, second = base_query(run, source)
    spec.check_nodes(first.nodes)
    if run.section('query')['average']:
        x_sample = _covariate_sample(run, source)
        if second is None:
            result = average_bounds(model, first, spec, x_sample, k=run.k,
                                    seed=run.seed, n_jobs=n_jobs,
                                    verbose=run.verbose)
        else:
            result = difference_bounds(model, first, second, spec, k=run.k,
                                       seed=run.seed, n_jobs=n_jobs,
                                       x_sample=x_sample, verbose=run.verbose)
        return [_record(run, spec, first, second, result, None)]

    records = []
    points = covariate_points(run, source)
    for i, x in enumerate(print_progress(points, prefix='Queries',
                                         verbose=run.verbose)):
        seed = derive_seed(run.seed, i)
        if second is None:
            result = compute_bounds(model, first.with_x(x), spec, k=run.k,
                                    seed=seed, n_jobs=n_jobs)
        else:
            result = difference_bounds(model, first.with_x(x),
                                       second.with_x(x), spec, k=run.k,
                                       seed=seed, n_jobs=n_jobs)
        records.append(_record(run, spec, first, second, result, x))
    return records


def _open_output(path):
    return sys.stdout if path is None else open(path, 'w')


def write_json(run, records, extra=None):
    document = {'config_hash': run.hash, 'config': run.provenance(),
                'records': records}
    document.update(extra or {})
    out = _open_output(run.output)
    try:
        json.dump(document, out, sort_keys=True, indent=2, allow_nan=False)
        out.write('\n')
    except ValueError as e:
        raise NumericalError("non-finite value in the output: {}".format(e))
    finally:
        if out is not sys.stdout:
            out.close()


def write_table(run, table):
    if not np.all(np.isfinite(table.select_dtypes('number').values)):
        raise NumericalError("non-finite value in the output table")
    table.to_csv(sys.stdout if run.output is None else run.output,
                 index=False, float_format='%.17g')


def run_bound(run):
    r"""
    Computes the bounds of every configured query and writes them as JSON,
    one record per query. With ``bootstrap.replicates >= 1`` the records
    carry percentile confidence intervals (see `run_bootstrap`).

    Returns
    -------
    records : `list` of `dict`
        The written records.
    """
    if run.section('bootstrap')['replicates'] >= 1:
        return run_bootstrap(run)
    source = load_source(run)
    spec = sensitivity_spec(run)
    model = fit_model(run, source)
    records = bound_records(run, source, model, spec)
    write_json(run, records)
    return records


def _replicate(run, source, spec, b):
    if b == 0:
        data = source.data
    else:
        data = source.data.sample(n=len(source.data), replace=True,
                                  random_state=derive_seed(run.seed,
                                                           'bootstrap', b))
        data = data.reset_index(drop=True)
    replicate = source.with_data(data)
    model = fit_model(run, replicate)
    return bound_records(run, replicate, model, spec, n_jobs=1)


def run_bootstrap(run):
    r"""
    Nonparametric bootstrap of the bounds: the dataset rows are resampled
    with replacement, the model refitted and the bounds recomputed for
    ``B`` replicates. Replicate ``0`` is the original dataset, so ``B = 1``
    gives intervals equal to the point values. The Monte Carlo seed is the
    same in every replicate.

    Returns
    -------
    records : `list` of `dict`
        The point records with ``lower_ci`` and ``upper_ci`` columns.
    """
    section = run.section('bootstrap')
    n_replicates = section['replicates']
    if n_replicates < 1:
        raise ConfigurationError("bootstrap.replicates must be >= 1")
    small = n_replicates < MIN_BOOTSTRAP_REPLICATES
    if small:
        warnings.warn('{} bootstrap replicates requested; at least {} are '
                      'recommended'.format(n_replicates,
                                           MIN_BOOTSTRAP_REPLICATES),
                      BootstrapSizeWarning)
    source = load_source(run)
    spec = sensitivity_spec(run)
    replicates = Parallel(n_jobs=run.threads, prefer='threads')(
        delayed(_replicate)(run, source, spec, b)
        for b in print_progress(range(n_replicates), prefix='Bootstrap',
                                verbose=run.verbose))
    records = replicates[0]
    for i, record in enumerate(records):
        lowers = [r[i]['lower'] for r in replicates]
        uppers = [r[i]['upper'] for r in replicates]
        record['lower_ci'] = list(percentile_interval(lowers,
                                                      section['level']))
        record['upper_ci'] = list(percentile_interval(uppers,
                                                      section['level']))
        record['bootstrap_replicates'] = n_replicates
        record['bootstrap_warning'] = small
    write_json(run, records)
    return records


def _flatten(x):
    x = np.asarray(x, dtype=float)
    return float(x[0]) if x.size == 1 else json.dumps(x.tolist())


def run_sweep(run):
    r"""
    Bounds over a ladder of sensitivity parameters for one node, written as
    a plot-ready CSV with one row per (gamma, x).

    Returns
    -------
    table : `pandas.DataFrame`
        The written table.
    """
    sweep = run.section('sweep')
    source = load_source(run)
    spec = sensitivity_spec(run)
    model = fit_model(run, source)
    rows = []
    for gamma in print_progress(sweep['gammas'], prefix='Sweep',
                                verbose=run.verbose):
        try:
            spec_g = spec.with_gamma(sweep['node'], gamma)
        except ValueError as e:
            raise ConfigurationError("invalid sweep: {}".format(e))
        for record in bound_records(run, source, model, spec_g):
            rows.append({'config_hash': run.hash, 'node': sweep['node'],
                         'gamma': float(gamma),
                         'x': (np.nan if record['x'] is None
                               else _flatten(record['x'])),
                         'treatments': json.dumps(record['treatments']),
                         'lower': record['lower'], 'upper': record['upper'],
                         'sharp': all(v is not False
                                      for v in record['sharp'].values())})
    table = pd.DataFrame(rows, columns=['config_hash', 'node', 'gamma', 'x',
                                        'treatments', 'lower', 'upper',
                                        'sharp'])
    if run.section('query')['average']:
        table = table.drop(columns='x')
    write_table(run, table)
    return table


def run_simulate(run):
    r"""
    Simulates a dataset from the configured SCM and writes it as CSV,
    hidden confounder columns included.

    Returns
    -------
    data : `pandas.DataFrame`
        The dataset.
    """
    if run.get('scm') is None:
        raise ConfigurationError("config.scm is required for simulate")
    source = load_source(run)
    write_csv(source.data, sys.stdout if run.output is None else run.output,
              oracle=True)
    return source.data


def _node_treatments(labels, treatments):
    return dict(zip(list(labels) + ['Y'], treatments))


def run_oracle(run):
    r"""
    Oracle sensitivity parameters per node and the oracle effect of the
    configured query over a covariate grid, written as CSV.

    Returns
    -------
    table : `pandas.DataFrame`
        The written table.
    """
    if run.get('scm') is None:
        raise ConfigurationError("config.scm is required for oracle")
    section = run.section('oracle')
    config = scm_config(run)
    labels = tuple(run.section('scm').get('mediators',
                                          config.mediator_labels))
    query = run.section('query')
    treatments = query.get('treatments') or config.default_treatments
    try:
        base = CausalQuery(None, treatments, query['functional'], labels)
    except ValueError as e:
        raise ConfigurationError("invalid query: {}".format(e))
    node_treatment = _node_treatments(labels, treatments)
    rows = []
    grid = build_x_grid(section['x_grid'])
    for i, x in enumerate(print_progress(grid, prefix='Oracle',
                                         verbose=run.verbose)):
        row = {'config_hash': run.hash, 'x': float(x),
               'oracle_effect': oracle_effect(
                   config, base.with_x(x), n_mc=section['n_mc'],
                   seed=derive_seed(run.seed, 'oracle', i))}
        for node in section['nodes']:
            a = node_treatment.get(node, treatments[-1])
            row['gamma_star_' + node] = oracle_gamma(
                config, node, x, a, method=section['method'],
                n_mc=section['n_mc'], seed=derive_seed(run.seed, node, i))
        rows.append(row)
    table = pd.DataFrame(rows)
    write_table(run, table)
    return table


def oracle_spec(config, labels, treatments, grid, factor):
    r"""
    The MSM (binary treatment) or CMSM (continuous treatment) whose
    parameter for each node is ``factor`` times the largest oracle parameter
    over the grid.

    Raises
    ------
    NumericalError
        an oracle parameter is infinite
    """
    node_treatment = _node_treatments(labels, treatments)
    gammas = {}
    for node in list(labels) + ['Y']:
        curve = [oracle_gamma(config, node, x, node_treatment[node])
                 for x in grid]
        if not np.all(np.isfinite(curve)):
            raise NumericalError("infinite oracle parameter for node "
                                 "{}".format(node))
        gammas[node] = factor * max(curve)
    if config.treatment_kind == CONTINUOUS:
        return SensitivitySpec.cmsm(gammas)
    return SensitivitySpec.msm(gammas)


def _validation_rows(run, source, model, spec, method, grid, oracles,
                     delta):
    base, _ = base_query(run, source)
    rows = []
    for i, x in enumerate(grid):
        result = compute_bounds(model, base.with_x(x), spec, k=run.k,
                                seed=derive_seed(run.seed, i),
                                n_jobs=run.threads)
        rows.append({'config_hash': run.hash, 'method': method,
                     'gammas': json.dumps(
                         {n: e['gamma'] for n, e in spec.to_dict().items()},
                         sort_keys=True),
                     'x': float(x), 'oracle_effect': oracles[i],
                     'lower': result.lower, 'upper': result.upper,
                     'covered': bool(result.contains(oracles[i], delta))})
    return rows


def run_validate(run):
    r"""
    Benchmark of bound validity on the synthetic SCM: sensitivity parameters
    are set to ``gamma_factor`` times the largest oracle parameter of each
    node and the Monte Carlo oracle effect is compared with the bounds on a
    covariate grid. For the weighted preset, the unweighted CMSM and the
    weighted CMSM with ``q(x) = 1(x > 0)`` are also compared for every
    ``validate.gammas`` value of the outcome node.

    Returns
    -------
    table : `pandas.DataFrame`
        One row per (method, x) with the oracle effect, the bounds and
        whether the oracle lies within ``delta`` of the interval.
    """
    section = run.section('validate')
    source = load_source(run)
    config = source.scm
    if config is None:
        raise ConfigurationError("config.scm is required for validate")
    base, _ = base_query(run, source)
    grid = build_x_grid(section['x_grid'])
    oracles = [oracle_effect(config, base.with_x(x), n_mc=section['n_mc'],
                             seed=derive_seed(run.seed, 'oracle', i))
               for i, x in enumerate(grid)]
    model = fit_model(run, source)

    spec = oracle_spec(config, source.mediator_labels, base.treatments, grid,
                       section['gamma_factor'])
    rows = _validation_rows(run, source, model, spec, 'oracle_gamma', grid,
                            oracles, section['delta'])
    if config.weighted:
        for gamma in section['gammas']:
            unweighted = SensitivitySpec.cmsm({'Y': gamma})
            weighted = SensitivitySpec.weighted(
                {'Y': gamma}, TableWeight.indicator_positive())
            rows += _validation_rows(run, source, model, unweighted, 'cmsm',
                                     grid, oracles, section['delta'])
            rows += _validation_rows(run, source, model, weighted,
                                     'weighted_cmsm', grid, oracles,
                                     section['delta'])
    table = pd.DataFrame(rows)
    write_table(run, table)

    if run.verbose:
        groups = list(table.groupby(['method', 'gammas'], sort=False))
        summary = interval_statistics_table(
            [g['lower'].values for _, g in groups],
            [g['upper'].values for _, g in groups],
            ['{} {}'.format(*key) for key, _ in groups],
            values=oracles,
            tolerance=section['delta'])
        print(summary.to_string(), file=sys.stderr)
    return table


def coverage_by_method(table, delta=0.):
    r"""
    Coverage of the oracle effect per validation method and parameter set.
    """
    groups = table.groupby(['method', 'gammas'], sort=False)
    return pd.Series({key: coverage(g['oracle_effect'], g['lower'],
                                    g['upper'], tolerance=delta)
                      for key, g in groups}, name='coverage')


COMMAND_RUNNERS = {'bound': run_bound, 'sweep': run_sweep,
                   'simulate': run_simulate, 'oracle': run_oracle,
                   'validate': run_validate}


def run_command(run):
    r"""
    Dispatches a `RunConfig` to its command.
    """
    return COMMAND_RUNNERS[run.command](run)
