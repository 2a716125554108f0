# @Time   : 2026/10/17
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

"""The ``srslab`` command: ``generate``, ``run``, ``converge`` and ``oracle``.

Every sub-command resolves its parameters with :class:`srslab.config.Config`
(flags over config file over defaults), writes CSV or JSON tables into the
output directory and echoes its config there as ``config.json``.

Exit codes: 0 success, 2 usage error, 3 capacity error, 4 I/O error.
"""

import argparse
import json
import math
import os
from dataclasses import replace

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from srslab.config import Config
from srslab.convergence import REFERENCE_CONFIGS, ScenarioSpec, as_config, curve_table, expected_time_table, \
    format_expected_time, reproduce_tables, simulated_curve_table
from srslab.data import GeneratorSpec, generate, load_csv, save_csv, to_distribution, truth_path_for
from srslab.distribution import asymptotic_importance, degree_histogram, load_distribution, markov_boundary, \
    mutual_information, relevance_class
from srslab.evaluator import f1_curve_table, get_evaluator
from srslab.exceptions import CapacityError, DatasetFormatError, DistributionError
from srslab.system import SrsConfig, get_system, history_table, importance_table, predict_ensemble

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_IO = 4

DEFAULT_Q_FRACTION = 0.05


def write_table(frame, directory, name, fmt='csv'):
    """Write ``frame`` as ``name.csv`` (comma, header, LF) or ``name.json`` (records)."""
    os.makedirs(directory, exist_ok=True)
    if fmt == 'json':
        path = os.path.join(directory, f'{name}.json')
        frame.to_json(path, orient='records', indent=2)
    else:
        path = os.path.join(directory, f'{name}.csv')
        frame.to_csv(path, index=False, lineterminator='\n')
    logger.debug(f'[Write {path}]')
    return path


def write_json(payload, directory, name):
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f'{name}.json')
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(payload, f, indent=4, sort_keys=True)
        f.write('\n')
    return path


def cmd_generate(opt):
    spec = GeneratorSpec(opt['scenario'], int(opt['p']), int(opt['r']), int(opt['n']), float(opt['noise']),
                         int(opt['seed']), int(opt['arity']), int(opt['clusters_per_class']),
                         float(opt['feature_noise']))
    dataset = generate(spec)
    name = opt['name'] or f'{spec.scenario}_p{spec.p}_r{spec.r}_seed{spec.seed}'
    path = os.path.join(opt['output'], f'{name}.csv')
    save_csv(dataset, path)
    opt.save(opt['output'])
    return {'dataset': path, 'truth': truth_path_for(path)}


def resolve_q(q, p):
    """``None`` gives ``ceil(0.05 p)``, ``'p'`` gives every feature."""
    if q is None:
        return max(1, math.ceil(DEFAULT_Q_FRACTION * p))
    if isinstance(q, str):
        if q.strip() == 'p':
            return p
        try:
            return int(q)
        except ValueError:
            raise ValueError(f'q must be an integer or "p", got [{q}]') from None
    return int(q)


def split_holdout(dataset, test_fraction, seed):
    """Random train/test split of the rows; no split when ``test_fraction`` is 0."""
    if not 0 <= test_fraction < 1:
        raise ValueError(f'test_fraction must lie in [0, 1), got {test_fraction}')
    if test_fraction == 0:
        return dataset, None
    if dataset.is_population:
        raise ValueError('population datasets cannot be split into train and test rows')
    order = np.random.default_rng(seed).permutation(dataset.n_samples)
    n_test = max(1, int(round(test_fraction * dataset.n_samples)))
    if n_test >= dataset.n_samples:
        raise ValueError(f'test_fraction {test_fraction} leaves no training rows')
    return dataset.subset_rows(np.sort(order[n_test:])), dataset.subset_rows(np.sort(order[:n_test]))


def _fit(config, dataset, system_name, show_progress):
    return get_system(config, dataset, system_name, show_progress).fit()


def cmd_run(opt):
    if not opt['dataset']:
        raise ValueError('run needs a dataset (--dataset)')
    dataset = load_csv(opt['dataset'], opt['truth'])
    train, test = split_holdout(dataset, float(opt['test_fraction']), int(opt['seed']))
    repeat = int(opt['repeat'])
    if repeat < 1:
        raise ValueError(f'repeat must be positive, got {repeat}')
    jobs = int(opt['jobs'])
    config = SrsConfig(q=resolve_q(opt['q'], dataset.p), T=int(opt['T']), alpha=float(opt['alpha']),
                       K=int(opt['K']), probe_count=int(opt['probe_count']), probe_rule=opt['probe_rule'],
                       probe_quantile=float(opt['probe_quantile']), probe_kind=opt['probe_kind'],
                       probe_arity=int(opt['probe_arity']), acceptance=opt['acceptance'],
                       significance=float(opt['significance']), trees_per_iteration=int(opt['trees_per_iteration']),
                       n_jobs=jobs if repeat == 1 else 1, seed=int(opt['seed']))
    configs = [replace(config, seed=config.seed + k) for k in range(repeat)]
    if repeat == 1:
        results = [_fit(configs[0], train, opt['system'], True)]
    else:
        results = Parallel(n_jobs=jobs)(delayed(_fit)(c, train, opt['system'], False) for c in configs)

    truth = dataset.relevant_truth
    evaluator = get_evaluator('selection')
    runs = []
    for cfg, result in zip(configs, results):
        directory = opt['output'] if repeat == 1 else os.path.join(opt['output'], f'seed{cfg.seed}')
        history = history_table(result)
        run = {'seed': cfg.seed, 'q': cfg.q, 'found': [int(f) for f in result.found],
               'found_names': [dataset.feature_names[f] for f in result.found],
               'n_trees': len(result.ensemble), 'runtime': result.runtime}
        if truth:
            curve = f1_curve_table(result.state.history, truth)
            history['f1'] = history['iteration'].map(dict(zip(curve['iteration'], curve['f1'])))
            write_table(curve, directory, 'f1_curve', opt['format'])
            score = evaluator.selection_evaluate(result.found, truth)
            run.update(precision=score.precision, recall=score.recall, f1=score.f1)
        if test is not None and result.ensemble:
            predictions = predict_ensemble(result, test.feature_values)
            run['accuracy'] = evaluator.accuracy_evaluate(predictions, test.labels)
        write_table(history, directory, 'history', opt['format'])
        write_table(importance_table(result, dataset.feature_names), directory, 'importances', opt['format'])
        runs.append(run)

    summary = {'runs': runs, 'report': evaluator.report(), 'config': {'command': 'run', **opt.opt}}
    write_json(summary, opt['output'], 'summary')
    opt.save(opt['output'])
    return summary


def scenario_configs(opt):
    """Configs of ``converge``: one scenario from flags, a config list, or the reference tables."""
    if opt['scenario'] is not None:
        missing = [k for k in ('p', 'q', 'r') if opt[k] is None]
        if missing:
            raise ValueError(f'--scenario needs {", ".join("--" + k for k in missing)}')
        configs = [(opt['scenario'], opt['p'], opt['q'], opt['r'])]
    elif opt['configs'] is None:
        configs = list(REFERENCE_CONFIGS)
    else:
        configs = [as_config(c) for c in opt['configs']]
    if not configs:
        raise ValueError('no scenario to analyse')
    for c in configs:
        ScenarioSpec(*as_config(c))
    return configs


def cmd_converge(opt):
    configs = scenario_configs(opt)
    alphas = [float(a) for a in opt['alphas']]
    if not alphas:
        raise ValueError('no alpha to analyse')
    simulate, horizon = int(opt['simulate']), int(opt['horizon'])
    if simulate < 0 or horizon < 0:
        raise ValueError(f'simulate and horizon must be non-negative, got {simulate} and {horizon}')
    fractional = [a for a in alphas if a not in (0, 1)]
    if fractional and not simulate:
        raise ValueError(f'alpha values {fractional} have no analytic chain, add --simulate')
    discovery = bool(opt['simultaneous_discovery'])
    rng = np.random.default_rng(int(opt['seed']))
    jobs = int(opt['jobs'])
    fmt = opt['format']
    outputs = {}

    tables = reproduce_tables(configs, discovery)
    tables['rs_display'] = tables['rs_time'].map(format_expected_time)
    tables['srs_display'] = tables['srs_time'].map(format_expected_time)
    outputs['tables'] = write_table(tables, opt['output'], 'tables', fmt)
    times = expected_time_table(configs, alphas, simulate, rng, discovery, jobs)
    outputs['expected_times'] = write_table(times, opt['output'], 'expected_times', fmt)
    if horizon:
        analytic = [a for a in alphas if a in (0, 1)]
        outputs['curves'] = write_table(curve_table(configs, horizon, analytic, discovery), opt['output'],
                                        'curves', fmt)
        if simulate:
            curves = simulated_curve_table(configs, horizon, simulate, rng, alphas, discovery, jobs)
            outputs['simulated_curves'] = write_table(curves, opt['output'], 'simulated_curves', fmt)
    opt.save(opt['output'])
    return outputs


def cmd_oracle(opt):
    limit, tolerance = int(opt['limit']), float(opt['tolerance'])
    if opt['distribution']:
        dist = load_distribution(opt['distribution'])
    elif opt['dataset']:
        dataset = load_csv(opt['dataset'])
        variables = opt['variables'] if opt['variables'] is not None else range(dataset.p)
        dist = to_distribution(dataset, variables, limit)
    else:
        raise ValueError('oracle needs --distribution or --dataset')
    if dist.p > limit:
        raise CapacityError('relevance search', dist.p, limit)
    q = int(opt['q']) if opt['q'] is not None else dist.p

    rows = []
    for i in range(dist.p):
        report = relevance_class(dist, i, tolerance, limit)
        rows.append({
            'variable': report.variable,
            'relevance': report.relevance_class,
            'degree': report.degree,
            'witness': ' '.join(report.witness_conditioning or ()),
            'importance': asymptotic_importance(dist, i, q, tolerance, limit),
        })
    frame = pd.DataFrame(rows, columns=['variable', 'relevance', 'degree', 'witness', 'importance'])
    frame['degree'] = frame['degree'].astype('Int64')
    boundary = markov_boundary(dist, tolerance)
    summary = {
        'q': q,
        'markov_boundary': list(boundary.variables),
        'strictly_positive': boundary.strictly_positive,
        'degree_histogram': {str(k): v for k, v in degree_histogram(dist, tolerance, limit).items()},
        'mutual_information': mutual_information(dist),
    }
    write_table(frame, opt['output'], 'relevance', opt['format'])
    write_json(summary, opt['output'], 'oracle')
    opt.save(opt['output'])
    return summary


command_register_table = {
    'generate': cmd_generate,
    'run': cmd_run,
    'converge': cmd_converge,
    'oracle': cmd_oracle,
}


def run_srslab(command, config_file=None, overrides=None, debug=False):
    """Resolve the config of ``command`` and run it.

    Returns:
        dict: what the command produced (paths or summary).

    """
    if command not in command_register_table:
        raise NotImplementedError(f'The command [{command}] has not been implemented')
    opt = Config(command, config_file, overrides, debug)
    result = command_register_table[command](opt)
    logger.info(f'[Finish {command}, outputs in {opt["output"]}]')
    return result


def _global_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('-c', '--config', type=str, help='config file(yaml) path')
    parser.add_argument('--seed', type=int, help='random seed')
    parser.add_argument('--output', type=str, help='output directory')
    parser.add_argument('--format', type=str, choices=['csv', 'json'], help='table format')
    parser.add_argument('--jobs', type=int, help='parallel workers')
    parser.add_argument('--log-dir', dest='log_dir', type=str, help='log directory, empty for no log file')
    parser.add_argument('-d', '--debug', action='store_true', default=None, help='log at debug level')
    return parser


def build_parser():
    parent = _global_parser()
    parser = argparse.ArgumentParser(prog='srslab', description='Sequential random subspace feature selection')
    commands = parser.add_subparsers(dest='command')

    gen = commands.add_parser('generate', parents=[parent], help='write a synthetic dataset')
    gen.add_argument('--scenario', type=str)
    gen.add_argument('--p', type=int)
    gen.add_argument('--r', type=int)
    gen.add_argument('--n', type=int)
    gen.add_argument('--noise', type=float)
    gen.add_argument('--arity', type=int)
    gen.add_argument('--clusters-per-class', dest='clusters_per_class', type=int)
    gen.add_argument('--feature-noise', dest='feature_noise', type=float)
    gen.add_argument('--name', type=str, help='file stem, defaults to scenario and sizes')

    run = commands.add_parser('run', parents=[parent], help='select features on a dataset')
    run.add_argument('--dataset', type=str)
    run.add_argument('--truth', type=str, help='ground truth sidecar, defaults to <dataset>.relevant')
    run.add_argument('--system', type=str, choices=['SRS', 'RS'])
    run.add_argument('--q', type=str, help='subspace size, an integer or "p"')
    run.add_argument('--T', type=int)
    run.add_argument('--alpha', type=float)
    run.add_argument('--K', type=int)
    run.add_argument('--probe-count', dest='probe_count', type=int)
    run.add_argument('--probe-rule', dest='probe_rule', type=str)
    run.add_argument('--probe-quantile', dest='probe_quantile', type=float)
    run.add_argument('--probe-kind', dest='probe_kind', type=str)
    run.add_argument('--probe-arity', dest='probe_arity', type=int)
    run.add_argument('--acceptance', type=str, choices=['binomial', 'per_tree'])
    run.add_argument('--significance', type=float, help='family-wise level of the binomial acceptance')
    run.add_argument('--trees-per-iteration', dest='trees_per_iteration', type=int)
    run.add_argument('--repeat', type=int, help='independent runs with seeds seed..seed+repeat-1')
    run.add_argument('--test-fraction', dest='test_fraction', type=float)

    converge = commands.add_parser('converge', parents=[parent], help='expected convergence times')
    converge.add_argument('--scenario', type=str)
    converge.add_argument('--p', type=int)
    converge.add_argument('--q', type=int)
    converge.add_argument('--r', type=int)
    converge.add_argument('--alphas', type=float, nargs='+')
    converge.add_argument('--simulate', type=int, help='Monte Carlo replicates')
    converge.add_argument('--horizon', type=int, help='length of the expected found curves')
    converge.add_argument('--single-discovery', dest='simultaneous_discovery', action='store_const', const=False,
                          default=None, help='at most one chain variable found per iteration')

    oracle = commands.add_parser('oracle', parents=[parent], help='exact relevance of a small distribution')
    oracle.add_argument('--distribution', type=str)
    oracle.add_argument('--dataset', type=str)
    oracle.add_argument('--variables', type=int, nargs='+')
    oracle.add_argument('--q', type=int)
    oracle.add_argument('--tolerance', type=float)
    oracle.add_argument('--limit', type=int)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    if args.command is None:
        parser.print_usage()
        return EXIT_USAGE
    overrides = {k: v for k, v in vars(args).items() if k not in ('command', 'config')}
    try:
        run_srslab(args.command, args.config, overrides)
    except CapacityError as e:
        logger.error(f'[Capacity error: {e}]')
        return EXIT_CAPACITY
    except (DatasetFormatError, DistributionError, OSError) as e:
        logger.error(f'[I/O error: {e}]')
        return EXIT_IO
    except (ValueError, NotImplementedError) as e:
        logger.error(f'[Usage error: {e}]')
        return EXIT_USAGE
    return EXIT_OK


if __name__ == '__main__':
    raise SystemExit(main())
