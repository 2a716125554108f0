# @Time   : 2026/10/16
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

import math

import numpy as np
import pandas as pd
from loguru import logger

from .markov_chain import ScenarioSpec, build_chain, closed_form_estimate, expected_absorption_time, \
    expected_found_curve
from .simulation import simulate_process

SCIENTIFIC_THRESHOLD = 1e6

# (scenario, p, q, r) of the published expected time tables
REFERENCE_CONFIGS = (
    ('chaining', 10000, 100, 1),
    ('chaining', 10000, 100, 2),
    ('chaining', 10000, 100, 3),
    ('chaining', 10000, 100, 5),
    ('chaining', 100000, 100, 3),
    ('clique', 10000, 100, 1),
    ('clique', 10000, 100, 2),
    ('clique', 10000, 100, 3),
    ('clique', 10000, 100, 4),
    ('clique', 10000, 1000, 4),
    ('marginal', 10000, 100, 10),
    ('marginal', 10000, 100, 50),
    ('marginal', 10000, 100, 90),
    ('marginal', 10000, 100, 100),
    ('marginal', 25000, 100, 50),
)


def as_config(config):
    """``(scenario, p, q, r)`` from a tuple, a dict or a :class:`ScenarioSpec`."""
    if isinstance(config, ScenarioSpec):
        return config.scenario, config.p, config.q, config.r
    if isinstance(config, dict):
        return config['scenario'], int(config['p']), int(config['q']), int(config['r'])
    scenario, p, q, r = config
    return scenario, int(p), int(q), int(r)


def format_expected_time(value):
    """Integer below ``10^6``, three significant digits in scientific form above."""
    if not math.isfinite(value):
        return str(value)
    if value < SCIENTIFIC_THRESHOLD:
        return str(int(round(value)))
    return f'{value:.2e}'


def reproduce_tables(configs=REFERENCE_CONFIGS, simultaneous_discovery=True):
    """Expected iterations to find all relevant variables, without (RS) and with (SRS) memory.

    Returns:
        pandas.DataFrame: one row per config with the exact chain times and the
        closed form estimates.

    """
    rows = []
    for config in configs:
        scenario, p, q, r = as_config(config)
        rs = ScenarioSpec(scenario, p, q, r, 0.0, simultaneous_discovery)
        srs = ScenarioSpec(scenario, p, q, r, 1.0, simultaneous_discovery)
        rows.append({
            'scenario': scenario, 'p': p, 'q': q, 'r': r,
            'rs_time': expected_absorption_time(build_chain(rs)),
            'srs_time': expected_absorption_time(build_chain(srs)),
            'rs_estimate': closed_form_estimate(rs),
            'srs_estimate': closed_form_estimate(srs),
        })
    logger.info(f'[Reproduce expected times for {len(rows)} configurations]')
    return pd.DataFrame(rows, columns=['scenario', 'p', 'q', 'r', 'rs_time', 'srs_time',
                                       'rs_estimate', 'srs_estimate'])


def expected_time_table(configs, alphas=(0.0, 1.0), simulate=0, rng=None, simultaneous_discovery=True, n_jobs=1):
    """Long form table ``scenario, p, q, r, alpha, expected_time``.

    With ``simulate > 0`` every row also gets the Monte Carlo mean and standard
    error over that many replicates; fractional ``alpha`` values then only get
    the Monte Carlo columns (``expected_time`` is NaN).
    """
    if simulate and rng is None:
        rng = np.random.default_rng(0)
    rows = []
    for config in configs:
        scenario, p, q, r = as_config(config)
        for alpha in alphas:
            spec = ScenarioSpec(scenario, p, q, r, float(alpha), simultaneous_discovery)
            analytic = alpha in (0, 1)
            row = {'scenario': scenario, 'p': p, 'q': q, 'r': r, 'alpha': float(alpha),
                   'expected_time': expected_absorption_time(build_chain(spec)) if analytic else np.nan}
            if simulate:
                result = simulate_process(spec, simulate, rng, n_jobs=n_jobs)
                row['mc_mean'] = result.mean_time
                row['mc_std_error'] = result.std_error
            rows.append(row)
    columns = ['scenario', 'p', 'q', 'r', 'alpha', 'expected_time']
    if simulate:
        columns += ['mc_mean', 'mc_std_error']
    return pd.DataFrame(rows, columns=columns)


def curve_table(configs, horizon, alphas=(0.0, 1.0), simultaneous_discovery=True):
    """Expected number of found variables for ``t = 0..horizon``, one block per config and alpha."""
    frames = []
    for config in configs:
        scenario, p, q, r = as_config(config)
        for alpha in alphas:
            spec = ScenarioSpec(scenario, p, q, r, float(alpha), simultaneous_discovery)
            curve = expected_found_curve(build_chain(spec), horizon)
            frames.append(pd.DataFrame({
                'scenario': scenario, 'p': p, 'q': q, 'r': r, 'alpha': float(alpha),
                't': np.arange(horizon + 1), 'expected_found': curve,
            }))
    if not frames:
        return pd.DataFrame(columns=['scenario', 'p', 'q', 'r', 'alpha', 't', 'expected_found'])
    return pd.concat(frames, ignore_index=True)


def simulated_curve_table(configs, horizon, replicates, rng, alphas=(0.0, 1.0), simultaneous_discovery=True,
                          n_jobs=1):
    """Monte Carlo counterpart of :func:`curve_table`, column ``empirical_found``."""
    frames = []
    for config in configs:
        scenario, p, q, r = as_config(config)
        for alpha in alphas:
            spec = ScenarioSpec(scenario, p, q, r, float(alpha), simultaneous_discovery)
            result = simulate_process(spec, replicates, rng, horizon=horizon, n_jobs=n_jobs)
            frames.append(pd.DataFrame({
                'scenario': scenario, 'p': p, 'q': q, 'r': r, 'alpha': float(alpha),
                't': np.arange(horizon + 1), 'empirical_found': result.empirical_curve,
            }))
    if not frames:
        return pd.DataFrame(columns=['scenario', 'p', 'q', 'r', 'alpha', 't', 'empirical_found'])
    return pd.concat(frames, ignore_index=True)
