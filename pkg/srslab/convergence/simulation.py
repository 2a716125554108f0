# @Time   : 2026/10/16
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

"""Direct simulation of the subspace draws and discovery rules, without trees.

Replicates are simulated together in vectorised form. Only the ``r`` relevant
variables are tracked: their membership in ``Q`` is drawn by selection
sampling, which has the same joint law as drawing ``C`` among ``p - |R|``
features.
"""

import math
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from loguru import logger

from srslab.exceptions import ConvergenceError
from srslab.convergence.markov_chain import n_retained

CHUNK_SIZE = 2500
MAX_ITERATIONS = 1_000_000


@dataclass
class SimulationResult:
    mean_time: float
    std_error: float
    absorption_times: np.ndarray
    empirical_curve: np.ndarray


def _draw_membership(found, n_ret, spec, rng):
    """Boolean ``(N, r)`` matrix of the relevant variables present in ``Q``."""
    n, r = found.shape
    keys = rng.random((n, r))
    keys[~found] = np.inf
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    retained = ranks < n_ret[:, None]

    in_q = retained.copy()
    slots = spec.q - n_ret
    pool = spec.p - n_ret
    for j in range(r):
        candidate = ~retained[:, j]
        take = candidate & (rng.random(n) * pool < slots)
        in_q[:, j] |= take
        slots = slots - take
        pool = pool - candidate
    return in_q


def _discover(found, in_q, spec, rng):
    n, r = found.shape
    if spec.scenario == 'marginal':
        return found | in_q
    if spec.scenario == 'clique':
        success = in_q.all(axis=1)
        pick = rng.integers(r, size=n)
        found = found.copy()
        found[np.flatnonzero(success), pick[success]] = True
        return found
    # chaining: found variables always form a prefix of the chain
    count = found.sum(axis=1)
    prefix = np.cumprod(in_q, axis=1).sum(axis=1)
    if spec.simultaneous_discovery:
        count = np.maximum(count, prefix)
    else:
        count = count + (prefix > count)
    return np.arange(r)[None, :] < count[:, None]


def _simulate_chunk(spec, replicates, seed, horizon, max_iterations):
    rng = np.random.default_rng(seed)
    r = spec.r
    found = np.zeros((replicates, r), dtype=bool)
    times = np.zeros(replicates, dtype=np.int64)
    curve = np.zeros(horizon + 1)
    active = np.arange(replicates)
    t = 0
    while active.size or t < horizon:
        t += 1
        if t > max_iterations:
            raise ConvergenceError(f'{active.size} replicates still running after {max_iterations} iterations')
        if active.size:
            current = found[active]
            n_ret = n_retained(spec, current.sum(axis=1))
            in_q = _draw_membership(current, n_ret, spec, rng)
            current = _discover(current, in_q, spec, rng)
            found[active] = current
            done = current.all(axis=1)
            times[active[done]] = t
            active = active[~done]
        if t <= horizon:
            curve[t] = found.sum()
    return times, curve


def simulate_process(spec, replicates, rng, horizon=0, max_iterations=MAX_ITERATIONS, n_jobs=1):
    """Monte Carlo estimate of the absorption time of a scenario.

    Any ``alpha`` in ``[0, 1]`` is accepted. Replicates are split into fixed
    chunks with their own seeds, so results do not depend on ``n_jobs``.

    Args:
        spec (ScenarioSpec): scenario to simulate.
        replicates (int): number of independent runs.
        rng (numpy.random.Generator): source of the chunk seeds.
        horizon (int, optional): length of the empirical found curve. Defaults to 0.
        max_iterations (int, optional): iterations after which the simulation gives up.
        n_jobs (int, optional): joblib workers. Defaults to 1.

    Returns:
        SimulationResult: mean time, its standard error, every absorption time
        and the mean number of found variables for ``t = 0..horizon``.

    Raises:
        ValueError: ``replicates < 1`` or negative ``horizon``.
        ConvergenceError: some replicate not absorbed within ``max_iterations``.

    """
    if replicates < 1:
        raise ValueError(f'replicates must be positive, got {replicates}')
    if horizon < 0:
        raise ValueError(f'horizon must be non-negative, got {horizon}')
    if spec.r == 0:
        return SimulationResult(0.0, 0.0, np.zeros(replicates, dtype=np.int64), np.zeros(horizon + 1))

    sizes = [CHUNK_SIZE] * (replicates // CHUNK_SIZE)
    if replicates % CHUNK_SIZE:
        sizes.append(replicates % CHUNK_SIZE)
    seeds = rng.integers(0, 2 ** 63 - 1, size=len(sizes))
    chunks = Parallel(n_jobs=n_jobs)(
        delayed(_simulate_chunk)(spec, size, int(seed), horizon, max_iterations)
        for size, seed in zip(sizes, seeds)
    )
    times = np.concatenate([c[0] for c in chunks])
    curve = np.sum([c[1] for c in chunks], axis=0) / replicates
    mean_time = float(times.mean())
    std_error = float(times.std(ddof=1) / math.sqrt(replicates)) if replicates > 1 else 0.0
    logger.info(f'[Simulate {spec.scenario} (p={spec.p}, q={spec.q}, r={spec.r}, alpha={spec.alpha}): '
                f'{mean_time:.2f} +- {std_error:.2f} over {replicates} replicates]')
    return SimulationResult(mean_time, std_error, times, curve)
