# @Time   : 2026/10/15
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/17
# @Author : SRSLab Team

"""Order 1 Markov chains over the number of relevant variables found.

States are ``0..r``; state ``r`` (everything found) is absorbing. Chains
assume infinite samples and ``K = q``: a relevant variable is found as soon
as the subspace contains it together with the conditioning it needs.

* chaining: ``x_j`` needs ``x_1 .. x_{j-1}``. Several variables of the chain
  may be found by the same tree unless ``simultaneous_discovery`` is off.
* clique: a tree finds one member, picked uniformly among the ``r``, when
  the subspace holds the whole clique.
* marginal: every relevant variable drawn is found.

With ``alpha = 1`` the ``i`` found variables are kept and the ``q - i``
other slots are drawn among the ``p - i`` other features.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger
from scipy.linalg import LinAlgError, solve
from scipy.special import gammaln

from srslab.exceptions import ConvergenceError

CHAIN_SCENARIOS = ('chaining', 'clique', 'marginal')
ROW_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ScenarioSpec:
    scenario: str
    p: int
    q: int
    r: int
    alpha: float = 0.0
    simultaneous_discovery: bool = True

    def __post_init__(self):
        if self.scenario not in CHAIN_SCENARIOS:
            raise ValueError(f'unknown scenario [{self.scenario}], expected one of {", ".join(CHAIN_SCENARIOS)}')
        if self.q < 1 or self.r < 0:
            raise ValueError(f'q must be positive and r non-negative, got q={self.q}, r={self.r}')
        if not self.r <= self.q <= self.p:
            raise ValueError(f'need r <= q <= p, got p={self.p}, q={self.q}, r={self.r}')
        if not 0 <= self.alpha <= 1:
            raise ValueError(f'alpha must lie in [0, 1], got {self.alpha}')

    @property
    def retains_found(self):
        return self.alpha == 1


class MarkovChainModel:
    """Absorbing chain with monotone (upper triangular) transitions.

    Args:
        transition (array-like): ``(r + 1) x (r + 1)`` row stochastic matrix.
        spec (ScenarioSpec, optional): scenario the chain was built from.

    Raises:
        ConvergenceError: non-square matrix, rows not summing to one, negative
            entries, transitions to fewer found variables, or a last state that
            is not absorbing.

    """

    def __init__(self, transition, spec: Optional[ScenarioSpec] = None):
        transition = np.array(transition, dtype=np.float64)
        if transition.ndim != 2 or transition.shape[0] != transition.shape[1] or transition.shape[0] < 1:
            raise ConvergenceError(f'transition matrix must be square, got shape {transition.shape}')
        if np.any(transition < 0):
            raise ConvergenceError('transition probabilities must be non-negative')
        if np.max(np.abs(transition.sum(axis=1) - 1)) > ROW_TOLERANCE:
            raise ConvergenceError('transition rows must sum to 1')
        if np.any(np.tril(transition, k=-1) > 0):
            raise ConvergenceError('transitions may not decrease the number of found variables')
        if abs(transition[-1, -1] - 1) > ROW_TOLERANCE:
            raise ConvergenceError('last state must be absorbing')
        transition.setflags(write=False)
        self.transition = transition
        self.spec = spec

    @property
    def r(self):
        return self.transition.shape[0] - 1

    def leave_probabilities(self):
        """Probability of leaving each state, summed off the diagonal."""
        return np.triu(self.transition, k=1).sum(axis=1)


def log_comb(n, k):
    """``log C(n, k)``, ``-inf`` outside ``0 <= k <= n``; broadcasts over arrays."""
    n, k = np.asarray(n, dtype=np.float64), np.asarray(k, dtype=np.float64)
    valid = (k >= 0) & (k <= n)
    k = np.where(valid, k, 0.0)
    value = np.where(valid, gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1), -np.inf)
    return value if value.ndim else float(value)


def hypergeometric_pmf(k, total, successes, draws):
    """Probability of ``k`` successes among ``draws`` taken without replacement."""
    return np.exp(log_comb(successes, k) + log_comb(total - successes, draws - k) - log_comb(total, draws))


def comb_ratio(n1, k1, n2, k2):
    """``C(n1, k1) / C(n2, k2)`` through log-gamma."""
    numer = log_comb(n1, k1)
    if numer == -np.inf:
        return 0.0
    return float(np.exp(numer - log_comb(n2, k2)))


def _prefix_probabilities(spec, i):
    """``G[m]``: probability that the next ``m`` chain variables are all in the subspace."""
    p, q, r = spec.p, spec.q, spec.r
    if spec.retains_found:
        return [comb_ratio(p - i - m, q - i - m, p - i, q - i) for m in range(r - i + 1)]
    # nothing kept: the whole prefix x_1 .. x_{i+m} must be drawn
    return [1.0] + [comb_ratio(p - i - m, q - i - m, p, q) for m in range(1, r - i + 1)]


def _chaining_row(spec, i):
    r = spec.r
    row = np.zeros(r + 1)
    g = _prefix_probabilities(spec, i)
    if spec.simultaneous_discovery:
        for m in range(1, r - i):
            row[i + m] = g[m] - g[m + 1]
        row[r] = g[r - i]
    else:
        row[i + 1] = g[1]
    return row


def _clique_row(spec, i):
    p, q, r = spec.p, spec.q, spec.r
    if spec.retains_found:
        complete = comb_ratio(p - r, q - r, p - i, q - i)
    else:
        complete = comb_ratio(p - r, q - r, p, q)
    row = np.zeros(r + 1)
    row[i + 1] = complete * (r - i) / r
    return row


def _marginal_row(spec, i):
    p, q, r = spec.p, spec.q, spec.r
    row = np.zeros(r + 1)
    k = np.arange(1, r - i + 1)
    if spec.retains_found:
        row[i + 1:] = hypergeometric_pmf(k, p - i, r - i, q - i)
    else:
        row[i + 1:] = hypergeometric_pmf(k, p, r - i, q)
    return row


_row_builders = {
    'chaining': _chaining_row,
    'clique': _clique_row,
    'marginal': _marginal_row,
}


def build_chain(spec):
    """Transition matrix of the scenario for ``alpha`` in ``{0, 1}``.

    Raises:
        ValueError: fractional ``alpha`` (use :func:`simulate_process` instead).

    """
    if spec.alpha not in (0, 1):
        raise ValueError(f'analytic chains need alpha in {{0, 1}}, got {spec.alpha}')
    r = spec.r
    transition = np.zeros((r + 1, r + 1))
    for i in range(r):
        row = _row_builders[spec.scenario](spec, i)
        # the diagonal takes the rest so that the row sums to one
        row[i] = max(0.0, 1.0 - row.sum())
        transition[i] = row
    transition[r, r] = 1.0
    logger.debug(f'[Build {spec.scenario} chain: p={spec.p}, q={spec.q}, r={r}, alpha={spec.alpha}]')
    return MarkovChainModel(transition, spec)


def expected_absorption_times(model):
    """Expected number of iterations to absorption from every state.

    The first passage system is written with the leave probabilities on the
    diagonal, which keeps precision when they are tiny.

    Raises:
        ConvergenceError: a transient state can never be left, or the system is singular.

    """
    r = model.r
    if r == 0:
        return np.zeros(1)
    leave = model.leave_probabilities()[:r]
    if np.any(leave <= 0):
        stuck = int(np.flatnonzero(leave <= 0)[0])
        raise ConvergenceError(f'state {stuck} can never be left, the chain is not absorbing')
    a = -np.triu(model.transition[:r, :r], k=1)
    a[np.diag_indices(r)] = leave
    try:
        times = solve(a, np.ones(r))
    except LinAlgError as e:
        raise ConvergenceError(f'singular first passage system: {e}') from None
    return np.append(times, 0.0)


def expected_absorption_time(model):
    """Expected number of iterations to find all relevant variables, starting from none."""
    return float(expected_absorption_times(model)[0])


def expected_found_curve(model, T):
    """Expected number of found variables after ``t = 0..T`` iterations."""
    if T < 0:
        raise ValueError(f'T must be non-negative, got {T}')
    states = np.arange(model.r + 1)
    dist = np.zeros(model.r + 1)
    dist[0] = 1.0
    curve = np.empty(T + 1)
    curve[0] = 0.0
    for t in range(1, T + 1):
        dist = dist @ model.transition
        curve[t] = dist @ states
    return curve


def closed_form_estimate(spec):
    """Asymptotic estimate of the expected absorption time.

    chaining: ``(p / q) ** r`` without memory, a lower bound of ``C(p, q) / C(p - r, q - r)``;
    ``r p / q`` when keeping found variables.
    clique: ``r H_r C(p, q) / C(p - r, q - r)`` without memory, that value over ``r`` with it.
    marginal: ``(p / q) H_r`` without memory, ``sum_i (p - i) / ((r - i) (q - i))`` with it.

    Estimates assume ``r`` much smaller than ``q``; a warning is logged otherwise.
    """
    if spec.alpha not in (0, 1):
        raise ValueError(f'closed forms need alpha in {{0, 1}}, got {spec.alpha}')
    p, q, r = spec.p, spec.q, spec.r
    if r == 0:
        return 0.0
    if r > q / 10:
        logger.warning(f'[Closed form for r={r}, q={q} is outside its r << q regime]')
    harmonic = sum(1.0 / k for k in range(1, r + 1))
    if spec.scenario == 'chaining':
        return r * p / q if spec.retains_found else (p / q) ** r
    if spec.scenario == 'clique':
        naive = r * harmonic / comb_ratio(p - r, q - r, p, q)
        return naive / r if spec.retains_found else naive
    if spec.retains_found:
        return sum((p - i) / ((r - i) * (q - i)) for i in range(r))
    return p / q * harmonic


def n_retained(spec, found):
    """Size of ``R`` for a given number of found variables, elementwise on arrays."""
    return np.minimum(math.floor(spec.alpha * spec.q + 1e-9), found)
