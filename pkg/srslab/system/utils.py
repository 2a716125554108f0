# @Time   : 2026/10/14
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pandas as pd
from scipy.stats import binom

from srslab.model import build_tree, mdi_importance

PROBE_RULES = ('strict_max', 'quantile')
PROBE_KINDS = ('permutation', 'uniform')
ACCEPTANCE_RULES = ('per_tree', 'binomial')
ZERO_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Subspace:
    """Features of one iteration: ``retained`` come from ``F``, ``fresh`` from ``V \\ retained``."""
    retained: Tuple[int, ...]
    fresh: Tuple[int, ...]

    @property
    def features(self):
        return self.retained + self.fresh

    def __len__(self):
        return len(self.retained) + len(self.fresh)


def select_subspace(found, p, q, alpha, rng):
    """Draw the subspace ``Q = R + C`` of one iteration.

    ``R`` holds ``min(floor(alpha * q), |found|)`` features drawn without
    replacement from ``found``; ``C`` completes ``Q`` to ``q`` features drawn
    without replacement from all features outside ``R`` (members of ``found``
    not retained may be drawn again).

    Raises:
        ValueError: ``q`` outside ``[1, p]`` or ``alpha`` outside ``[0, 1]``.

    """
    if not 1 <= q <= p:
        raise ValueError(f'q must lie in [1, p={p}], got {q}')
    if not 0 <= alpha <= 1:
        raise ValueError(f'alpha must lie in [0, 1], got {alpha}')
    found = np.asarray(list(found), dtype=np.int64)
    n_retained = min(math.floor(alpha * q + 1e-9), found.size)
    retained = np.empty(0, dtype=np.int64)
    if n_retained > 0:
        retained = rng.choice(found, size=n_retained, replace=False)
    fresh = np.empty(0, dtype=np.int64)
    if q - n_retained > 0:
        fresh = rng.choice(np.setdiff1d(np.arange(p), retained), size=q - n_retained, replace=False)
    return Subspace(tuple(int(f) for f in retained), tuple(int(f) for f in fresh))


def make_probes(ds, subspace, probe_count, rng, probe_kind='permutation', probe_arity=2):
    """``n x probe_count`` matrix of artificial irrelevant columns.

    ``permutation`` probes are row-shuffled copies of features drawn from the
    subspace, so they keep a real marginal; ``uniform`` probes are uniform over
    ``probe_arity`` values.
    """
    if probe_kind not in PROBE_KINDS:
        raise ValueError(f'unknown probe kind [{probe_kind}], expected one of {", ".join(PROBE_KINDS)}')
    columns = []
    for _ in range(probe_count):
        if probe_kind == 'permutation':
            source = subspace[int(rng.integers(len(subspace)))]
            columns.append(rng.permutation(ds.feature_values[:, source]))
        else:
            columns.append(rng.integers(0, probe_arity, size=ds.n_samples))
    if not columns:
        return np.empty((ds.n_samples, 0), dtype=np.int64)
    return np.stack(columns, axis=1)


def probe_threshold(probe_importances, probe_rule='strict_max', probe_quantile=0.95,
                    zero_tolerance=ZERO_TOLERANCE):
    """Importance a real feature must exceed to be accepted."""
    if probe_rule not in PROBE_RULES:
        raise ValueError(f'unknown probe rule [{probe_rule}], expected one of {", ".join(PROBE_RULES)}')
    if len(probe_importances) == 0:
        return zero_tolerance
    if probe_rule == 'strict_max':
        threshold = float(np.max(probe_importances))
    else:
        threshold = float(np.quantile(probe_importances, probe_quantile))
    return max(threshold, zero_tolerance)


def null_win_rate(probe_count, probe_rule='strict_max', probe_quantile=0.95):
    """Chance that a feature no better than the probes passes one probe test.

    A null feature is exchangeable with the ``m`` probes, so it has ``j``
    probes below it with probability ``1 / (m + 1)`` for every ``j``. It can
    only beat the ``gamma`` quantile when ``j > floor(gamma * (m - 1))``;
    ``strict_max`` is the case ``gamma = 1``, giving ``1 / (m + 1)``.
    """
    if probe_count < 1:
        raise ValueError(f'the win rate needs at least one probe, got {probe_count}')
    gamma = 1.0 if probe_rule == 'strict_max' else probe_quantile
    return (probe_count - math.floor(gamma * (probe_count - 1) + 1e-9)) / (probe_count + 1)


def significant_wins(wins, tested, null_rate, level):
    """Mask of the features whose win counts are unlikely under ``Binomial(tested, null_rate)``.

    Args:
        wins (numpy.ndarray): probe tests passed by each feature.
        tested (numpy.ndarray): probe tests taken by each feature.
        null_rate (float): win rate of a feature no better than the probes.
        level (float): largest accepted p-value.

    """
    wins = np.asarray(wins)
    p_values = np.where(wins > 0, binom.sf(wins - 1, np.asarray(tested), null_rate), 1.0)
    return p_values <= level


def probe_test(ds, subspace, K, probe_count, probe_rule, rng, probe_kind='permutation', probe_quantile=0.95,
               probe_arity=2, zero_tolerance=ZERO_TOLERANCE):
    """Grow one tree on ``subspace`` plus random probes and keep the features beating them.

    Probes are extra columns; they do not take the place of real features.
    Without probes a feature is accepted when its importance exceeds
    ``zero_tolerance``, which is the exact rule on population datasets.

    Returns:
        tuple: the tree and the sorted tuple of accepted real features.

    """
    subspace = tuple(int(f) for f in subspace)
    probes = make_probes(ds, subspace, probe_count, rng, probe_kind, probe_arity)
    tree = build_tree(ds, subspace, K, rng, probe_values=probes)
    importances = mdi_importance(tree, include_probes=True)
    probe_importances = [importances[f] for f in sorted(tree.probe_features)]
    threshold = probe_threshold(probe_importances, probe_rule, probe_quantile, zero_tolerance)
    accepted = tuple(f for f in sorted(subspace) if importances[f] > threshold)
    return tree, accepted


def history_table(result):
    """One row per iteration: sizes of ``Q``, ``R``, accepted features and ``F``."""
    columns = ['iteration', 'subspace_size', 'retained_count', 'accepted_count', 'new_count', 'found_size']
    rows = [(h.iteration, len(h.subspace), len(h.retained), len(h.accepted), len(h.new), h.found_size)
            for h in result.state.history]
    return pd.DataFrame(rows, columns=columns)


def importance_table(result, feature_names=None):
    """Ensemble importance of every feature, ``found`` flags the members of ``F``."""
    found = set(result.found)
    p = len(result.importances)
    names = feature_names if feature_names is not None else [f'x{i}' for i in range(p)]
    return pd.DataFrame({
        'feature': np.arange(p),
        'name': list(names),
        'importance': result.importances,
        'found': [int(i in found) for i in range(p)],
    })
