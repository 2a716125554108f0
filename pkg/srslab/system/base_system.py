# @Time   : 2026/10/14
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from joblib import Parallel, delayed
from loguru import logger
from tqdm import tqdm

from srslab.model import mdi_importance, predict
from srslab.system.utils import ACCEPTANCE_RULES, PROBE_KINDS, PROBE_RULES, ZERO_TOLERANCE, null_win_rate, \
    probe_test, significant_wins


@dataclass(frozen=True)
class SrsConfig:
    """Parameters of a sequential random subspace run.

    Args:
        q: number of features held in memory by each tree.
        T: number of iterations.
        alpha: share of ``q`` reserved for already found features; 0 is plain random subspace.
        K: candidates per node, ``1 <= K <= q``; 1 grows totally randomized trees.
        probe_count: random probes added to each tree; 0 accepts any positive importance.
        probe_rule: ``strict_max`` (beat every probe) or ``quantile`` (beat ``probe_quantile``).
        probe_kind: ``permutation`` or ``uniform`` probes.
        acceptance: ``binomial`` adds a feature to ``F`` once its probe wins over all the trees
            that tested it are significant; ``per_tree`` adds it on its first win.
        significance: family-wise level of the ``binomial`` rule, split evenly over the features.
        trees_per_iteration: trees grown from the same ``F`` before it is updated.
        n_jobs: joblib workers for the trees of one iteration.
    """
    q: int
    T: int
    alpha: float = 0.5
    K: int = 1
    probe_count: int = 1
    probe_rule: str = 'strict_max'
    probe_quantile: float = 0.95
    probe_kind: str = 'permutation'
    probe_arity: int = 2
    zero_tolerance: float = ZERO_TOLERANCE
    acceptance: str = 'binomial'
    significance: float = 0.05
    trees_per_iteration: int = 1
    n_jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f'q must be positive, got {self.q}')
        if self.T < 0:
            raise ValueError(f'T must be non-negative, got {self.T}')
        if not 0 <= self.alpha <= 1:
            raise ValueError(f'alpha must lie in [0, 1], got {self.alpha}')
        if not 1 <= self.K <= self.q:
            raise ValueError(f'K must lie in [1, q={self.q}], got {self.K}')
        if self.probe_count < 0:
            raise ValueError(f'probe_count must be non-negative, got {self.probe_count}')
        if self.probe_rule not in PROBE_RULES:
            raise ValueError(f'unknown probe rule [{self.probe_rule}], expected one of {", ".join(PROBE_RULES)}')
        if not 0 <= self.probe_quantile <= 1:
            raise ValueError(f'probe_quantile must lie in [0, 1], got {self.probe_quantile}')
        if self.probe_kind not in PROBE_KINDS:
            raise ValueError(f'unknown probe kind [{self.probe_kind}], expected one of {", ".join(PROBE_KINDS)}')
        if self.probe_arity < 2:
            raise ValueError(f'probe_arity must be at least 2, got {self.probe_arity}')
        if self.zero_tolerance < 0:
            raise ValueError(f'zero_tolerance must be non-negative, got {self.zero_tolerance}')
        if self.acceptance not in ACCEPTANCE_RULES:
            raise ValueError(f'unknown acceptance [{self.acceptance}], expected one of {", ".join(ACCEPTANCE_RULES)}')
        if not 0 < self.significance <= 1:
            raise ValueError(f'significance must lie in (0, 1], got {self.significance}')
        if self.trees_per_iteration < 1:
            raise ValueError(f'trees_per_iteration must be positive, got {self.trees_per_iteration}')


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    subspace: Tuple[int, ...]
    retained: Tuple[int, ...]
    accepted: Tuple[int, ...]
    new: Tuple[int, ...]
    found_size: int


@dataclass
class SrsState:
    """Mutable state of a run: found features in discovery order, trees and history.

    ``tested`` and ``wins`` count, per feature, the probe tests taken and passed.
    """
    found: List[int] = field(default_factory=list)
    ensemble: list = field(default_factory=list)
    history: List[IterationRecord] = field(default_factory=list)
    tested: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    wins: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    @classmethod
    def empty(cls, p):
        return cls(tested=np.zeros(p, dtype=np.int64), wins=np.zeros(p, dtype=np.int64))


@dataclass
class SrsResult:
    state: SrsState
    importances: np.ndarray
    found: Tuple[int, ...]
    n_classes: int
    runtime: float = 0.0

    @property
    def ensemble(self):
        return self.state.ensemble


class BaseSystem(ABC):
    """Base class of subspace ensemble systems.

    A system repeats, ``T`` times: draw a subspace, grow a tree on it with
    the probe test, and add the confirmed features to ``F``. Subclasses only
    decide how the subspace is drawn.
    """

    def __init__(self, config, dataset, show_progress=False):
        """

        Args:
            config (SrsConfig): run parameters.
            dataset (Dataset): training rows.
            show_progress (bool, optional): display a progress bar. Defaults to False.

        Raises:
            ValueError: ``q`` larger than the number of features.

        """
        if config.q > dataset.p:
            raise ValueError(f'q={config.q} exceeds the {dataset.p} available features')
        self.config = config
        self.dataset = dataset
        self.show_progress = show_progress
        self.state = SrsState.empty(dataset.p)

    @abstractmethod
    def draw_subspace(self, rng):
        """Subspace of the next tree given the current ``self.state.found``."""
        pass

    def _grow(self, subspace, rng):
        cfg = self.config
        return probe_test(self.dataset, subspace.features, cfg.K, cfg.probe_count, cfg.probe_rule, rng,
                          cfg.probe_kind, cfg.probe_quantile, cfg.probe_arity, cfg.zero_tolerance)

    def _grow_seeded(self, subspace, seed):
        return self._grow(subspace, np.random.default_rng(seed))

    def confirm(self, accepted):
        """Features of ``accepted`` that may enter ``F`` given the win counts so far.

        Without probes every accepted feature enters, which is the exact rule
        on population datasets.
        """
        cfg = self.config
        if not accepted or cfg.probe_count == 0 or cfg.acceptance == 'per_tree':
            return list(accepted)
        accepted = np.asarray(accepted, dtype=np.int64)
        null_rate = null_win_rate(cfg.probe_count, cfg.probe_rule, cfg.probe_quantile)
        passed = significant_wins(self.state.wins[accepted], self.state.tested[accepted], null_rate,
                                  cfg.significance / self.dataset.p)
        return [int(f) for f in accepted[passed]]

    def step(self, iteration, rng, parallel=None):
        """Run one iteration and record it."""
        cfg = self.config
        if cfg.trees_per_iteration == 1:
            subspaces = [self.draw_subspace(rng)]
            outcomes = [self._grow(subspaces[0], rng)]
        else:
            subspaces = [self.draw_subspace(rng) for _ in range(cfg.trees_per_iteration)]
            seeds = rng.integers(0, 2 ** 63 - 1, size=len(subspaces))
            outcomes = parallel(delayed(self._grow_seeded)(s, int(seed)) for s, seed in zip(subspaces, seeds))

        for subspace, (_, acc) in zip(subspaces, outcomes):
            self.state.tested[list(subspace.features)] += 1
            self.state.wins[list(acc)] += 1
        accepted = sorted({f for _, acc in outcomes for f in acc})
        known = set(self.state.found)
        new = tuple(f for f in self.confirm(accepted) if f not in known)
        self.state.found.extend(new)
        self.state.ensemble.extend(tree for tree, _ in outcomes)
        for subspace in subspaces:
            self.state.history.append(IterationRecord(iteration, subspace.features, subspace.retained,
                                                      tuple(accepted), new, len(self.state.found)))
        if new:
            logger.debug(f'[Iteration {iteration}: found {list(new)}, |F| = {len(self.state.found)}]')

    def fit(self):
        """Run all iterations from a fresh state.

        Returns:
            SrsResult: found features, trees, averaged importances and history.

        """
        cfg = self.config
        rng = np.random.default_rng(cfg.seed)
        self.state = SrsState.empty(self.dataset.p)
        start = time.perf_counter()
        parallel = Parallel(n_jobs=cfg.n_jobs) if cfg.trees_per_iteration > 1 else None
        for iteration in tqdm(range(1, cfg.T + 1), disable=not self.show_progress, leave=False):
            self.step(iteration, rng, parallel)
        runtime = time.perf_counter() - start

        result = SrsResult(self.state, self.ensemble_importance(), tuple(self.state.found),
                           self.dataset.n_classes, runtime)
        logger.info(f'[Finish {type(self).__name__}: T={cfg.T}, q={cfg.q}, alpha={cfg.alpha}, '
                    f'|F|={len(result.found)}, {runtime:.2f}s]')
        return result

    def ensemble_importance(self):
        """Per-feature importance summed over trees and divided by the ensemble size."""
        total = np.zeros(self.dataset.p)
        for tree in self.state.ensemble:
            for feature, value in mdi_importance(tree).items():
                total[feature] += value
        if self.state.ensemble:
            total /= len(self.state.ensemble)
        return total


def predict_ensemble(result, samples):
    """Plurality vote of the ensemble trees, ties to the smallest class.

    Raises:
        ValueError: empty ensemble.

    """
    if not result.ensemble:
        raise ValueError('cannot predict with an empty ensemble')
    samples = np.asarray(samples)
    single = samples.ndim == 1
    samples = np.atleast_2d(samples)
    votes = np.zeros((result.n_classes, samples.shape[0]), dtype=np.int64)
    for tree in result.ensemble:
        preds = predict(tree, samples)
        np.add.at(votes, (preds, np.arange(samples.shape[0])), 1)
    winners = np.argmax(votes, axis=0)
    return int(winners[0]) if single else winners

