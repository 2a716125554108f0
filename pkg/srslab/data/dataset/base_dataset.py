# @Time   : 2026/10/12
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product

import numpy as np
from loguru import logger

from srslab.distribution import JointDistribution
from srslab.exceptions import CapacityError

SCENARIOS = ('chaining', 'clique', 'marginal', 'madelon_like')
POPULATION_LIMIT = 20


class Dataset:
    """Discrete feature matrix, class labels and optional ground truth.

    A dataset built with ``weights`` is a population dataset: each row is one
    joint assignment and its weight is the probability of that assignment.
    Trees grown on it see exact impurities instead of sample estimates.

    Args:
        feature_values (array-like): ``n x p`` matrix of non-negative integers.
        labels (array-like): ``n`` class indices.
        arities (list of int, optional): categories per feature. Defaults to ``max + 1``.
        n_classes (int, optional): number of classes. Defaults to ``max(2, max label + 1)``.
        relevant_truth (iterable of int, optional): indices of the truly relevant features.
        weights (array-like, optional): row probabilities of a population dataset.
        feature_names (list of str, optional): defaults to ``x0..x{p-1}``.

    """

    def __init__(self, feature_values, labels, arities=None, n_classes=None, relevant_truth=None, weights=None,
                 feature_names=None):
        values = np.asarray(feature_values)
        labels = np.asarray(labels)
        if values.ndim != 2:
            raise ValueError(f'feature_values must be a matrix, got shape {values.shape}')
        if labels.ndim != 1 or labels.shape[0] != values.shape[0]:
            raise ValueError(f'{labels.shape[0] if labels.ndim == 1 else labels.shape} labels '
                             f'for {values.shape[0]} rows')
        if values.shape[0] == 0:
            raise ValueError('dataset has no rows')
        if values.size and not np.issubdtype(values.dtype, np.integer):
            raise ValueError('feature values must be integers')
        if not np.issubdtype(labels.dtype, np.integer):
            raise ValueError('labels must be integers')
        values = values.astype(np.int64)
        labels = labels.astype(np.int64)
        n, p = values.shape

        if arities is None:
            arities = values.max(axis=0) + 1 if p else np.zeros(0, dtype=np.int64)
        arities = np.asarray(arities, dtype=np.int64)
        if arities.shape != (p,):
            raise ValueError(f'{arities.size} arities for {p} features')
        if np.any(arities < 1):
            raise ValueError('every arity must be positive')
        if values.size and (values.min() < 0 or np.any(values >= arities)):
            raise ValueError('feature value outside its arity')
        if n_classes is None:
            n_classes = max(2, int(labels.max()) + 1)
        if labels.min() < 0 or labels.max() >= n_classes:
            raise ValueError(f'label outside 0..{n_classes - 1}')

        if relevant_truth is not None:
            relevant_truth = frozenset(int(i) for i in relevant_truth)
            if any(not 0 <= i < p for i in relevant_truth):
                raise ValueError(f'relevant feature outside 0..{p - 1}')
        if weights is not None:
            weights = np.asarray(weights, dtype=np.float64)
            if weights.shape != (n,) or np.any(weights < 0):
                raise ValueError('weights must be one non-negative value per row')
            total = weights.sum()
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f'row weights sum to {total}, not 1')
            weights = weights / total
        if feature_names is None:
            feature_names = [f'x{i}' for i in range(p)]
        feature_names = tuple(str(name) for name in feature_names)
        if len(feature_names) != p:
            raise ValueError(f'{len(feature_names)} names for {p} features')

        self.feature_values = values
        self.labels = labels
        self.arities = arities
        self.n_classes = int(n_classes)
        self.relevant_truth = relevant_truth
        self.weights = weights
        self.feature_names = feature_names

    @property
    def n_samples(self):
        return self.feature_values.shape[0]

    @property
    def p(self):
        return self.feature_values.shape[1]

    @property
    def is_population(self):
        return self.weights is not None

    def row_weights(self):
        """Row probabilities; uniform for sample datasets."""
        if self.weights is None:
            return np.full(self.n_samples, 1.0 / self.n_samples)
        return self.weights

    def subset_rows(self, rows):
        rows = np.asarray(rows)
        weights = None
        if self.weights is not None:
            weights = self.weights[rows]
            weights = weights / weights.sum()
        return Dataset(self.feature_values[rows], self.labels[rows], self.arities, self.n_classes,
                       self.relevant_truth, weights, self.feature_names)

    @classmethod
    def from_distribution(cls, dist, relevant_truth=None):
        """Population dataset with one weighted row per positive joint assignment."""
        flat = dist.probabilities.ravel()
        support = np.flatnonzero(flat > 0)
        coords = np.unravel_index(support, dist.probabilities.shape)
        values = np.stack(coords[:-1], axis=1) if dist.p else np.zeros((support.size, 0), dtype=np.int64)
        return cls(values, coords[-1], dist.arities, dist.output_arity, relevant_truth, flat[support],
                   dist.variable_names)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        same_weights = (self.weights is None and other.weights is None) or (
                self.weights is not None and other.weights is not None
                and np.allclose(self.weights, other.weights, rtol=0, atol=1e-12))
        return (np.array_equal(self.feature_values, other.feature_values)
                and np.array_equal(self.labels, other.labels)
                and np.array_equal(self.arities, other.arities)
                and self.n_classes == other.n_classes
                and self.relevant_truth == other.relevant_truth
                and self.feature_names == other.feature_names
                and same_weights)

    def __repr__(self):
        kind = 'population' if self.is_population else 'samples'
        return f'Dataset(n={self.n_samples}, p={self.p}, {kind})'


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of a synthetic scenario.

    ``arity``, ``clusters_per_class`` and ``feature_noise`` only matter for
    ``madelon_like``; the other scenarios always use binary features.
    """
    scenario: str
    p: int
    r: int
    n: int = 1000
    noise: float = 0.0
    seed: int = 0
    arity: int = 2
    clusters_per_class: int = 2
    feature_noise: float = 0.2

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f'unknown scenario [{self.scenario}], expected one of {", ".join(SCENARIOS)}')
        if self.p < 1:
            raise ValueError(f'p must be positive, got {self.p}')
        if not 0 <= self.r <= self.p:
            raise ValueError(f'r must lie in [0, p={self.p}], got {self.r}')
        if self.n < 1:
            raise ValueError(f'n must be positive, got {self.n}')
        if not 0 <= self.noise < 1:
            raise ValueError(f'noise must lie in [0, 1), got {self.noise}')
        if self.arity < 2:
            raise ValueError(f'arity must be at least 2, got {self.arity}')
        if self.clusters_per_class < 1:
            raise ValueError(f'clusters_per_class must be positive, got {self.clusters_per_class}')
        if not 0 <= self.feature_noise <= 1:
            raise ValueError(f'feature_noise must lie in [0, 1], got {self.feature_noise}')


class BaseGenerator(ABC):
    """Synthetic scenario with a known relevant set ``{0..r-1}``."""

    def __init__(self, spec):
        self.spec = spec
        self.check_spec()

    def check_spec(self):
        pass

    @property
    def relevant_truth(self):
        return frozenset(range(self.spec.r))

    @abstractmethod
    def generate(self):
        """Draw ``spec.n`` rows seeded by ``spec.seed``."""
        pass

    @abstractmethod
    def population(self, limit=POPULATION_LIMIT):
        """Exact joint distribution of the scenario.

        Raises:
            CapacityError: more than ``limit`` inputs.

        """
        pass


class BinaryGenerator(BaseGenerator):
    """Scenario on uniform binary inputs.

    Subclasses describe ``P(Y = 1 | x)`` on the relevant block; irrelevant
    inputs are uniform and independent of ``Y``. Label noise flips the drawn
    label with probability ``spec.noise``.
    """

    @abstractmethod
    def positive_rate(self, block):
        """``P(Y = 1 | x)`` before label noise, for each row of the ``m x r`` relevant block."""
        pass

    def _noisy_rate(self, block):
        rate = self.positive_rate(block)
        return rate * (1 - self.spec.noise) + (1 - rate) * self.spec.noise

    def generate(self):
        spec = self.spec
        rng = np.random.default_rng(spec.seed)
        values = rng.integers(0, 2, size=(spec.n, spec.p))
        rate = self.positive_rate(values[:, :spec.r])
        labels = rng.random(spec.n) < rate
        flips = rng.random(spec.n) < spec.noise
        labels = np.logical_xor(labels, flips).astype(np.int64)
        logger.info(f'[Generate {spec.scenario} dataset: n={spec.n}, p={spec.p}, r={spec.r}, noise={spec.noise}]')
        return Dataset(values, labels, np.full(spec.p, 2), 2, self.relevant_truth)

    def population(self, limit=POPULATION_LIMIT):
        spec = self.spec
        if spec.p > limit:
            raise CapacityError('population table', spec.p, limit)
        r = spec.r
        block = np.array(list(product((0, 1), repeat=r)), dtype=np.int64).reshape(2 ** r, r)
        rate = self._noisy_rate(block)
        table = np.stack([1 - rate, rate], axis=-1) / 2 ** spec.p
        table = table.reshape((2,) * r + (1,) * (spec.p - r) + (2,))
        table = np.broadcast_to(table, (2,) * spec.p + (2,))
        return JointDistribution(table, [f'x{i}' for i in range(spec.p)])
