# @Time   : 2026/10/13
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

from itertools import product

import numpy as np
from loguru import logger

from srslab.distribution import JointDistribution
from srslab.exceptions import CapacityError
from ..base_dataset import BaseGenerator, Dataset, POPULATION_LIMIT


class MadelonGenerator(BaseGenerator):
    """Cluster benchmark in the spirit of madelon, on discrete features.

    Each class owns ``clusters_per_class`` centers over the ``r`` informative
    features. A sample picks its class and a cluster uniformly, then copies
    each center value with probability ``1 - feature_noise`` and draws it
    uniformly otherwise. Centers are drawn so that every informative feature
    has different class-conditional means, hence is marginally relevant.
    The remaining ``p - r`` features are uniform noise.
    """

    def _centers(self, rng):
        spec = self.spec
        k = spec.clusters_per_class
        centers = np.empty((2, k, spec.r), dtype=np.int64)
        for j in range(spec.r):
            while True:
                column = rng.integers(0, spec.arity, size=(2, k))
                if column[0].mean() != column[1].mean():
                    break
            centers[:, :, j] = column
        return centers

    def generate(self):
        spec = self.spec
        rng = np.random.default_rng(spec.seed)
        centers = self._centers(rng)
        labels = rng.integers(0, 2, size=spec.n)
        clusters = rng.integers(0, spec.clusters_per_class, size=spec.n)
        informative = centers[labels, clusters]
        resampled = rng.random((spec.n, spec.r)) < spec.feature_noise
        informative = np.where(resampled, rng.integers(0, spec.arity, size=(spec.n, spec.r)), informative)
        noise_features = rng.integers(0, spec.arity, size=(spec.n, spec.p - spec.r))
        values = np.concatenate([informative, noise_features], axis=1)
        flips = rng.random(spec.n) < spec.noise
        labels = np.logical_xor(labels, flips).astype(np.int64)
        logger.info(f'[Generate madelon_like dataset: n={spec.n}, p={spec.p}, r={spec.r}, '
                    f'arity={spec.arity}, feature_noise={spec.feature_noise}]')
        return Dataset(values, labels, np.full(spec.p, spec.arity), 2, self.relevant_truth)

    def population(self, limit=POPULATION_LIMIT):
        spec = self.spec
        if spec.p > limit:
            raise CapacityError('population table', spec.p, limit)
        a, r, k = spec.arity, spec.r, spec.clusters_per_class
        centers = self._centers(np.random.default_rng(spec.seed))
        block = np.array(list(product(range(a), repeat=r)), dtype=np.int64).reshape(a ** r, r)
        # P(x_j | center value) for every informative feature
        keep = 1 - spec.feature_noise
        per_feature = (block[:, None, None, :] == centers[None]) * keep + spec.feature_noise / a
        likelihood = per_feature.prod(axis=-1).mean(axis=-1)
        joint = likelihood / 2
        observed = np.stack([joint[:, 0] * (1 - spec.noise) + joint[:, 1] * spec.noise,
                             joint[:, 1] * (1 - spec.noise) + joint[:, 0] * spec.noise], axis=-1)
        table = observed.reshape((a,) * r + (1,) * (spec.p - r) + (2,)) / a ** (spec.p - r)
        table = np.broadcast_to(table, (a,) * spec.p + (2,))
        return JointDistribution(table, [f'x{i}' for i in range(spec.p)])
