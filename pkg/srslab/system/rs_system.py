# @Time   : 2026/10/14
# @Author : SRSLab Team

from srslab.system.base_system import BaseSystem
from srslab.system.utils import Subspace


class RandomSubspace(BaseSystem):
    """Plain random subspace: every tree sees ``q`` features drawn uniformly, ``alpha`` is ignored."""

    def draw_subspace(self, rng):
        features = rng.choice(self.dataset.p, size=self.config.q, replace=False)
        return Subspace((), tuple(int(f) for f in features))
