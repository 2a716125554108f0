# @Time   : 2026/10/14
# @Author : SRSLab Team

from srslab.system.base_system import BaseSystem
from srslab.system.utils import select_subspace


class SequentialRandomSubspace(BaseSystem):
    """Random subspace ensemble that keeps a share ``alpha`` of each subspace for found features.

    With ``alpha = 0`` it draws exactly like :class:`RandomSubspace`.
    """

    def draw_subspace(self, rng):
        cfg = self.config
        return select_subspace(self.state.found, self.dataset.p, cfg.q, cfg.alpha, rng)
