# @Time   : 2026/10/13
# @Author : SRSLab Team

import numpy as np

from ..base_dataset import BinaryGenerator


class ChainingGenerator(BinaryGenerator):
    """Relevant inputs form a chain: ``x_i`` only matters given ``x_1 .. x_{i-1}``.

    The label is a nested parity mixture, ``Y = x_1 xor ... xor x_J`` with ``J``
    uniform in ``1..r``. Every prefix parity is independent of ``x_i`` unless all
    of its predecessors are known, so ``deg(x_i) = i - 1``.
    """

    def positive_rate(self, block):
        r = block.shape[1]
        if r == 0:
            return np.full(block.shape[0], 0.5)
        prefix_parities = np.cumsum(block, axis=1) % 2
        return prefix_parities.mean(axis=1)
