# @Time   : 2026/10/13
# @Author : SRSLab Team

import numpy as np

from ..base_dataset import BinaryGenerator


class MarginalGenerator(BinaryGenerator):
    """Majority vote of ``x_1 .. x_r``; ties are settled by a fair coin.

    Each relevant input is marginally relevant (degree 0) and strongly relevant.
    """

    def positive_rate(self, block):
        r = block.shape[1]
        ones = block.sum(axis=1)
        rate = np.where(2 * ones > r, 1.0, 0.0)
        rate[2 * ones == r] = 0.5
        return rate
