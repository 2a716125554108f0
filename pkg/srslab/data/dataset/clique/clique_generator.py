# @Time   : 2026/10/13
# @Author : SRSLab Team

from ..base_dataset import BinaryGenerator


class CliqueGenerator(BinaryGenerator):
    """``Y`` is the parity of ``x_1 .. x_r``: every member needs all the others."""

    def check_spec(self):
        if self.spec.r < 1:
            raise ValueError('clique scenario needs at least one relevant variable')

    def positive_rate(self, block):
        return (block.sum(axis=1) % 2).astype(float)
