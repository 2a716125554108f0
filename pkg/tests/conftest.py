# @Time   : 2026/10/17
# @Author : SRSLab Team

import numpy as np
import pytest

from srslab.data import Dataset
from srslab.distribution import JointDistribution


def xor_table(noise_variables=0):
    """``Y = X1 xor X2`` with fair inputs, plus independent fair noise inputs."""
    p = 2 + noise_variables
    table = np.zeros((2,) * p + (2,))
    for assignment in np.ndindex(*(2,) * p):
        table[assignment + (assignment[0] ^ assignment[1],)] = 1.0 / 2 ** p
    return JointDistribution(table)


@pytest.fixture
def xor_dist():
    return xor_table()


@pytest.fixture
def xor_noise_dist():
    return xor_table(noise_variables=1)


@pytest.fixture
def copy_dist():
    """``Y = X1`` with an independent noise input ``X2``."""
    table = np.zeros((2, 2, 2))
    for a in (0, 1):
        for b in (0, 1):
            table[a, b, a] = 0.25
    return JointDistribution(table)


@pytest.fixture
def duplicate_dist():
    """``X2`` copies ``X1`` and ``Y = X1``."""
    table = np.zeros((2, 2, 2))
    table[0, 0, 0] = 0.5
    table[1, 1, 1] = 0.5
    return JointDistribution(table)


@pytest.fixture
def copy_dataset():
    rng = np.random.default_rng(3)
    values = rng.integers(0, 2, size=(2000, 3))
    return Dataset(values, values[:, 0].copy(), relevant_truth=[0])


@pytest.fixture
def xor_dataset():
    values = np.array([[0, 0], [0, 1], [1, 0], [1, 1]])
    return Dataset(values, values[:, 0] ^ values[:, 1])
