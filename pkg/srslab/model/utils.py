# -*- encoding: utf-8 -*-
# @Time    :   2026/10/13
# @Author  :   SRSLab Team

import numpy as np
from scipy.stats import entropy as _scipy_entropy


def entropy(mass, axis=-1):
    """Shannon entropy in bits of unnormalised class masses.

    Rows with zero total mass have entropy 0.
    """
    mass = np.asarray(mass, dtype=np.float64)
    total = mass.sum(axis=axis, keepdims=True)
    safe = np.where(total > 0, mass, 1.0)
    return np.where(np.squeeze(total, axis=axis) > 0, _scipy_entropy(safe, base=2, axis=axis), 0.0)


def majority(mass):
    """Index of the largest class mass, the smallest index on ties."""
    return int(np.argmax(mass))
