# @Time   : 2026/10/12
# @Author : SRSLab Team

"""Exact information-theoretic oracles over small explicit joint distributions.

Attributes:
    DEFAULT_TOLERANCE (float): conditional mutual information (bits) at or below
        which two variables count as independent.
    EXHAUSTIVE_LIMIT (int): largest number of inputs searched exhaustively.
"""

from .joint import JointDistribution, load_distribution, save_distribution
from .relevance import (DEFAULT_TOLERANCE, EXHAUSTIVE_LIMIT, IRRELEVANT, STRONGLY_RELEVANT, WEAKLY_RELEVANT,
                        MarkovBoundary, RelevanceReport, asymptotic_importance, conditional_mutual_information,
                        degree_histogram, markov_boundary, mutual_information, relevance_class)
