# @Time   : 2026/10/12
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/16
# @Author : SRSLab Team

"""Exact relevance oracles over a :class:`JointDistribution`.

All quantities are computed by summing over the explicit table, in bits.
A conditional mutual information at or below ``tolerance`` counts as
independence.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Tuple

import numpy as np
from loguru import logger
from scipy.special import comb

from srslab.exceptions import CapacityError

DEFAULT_TOLERANCE = 1e-10
EXHAUSTIVE_LIMIT = 12
ZERO_PROBABILITY = 1e-300

IRRELEVANT = 'irrelevant'
WEAKLY_RELEVANT = 'weakly_relevant'
STRONGLY_RELEVANT = 'strongly_relevant'


@dataclass(frozen=True)
class RelevanceReport:
    variable: str
    relevance_class: str
    degree: Optional[int]
    witness_conditioning: Optional[Tuple[str, ...]]

    @property
    def is_relevant(self):
        return self.degree is not None


@dataclass(frozen=True)
class MarkovBoundary:
    """Strongly relevant variables.

    ``strictly_positive`` is False when some joint assignment has zero
    probability; the boundary is then not guaranteed to be unique.
    """
    variables: Tuple[str, ...]
    strictly_positive: bool


def _cmi_from_table(joint):
    """I(X;Z|B) of a table shaped ``(b_1, ..., b_k, x, z)``."""
    nx, nz = joint.shape[-2:]
    joint = joint.reshape(-1, nx, nz)
    pb = joint.sum(axis=(1, 2), keepdims=True)
    pxb = joint.sum(axis=2, keepdims=True)
    pzb = joint.sum(axis=1, keepdims=True)
    mask = joint > ZERO_PROBABILITY
    numer = (joint * pb)[mask]
    denom = np.broadcast_to(pxb * pzb, joint.shape)[mask]
    value = float(np.sum(joint[mask] * np.log2(numer / denom)))
    return max(value, 0.0)


def conditional_mutual_information(dist, x, targets_output=True, conditioning=(), target=None):
    """Exact conditional mutual information in bits.

    Args:
        dist (JointDistribution): the table.
        x (str or int): first variable.
        targets_output (bool, optional): measure dependence with the output ``Y``.
            When False, ``target`` names the second input variable. Defaults to True.
        conditioning (iterable, optional): variables of ``B``. Defaults to the empty set.
        target (str or int, optional): second variable when ``targets_output`` is False.

    Returns:
        float: ``I(X;Y|B)`` (or ``I(X;target|B)``), never negative.

    Raises:
        ValueError: unknown variable, ``x`` or the target inside ``conditioning``,
            or a missing/duplicated target.

    """
    xi = dist.index_of(x)
    cond = []
    for b in conditioning:
        bi = dist.index_of(b)
        if bi not in cond:
            cond.append(bi)
    if xi in cond:
        raise ValueError(f'[{dist.name_of(xi)}] cannot be conditioned on itself')
    if targets_output:
        if target is not None:
            raise ValueError('target is only used when targets_output is False')
        zi = dist.output_axis
    else:
        if target is None:
            raise ValueError('a target variable is required when targets_output is False')
        zi = dist.index_of(target)
        if zi == xi:
            raise ValueError(f'target and x are the same variable [{dist.name_of(xi)}]')
        if zi in cond:
            raise ValueError(f'target [{dist.name_of(zi)}] is in the conditioning set')
    return _cmi_from_table(dist.marginal(cond + [xi, zi]))


def _check_capacity(dist, what, limit):
    if dist.p > limit:
        raise CapacityError(what, dist.p, limit)


def relevance_class(dist, x, tolerance=DEFAULT_TOLERANCE, limit=EXHAUSTIVE_LIMIT):
    """Classify ``x`` as irrelevant, weakly or strongly relevant and find its degree.

    Every conditioning set ``B`` of ``V \\ {x}`` is tried, by increasing size
    then lexicographic variable index; the first one revealing a dependence
    gives the degree and the witness.

    Raises:
        CapacityError: more than ``limit`` variables.
        ValueError: negative tolerance or unknown variable.

    """
    if tolerance < 0:
        raise ValueError(f'tolerance must be non-negative, got {tolerance}')
    _check_capacity(dist, 'relevance search', limit)
    xi = dist.index_of(x)
    others = [i for i in range(dist.p) if i != xi]
    strong = conditional_mutual_information(dist, xi, conditioning=others) > tolerance

    degree, witness = None, None
    for k in range(len(others) + 1):
        for subset in combinations(others, k):
            if conditional_mutual_information(dist, xi, conditioning=subset) > tolerance:
                degree, witness = k, tuple(dist.name_of(i) for i in subset)
                break
        if degree is not None:
            break

    if degree is None:
        kind = IRRELEVANT
    elif strong:
        kind = STRONGLY_RELEVANT
    else:
        kind = WEAKLY_RELEVANT
    logger.debug(f'[{dist.name_of(xi)}: {kind}, degree {degree}]')
    return RelevanceReport(dist.name_of(xi), kind, degree, witness)


def markov_boundary(dist, tolerance=DEFAULT_TOLERANCE):
    """Set of strongly relevant variables.

    For strictly positive distributions this is the unique Markov boundary of
    ``Y``. Otherwise the result is flagged and a warning is logged.
    """
    members = []
    for xi in range(dist.p):
        rest = [i for i in range(dist.p) if i != xi]
        if conditional_mutual_information(dist, xi, conditioning=rest) > tolerance:
            members.append(dist.name_of(xi))
    positive = dist.is_strictly_positive()
    if not positive:
        logger.warning('[Distribution is not strictly positive, Markov boundary may not be unique]')
    return MarkovBoundary(tuple(members), positive)


def asymptotic_importance(dist, x, q, tolerance=DEFAULT_TOLERANCE, limit=EXHAUSTIVE_LIMIT):
    """Infinite-sample MDI importance of ``x`` for totally randomized trees.

    This is the expected importance of ``x`` in a fully developed tree with
    ``K = 1`` grown on a random subspace of ``q`` of the ``p`` inputs::

        sum_{k < q} 1 / (C(p, k) (p - k)) sum_{|B| = k, B in V \\ {x}} I(X; Y | B)

    The value is positive exactly when ``deg(x) < q``. With ``q = p`` the
    importances of all inputs add up to ``I(V; Y)``.

    Raises:
        ValueError: ``q`` outside ``[1, p]``.
        CapacityError: more than ``limit`` variables.

    """
    p = dist.p
    if not 1 <= q <= p:
        raise ValueError(f'q must lie in [1, {p}], got {q}')
    _check_capacity(dist, 'asymptotic importance', limit)
    xi = dist.index_of(x)
    others = [i for i in range(p) if i != xi]
    total = 0.0
    for k in range(q):
        weight = 1.0 / (comb(p, k, exact=True) * (p - k))
        level = 0.0
        for subset in combinations(others, k):
            value = conditional_mutual_information(dist, xi, conditioning=subset)
            if value > tolerance:
                level += value
        total += weight * level
    return total


def degree_histogram(dist, tolerance=DEFAULT_TOLERANCE, limit=EXHAUSTIVE_LIMIT):
    """Number of relevant variables per degree, irrelevant ones left out."""
    counter = Counter()
    for xi in range(dist.p):
        report = relevance_class(dist, xi, tolerance, limit)
        if report.degree is not None:
            counter[report.degree] += 1
    return dict(sorted(counter.items()))


def mutual_information(dist):
    """``I(V; Y)``, the information all inputs carry about the output."""
    table = dist.probabilities.reshape(-1, dist.output_arity)
    return _cmi_from_table(table[np.newaxis])
