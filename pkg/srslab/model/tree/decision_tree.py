# -*- encoding: utf-8 -*-
# @Time    :   2026/10/13
# @Author  :   SRSLab Team

# UPDATE
# @Time    :   2026/10/17
# @Author  :   SRSLab Team

"""Fully developed randomized decision trees on discrete features.

Splits are multiway (one child per observed value) and scored by the decrease
of Shannon entropy in bits. At each node ``K`` candidates are drawn uniformly
among the features that are not constant within the node; ``K = 1`` gives
totally randomized trees.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Tuple

import numpy as np
from loguru import logger

from ..utils import entropy, majority

LEAF = -1
TIE_TOLERANCE = 1e-12
NEGATIVE_SLACK = 1e-12


@dataclass
class TreeNode:
    """One node of a :class:`DecisionTree`.

    ``label_distribution`` holds the probability mass of each class reaching
    the node, so it sums to ``sample_fraction``.
    """
    feature: int
    children: Dict[int, int]
    label_distribution: np.ndarray
    sample_fraction: float
    impurity: float

    @property
    def is_leaf(self):
        return self.feature == LEAF


@dataclass
class DecisionTree:
    nodes: Tuple[TreeNode, ...]
    feature_subset: Tuple[int, ...]
    n_features: int
    probe_features: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def n_classes(self):
        return len(self.nodes[0].label_distribution)

    def depth(self):
        depths = {0: 0}
        for i, node in enumerate(self.nodes):
            for child in node.children.values():
                depths[child] = depths[i] + 1
        return max(depths.values())


def _validate(ds, subspace, K):
    if K < 1:
        raise ValueError(f'K must be at least 1, got {K}')
    subspace = tuple(int(f) for f in subspace)
    if not subspace:
        raise ValueError('cannot grow a tree on an empty subspace')
    if len(set(subspace)) != len(subspace):
        raise ValueError(f'repeated features in subspace {subspace}')
    for f in subspace:
        if not 0 <= f < ds.p:
            raise ValueError(f'feature {f} out of range for {ds.p} features')
    return subspace


def _with_probes(ds, subspace, probe_values):
    columns = ds.feature_values[:, list(subspace)]
    ids = np.array(subspace, dtype=np.int64)
    if probe_values is None or not np.size(probe_values):
        return columns, ids, frozenset()
    probe_values = np.asarray(probe_values, dtype=np.int64).reshape(ds.n_samples, -1)
    probe_ids = np.arange(ds.p, ds.p + probe_values.shape[1])
    columns = np.concatenate([columns, probe_values], axis=1)
    return columns, np.concatenate([ids, probe_ids]), frozenset(int(i) for i in probe_ids)


def _keep(rows, local, node_ids, keep):
    """Restrict the level to the nodes flagged in ``keep``, renumbering them from 0."""
    kept = np.flatnonzero(keep)
    mask = keep[local]
    return rows[mask], np.searchsorted(kept, local[mask]), node_ids[kept]


def _split_gains(block, local, labels, weights, candidates, impurity, fraction, n_values, n_classes):
    """Entropy decrease of every candidate of every node, shape ``width x k``."""
    width, k = candidates.shape
    values = np.take_along_axis(block, candidates[local], axis=1)
    slots = local[:, None] * k + np.arange(k)
    keys = (slots * n_values + values) * n_classes + labels[:, None]
    joint = np.bincount(keys.ravel(), weights=np.repeat(weights, k), minlength=width * k * n_values * n_classes)
    joint = joint.reshape(width, k, n_values, n_classes)
    children = (joint.sum(axis=-1) * entropy(joint)).sum(axis=-1)
    return impurity[:, None] - children / fraction[:, None]


def build_tree(ds, subspace, K, rng, probe_values=None):
    """Grow a fully developed tree on the features of ``subspace``.

    The tree is grown one level at a time: all open nodes of a level draw
    their candidates and pick their split together. Nodes are numbered
    breadth first, children of a node in increasing value order.

    Args:
        ds (Dataset): training rows; population datasets contribute their weights.
        subspace (iterable of int): feature indices the tree may split on.
        K (int): candidates drawn at each node; capped by the number of usable features.
        rng (numpy.random.Generator): source of all randomness of the tree.
        probe_values (numpy.ndarray, optional): ``n x m`` matrix of extra columns.
            They are numbered ``ds.p .. ds.p + m - 1`` in the tree and marked as probes.

    Returns:
        DecisionTree: the grown tree.

    Raises:
        ValueError: empty or invalid subspace, or ``K < 1``.

    """
    subspace = _validate(ds, subspace, K)
    columns, ids, probes = _with_probes(ds, subspace, probe_values)
    weights = ds.row_weights()
    labels = ds.labels
    n_classes = ds.n_classes
    n_values = int(columns.max()) + 1 if columns.size else 1
    k = min(K, columns.shape[1])

    nodes = []
    rows = np.arange(ds.n_samples)
    local = np.zeros(ds.n_samples, dtype=np.int64)
    links = [(None, None)]
    while links:
        width, base = len(links), len(nodes)
        mass = np.bincount(local * n_classes + labels[rows], weights=weights[rows], minlength=width * n_classes)
        mass = mass.reshape(width, n_classes)
        fraction = mass.sum(axis=1)
        impurity = entropy(mass)
        for i, (parent, value) in enumerate(links):
            nodes.append(TreeNode(LEAF, {}, mass[i], float(fraction[i]), float(impurity[i])))
            if parent is not None:
                nodes[parent].children[value] = base + i

        node_ids = base + np.arange(width)
        is_open = (np.count_nonzero(mass, axis=1) > 1) & (np.bincount(local, minlength=width) >= 2)
        order = np.argsort(local, kind='stable')
        rows, local, node_ids = _keep(rows[order], local[order], node_ids, is_open)
        if rows.size == 0:
            break
        fraction, impurity = fraction[is_open], impurity[is_open]

        block = columns[rows]
        starts = np.flatnonzero(np.r_[True, local[1:] != local[:-1]])
        usable = np.minimum.reduceat(block, starts, axis=0) != np.maximum.reduceat(block, starts, axis=0)
        splittable = usable.any(axis=1)
        if not splittable.all():
            keep_rows = splittable[local]
            rows, local, node_ids = _keep(rows, local, node_ids, splittable)
            block = block[keep_rows]
            usable, fraction, impurity = usable[splittable], fraction[splittable], impurity[splittable]
            if rows.size == 0:
                break

        # uniform k-subset of the usable features of each node
        draw = np.where(usable, rng.random(usable.shape), 2.0)
        if k == 1:
            chosen = np.argmin(draw, axis=1)
        else:
            candidates = np.argsort(draw, axis=1)[:, :k]
            gains = _split_gains(block, local, labels[rows], weights[rows], candidates, impurity, fraction,
                                 n_values, n_classes)
            gains[np.arange(k) >= usable.sum(axis=1, keepdims=True)] = -np.inf
            ties = gains >= gains.max(axis=1, keepdims=True) - TIE_TOLERANCE
            pick = np.argmin(np.where(ties, rng.random(ties.shape), 2.0), axis=1)
            chosen = candidates[np.arange(len(node_ids)), pick]

        for node_id, c in zip(node_ids, chosen):
            nodes[node_id].feature = int(ids[c])
        values = block[np.arange(rows.size), chosen[local]]
        children, local = np.unique(local * n_values + values, return_inverse=True)
        local = local.ravel()
        links = [(int(node_ids[c // n_values]), int(c % n_values)) for c in children]

    return DecisionTree(tuple(nodes), subspace, ds.p, probes)


def _contributions(tree):
    for node in tree.nodes:
        if node.is_leaf:
            continue
        children = [tree.nodes[c] for c in node.children.values()]
        decrease = node.sample_fraction * node.impurity - sum(c.sample_fraction * c.impurity for c in children)
        yield node.feature, decrease


def mdi_importance(tree, include_probes=False):
    """Mean decrease impurity of each feature in one tree, in bits.

    Every feature of ``tree.feature_subset`` appears, with 0 when unused.
    Probe features are only reported with ``include_probes``.
    """
    importances = {f: 0.0 for f in tree.feature_subset}
    if include_probes:
        importances.update({f: 0.0 for f in sorted(tree.probe_features)})
    for feature, decrease in _contributions(tree):
        if decrease < -NEGATIVE_SLACK:
            logger.warning(f'[Negative impurity decrease {decrease} on feature {feature}]')
        if feature in importances:
            importances[feature] += max(decrease, 0.0)
    return importances


def predict(tree, samples):
    """Route samples down the tree and return the majority class of the node reached.

    Routing stops early, at the current node's majority, on a value never seen
    at training time and on a split over a probe feature.

    Args:
        tree (DecisionTree): fitted tree.
        samples (array-like): one sample of ``n_features`` values, or a matrix of them.

    Returns:
        int or numpy.ndarray: class of the single sample, or one class per row.

    """
    samples = np.asarray(samples)
    single = samples.ndim == 1
    samples = np.atleast_2d(samples)
    out = np.empty(samples.shape[0], dtype=np.int64)
    stack = [(0, np.arange(samples.shape[0]))]
    while stack:
        node_id, rows = stack.pop()
        node = tree.nodes[node_id]
        if node.is_leaf or node.feature in tree.probe_features:
            out[rows] = majority(node.label_distribution)
            continue
        values = samples[rows, node.feature]
        routed = np.zeros(rows.size, dtype=bool)
        for v, child in node.children.items():
            mask = values == v
            if mask.any():
                stack.append((child, rows[mask]))
                routed |= mask
        out[rows[~routed]] = majority(node.label_distribution)
    return int(out[0]) if single else out


def tree_to_text(tree, feature_names=None):
    """Line oriented dump: id, split feature, children, class mass, fraction, impurity."""

    def name(f):
        if f in tree.probe_features:
            return f'probe{f - tree.n_features}'
        return feature_names[f] if feature_names is not None else f'x{f}'

    lines = ['node\tfeature\tchildren\tclass_mass\tfraction\timpurity']
    for i, node in enumerate(tree.nodes):
        feature = 'leaf' if node.is_leaf else name(node.feature)
        children = ','.join(f'{v}:{c}' for v, c in sorted(node.children.items())) or '-'
        mass = ','.join(f'{m:.6g}' for m in node.label_distribution)
        lines.append(f'{i}\t{feature}\t{children}\t{mass}\t{node.sample_fraction:.6g}\t{node.impurity:.6g}')
    return '\n'.join(lines) + '\n'
