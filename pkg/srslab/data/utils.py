# @Time   : 2026/10/13
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/17
# @Author : SRSLab Team

import os
import re

import numpy as np
import pandas as pd
from loguru import logger

from srslab.data.dataset import Dataset
from srslab.distribution import EXHAUSTIVE_LIMIT, JointDistribution
from srslab.exceptions import CapacityError, DatasetFormatError

LABEL_NAME = 'label'
_INTEGER = r'\s*[0-9]+\s*'
_PARSER_LINE = re.compile(r'line (\d+)')


def truth_path_for(path):
    """Default sidecar of ``path``: same stem, ``.relevant`` suffix."""
    return os.path.splitext(path)[0] + '.relevant'


def _parse_header(columns):
    names, arities = [], []
    for column in columns:
        name, sep, arity = str(column).strip().rpartition(':')
        if not sep:
            name, arity = arity, None
        else:
            try:
                arity = int(arity)
            except ValueError:
                raise DatasetFormatError(f'arity of column [{name}] is not an integer', line=1) from None
            if arity < 1:
                raise DatasetFormatError(f'arity of column [{name}] must be positive', line=1)
        names.append(name)
        arities.append(arity)
    return names, arities


def _load_truth(path):
    truth = []
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            if not re.fullmatch(_INTEGER, line):
                raise DatasetFormatError(f'{path}: relevant index [{line}] is not a non-negative integer', line=lineno)
            truth.append(int(line))
    return truth


def load_csv(path, truth_path=None):
    """Read a dataset from CSV.

    The header names each column, optionally with its arity (``x0:2``). The last
    column holds the labels. Ground truth is read from ``truth_path`` or, when
    omitted, from the ``.relevant`` sidecar next to ``path`` if it exists.

    Args:
        path (str): CSV file.
        truth_path (str, optional): sidecar listing one relevant feature index per line.

    Returns:
        Dataset: the loaded samples.

    Raises:
        DatasetFormatError: empty file, header only, ragged row or non-integer cell.
            The message names the offending line.

    """
    try:
        frame = pd.read_csv(path, dtype=str, na_filter=False, skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        raise DatasetFormatError(f'{path}: empty file', line=1) from None
    except pd.errors.ParserError as e:
        match = _PARSER_LINE.search(str(e))
        line = int(match.group(1)) if match else None
        raise DatasetFormatError(f'{path}: ragged row', line=line) from None

    names, arities = _parse_header(frame.columns)
    if len(names) < 1:
        raise DatasetFormatError(f'{path}: header has no label column', line=1)
    if frame.shape[0] == 0:
        raise DatasetFormatError(f'{path}: header only, the dataset has no rows', line=2)

    # short rows are padded with NaN by the parser
    ragged = frame.isna().any(axis=1).to_numpy()
    if ragged.any():
        row = int(np.argmax(ragged))
        raise DatasetFormatError(f'{path}: ragged row, expected {len(names)} fields', line=row + 2)
    valid = frame.apply(lambda column: column.str.fullmatch(_INTEGER)).to_numpy(dtype=bool)
    if not valid.all():
        row, col = np.argwhere(~valid)[0]
        raise DatasetFormatError(f'{path}: non-integer cell [{frame.iat[row, col]}] in column [{names[col]}]',
                                 line=int(row) + 2)

    values = frame.apply(lambda column: column.str.strip().astype(np.int64)).to_numpy()
    features, labels = values[:, :-1], values[:, -1]
    feature_arities = None
    if all(a is not None for a in arities[:-1]):
        feature_arities = arities[:-1]
    elif any(a is not None for a in arities[:-1]):
        observed = features.max(axis=0) + 1 if features.size else []
        feature_arities = [a if a is not None else int(o) for a, o in zip(arities[:-1], observed)]

    if truth_path is None and os.path.exists(truth_path_for(path)):
        truth_path = truth_path_for(path)
    truth = _load_truth(truth_path) if truth_path is not None else None

    try:
        dataset = Dataset(features, labels, feature_arities, arities[-1], truth, feature_names=names[:-1])
    except ValueError as e:
        raise DatasetFormatError(f'{path}: {e}') from None
    logger.info(f'[Load dataset {path}: n={dataset.n_samples}, p={dataset.p}]')
    return dataset


def save_csv(ds, path, truth_path=None):
    """Write ``ds`` as CSV, with arities in the header, and its ground truth sidecar.

    Raises:
        ValueError: ``ds`` is a population dataset (its weights have no CSV form).

    """
    if ds.is_population:
        raise ValueError('population datasets cannot be written as samples')
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    columns = [f'{name}:{arity}' for name, arity in zip(ds.feature_names, ds.arities)]
    columns.append(f'{LABEL_NAME}:{ds.n_classes}')
    frame = pd.DataFrame(np.column_stack([ds.feature_values, ds.labels]), columns=columns)
    frame.to_csv(path, index=False, lineterminator='\n')

    truth_path = truth_path or truth_path_for(path)
    if ds.relevant_truth is not None:
        with open(truth_path, 'w', encoding='utf-8', newline='\n') as f:
            f.writelines(f'{i}\n' for i in sorted(ds.relevant_truth))
    elif os.path.exists(truth_path):
        os.remove(truth_path)
    logger.info(f'[Save dataset to {path}]')


def to_distribution(ds, variables, limit=EXHAUSTIVE_LIMIT):
    """Empirical joint table of the chosen features and the label.

    Population datasets give their exact marginal table.

    Raises:
        CapacityError: more than ``limit`` variables.
        ValueError: feature index out of range.

    """
    variables = [int(v) for v in variables]
    if len(variables) > limit:
        raise CapacityError('empirical table', len(variables), limit)
    for v in variables:
        if not 0 <= v < ds.p:
            raise ValueError(f'feature index {v} out of range for {ds.p} features')
    shape = tuple(int(ds.arities[v]) for v in variables) + (ds.n_classes,)
    columns = tuple(ds.feature_values[:, v] for v in variables) + (ds.labels,)
    flat = np.ravel_multi_index(columns, shape)
    counts = np.bincount(flat, weights=ds.row_weights(), minlength=int(np.prod(shape)))
    return JointDistribution(counts.reshape(shape) / counts.sum(), [ds.feature_names[v] for v in variables])
