# @Time   : 2026/10/12
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/15
# @Author : SRSLab Team

import itertools
import os

import numpy as np
from loguru import logger

from srslab.exceptions import DistributionError

SUM_TOLERANCE = 1e-12
TEXT_SUM_TOLERANCE = 1e-9


class JointDistribution:
    """Explicit probability table over discrete inputs ``V`` and an output ``Y``.

    The table has one axis per input variable followed by the output axis, so
    ``probabilities[x_1, ..., x_p, y]`` is ``P(V = x, Y = y)``.

    Args:
        probabilities (array-like): table of shape ``arities + (output_arity,)``.
        variable_names (list of str, optional): one name per input. Defaults to ``X1..Xp``.
        output_name (str, optional): name of the output. Defaults to ``'Y'``.

    Raises:
        DistributionError: negative entries, wrong shape, duplicated names, or a
            total probability further than 1e-12 from one.

    """

    def __init__(self, probabilities, variable_names=None, output_name='Y'):
        table = np.array(probabilities, dtype=np.float64)
        if table.ndim < 1:
            raise DistributionError('probability table needs at least the output axis')
        p = table.ndim - 1
        if variable_names is None:
            variable_names = [f'X{i + 1}' for i in range(p)]
        variable_names = tuple(str(name) for name in variable_names)
        if len(variable_names) != p:
            raise DistributionError(f'{len(variable_names)} names given for a table with {p} input axes')
        if len(set(variable_names + (output_name,))) != p + 1:
            raise DistributionError(f'variable names must be unique, got {variable_names + (output_name,)}')
        if any(size < 1 for size in table.shape):
            raise DistributionError(f'every arity must be positive, got {table.shape}')
        if np.any(table < 0) or not np.all(np.isfinite(table)):
            raise DistributionError('probabilities must be finite and non-negative')
        total = table.sum()
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise DistributionError(f'probabilities sum to {total!r}, not 1')
        table.setflags(write=False)

        self.probabilities = table
        self.variable_names = variable_names
        self.output_name = str(output_name)
        self.arities = tuple(int(a) for a in table.shape[:-1])
        self.output_arity = int(table.shape[-1])

    @property
    def p(self):
        return len(self.variable_names)

    @property
    def output_axis(self):
        return self.p

    def index_of(self, variable):
        """Resolve a variable given by name or by 0-based index.

        Raises:
            ValueError: unknown name or index out of range.

        """
        if isinstance(variable, (int, np.integer)) and not isinstance(variable, bool):
            if 0 <= variable < self.p:
                return int(variable)
            raise ValueError(f'variable index {variable} out of range for {self.p} variables')
        try:
            return self.variable_names.index(variable)
        except ValueError:
            raise ValueError(f'unknown variable [{variable}], known: {", ".join(self.variable_names)}') from None

    def name_of(self, index):
        return self.variable_names[index]

    def is_strictly_positive(self):
        return bool(np.all(self.probabilities > 0))

    def marginal(self, axes):
        """Marginal table over ``axes``, in the given order.

        ``axes`` are table axes, so ``self.output_axis`` selects ``Y``.
        """
        axes = tuple(int(a) for a in axes)
        if len(set(axes)) != len(axes):
            raise ValueError(f'repeated axes {axes}')
        others = tuple(a for a in range(self.probabilities.ndim) if a not in axes)
        reduced = self.probabilities.sum(axis=others)
        # after the sum the kept axes appear in increasing order
        order = sorted(axes)
        return np.transpose(reduced, [order.index(a) for a in axes])

    def mixture(self, other, weight):
        """``weight * self + (1 - weight) * other`` over identical variables."""
        if other.probabilities.shape != self.probabilities.shape:
            raise DistributionError('cannot mix tables of different shapes')
        if not 0 <= weight <= 1:
            raise ValueError(f'mixture weight must lie in [0, 1], got {weight}')
        table = weight * self.probabilities + (1 - weight) * other.probabilities
        return JointDistribution(table / table.sum(), self.variable_names, self.output_name)

    @classmethod
    def uniform(cls, arities, output_arity=2, variable_names=None, output_name='Y'):
        shape = tuple(arities) + (output_arity,)
        return cls(np.full(shape, 1.0 / np.prod(shape)), variable_names, output_name)

    def __eq__(self, other):
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return (self.variable_names == other.variable_names and self.output_name == other.output_name
                and self.probabilities.shape == other.probabilities.shape
                and np.allclose(self.probabilities, other.probabilities, rtol=0, atol=SUM_TOLERANCE))

    def __repr__(self):
        header = ' '.join(f'{n}:{a}' for n, a in zip(self.variable_names, self.arities))
        return f'JointDistribution({header} {self.output_name}:{self.output_arity})'


def _parse_header(tokens, path, lineno):
    names, arities = [], []
    for token in tokens:
        name, sep, arity = token.rpartition(':')
        if not sep or not name:
            raise DistributionError(f'{path}: line {lineno}: header field [{token}] is not name:arity')
        try:
            arity = int(arity)
        except ValueError:
            raise DistributionError(f'{path}: line {lineno}: arity of [{name}] is not an integer') from None
        if arity < 1:
            raise DistributionError(f'{path}: line {lineno}: arity of [{name}] must be positive')
        names.append(name)
        arities.append(arity)
    if not names:
        raise DistributionError(f'{path}: line {lineno}: empty header')
    return names, arities


def load_distribution(path):
    """Read a joint distribution from its text format.

    The first non-comment line is the header ``X1:2 X2:2 Y:2`` (output last).
    Every other line holds one joint assignment and its probability,
    ``x_1 ... x_p y prob``. Assignments not listed have probability 0. Lines
    starting with ``#`` are ignored.

    Args:
        path (str): file to read.

    Returns:
        JointDistribution: the table, renormalised to remove decimal rounding.

    Raises:
        DistributionError: malformed header or row, duplicated assignment,
            negative probability, or a total further than 1e-9 from one.

    """
    header = None
    table = None
    seen = set()
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            tokens = line.split()
            if header is None:
                header = _parse_header(tokens, path, lineno)
                table = np.zeros(header[1], dtype=np.float64)
                continue
            names, arities = header
            if len(tokens) != len(names) + 1:
                raise DistributionError(f'{path}: line {lineno}: expected {len(names) + 1} fields, got {len(tokens)}')
            try:
                assignment = tuple(int(t) for t in tokens[:-1])
                prob = float(tokens[-1])
            except ValueError:
                raise DistributionError(f'{path}: line {lineno}: cannot parse [{line}]') from None
            for name, arity, value in zip(names, arities, assignment):
                if not 0 <= value < arity:
                    raise DistributionError(f'{path}: line {lineno}: value {value} of [{name}] outside 0..{arity - 1}')
            if prob < 0 or not np.isfinite(prob):
                raise DistributionError(f'{path}: line {lineno}: invalid probability {tokens[-1]}')
            if assignment in seen:
                raise DistributionError(f'{path}: line {lineno}: duplicated assignment {assignment}')
            seen.add(assignment)
            table[assignment] = prob
    if header is None:
        raise DistributionError(f'{path}: empty distribution file')
    total = table.sum()
    if abs(total - 1.0) > TEXT_SUM_TOLERANCE:
        raise DistributionError(f'{path}: probabilities sum to {total!r}, not 1')
    names = header[0]
    logger.debug(f'[Load distribution over {len(names) - 1} variables from {path}]')
    return JointDistribution(table / total, names[:-1], names[-1])


def save_distribution(dist, path):
    """Write ``dist`` in the text format read by :func:`load_distribution`.

    Only assignments with positive probability are listed.
    """
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    fields = [f'{n}:{a}' for n, a in zip(dist.variable_names, dist.arities)]
    fields.append(f'{dist.output_name}:{dist.output_arity}')
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(' '.join(fields) + '\n')
        for assignment in itertools.product(*(range(s) for s in dist.probabilities.shape)):
            prob = dist.probabilities[assignment]
            if prob > 0:
                f.write(' '.join(str(v) for v in assignment) + f' {float(prob)!r}\n')
