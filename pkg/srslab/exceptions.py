# @Time   : 2026/10/12
# @Author : SRSLab Team

"""Exceptions raised by srslab.

The command line maps them onto exit codes: :class:`CapacityError` gives 3,
:class:`DatasetFormatError` and other I/O failures give 4, argument errors give 2.
"""


class SRSLabError(Exception):
    """Base class of every srslab specific error."""


class CapacityError(SRSLabError):
    """An exhaustive computation would exceed its configured size limit."""

    def __init__(self, what, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        super(CapacityError, self).__init__(f'{what} needs {size} variables, exceeding the limit of {limit}')


class DistributionError(SRSLabError, ValueError):
    """Invalid joint probability table or malformed distribution file."""


class DatasetFormatError(SRSLabError, ValueError):
    """Malformed dataset file.

    Args:
        message (str): what went wrong.
        line (int, optional): 1-based line number in the offending file.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super(DatasetFormatError, self).__init__(message)


class ConvergenceError(SRSLabError, ValueError):
    """Malformed or non-absorbing Markov chain."""
