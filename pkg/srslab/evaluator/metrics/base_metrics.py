# @Time   : 2026/10/16
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

from abc import ABC, abstractmethod
from typing import Dict, Iterable, Optional, Union

import numpy as np

Number = Union[int, float, np.number]


def _plain(number: Number, owner: str) -> Union[int, float]:
    if isinstance(number, np.generic):
        number = number.item()
    if isinstance(number, bool):
        return int(number)
    if not isinstance(number, (int, float)):
        raise TypeError(f'{owner} takes a number, not {type(number).__name__}')
    return number


class Metric(ABC):
    """One run's contribution to a reported quantity.

    Runs over several seeds are merged with ``+``; ``None`` is the empty
    contribution so that ``report.get(key) + metric`` works on a fresh key.
    """

    @abstractmethod
    def value(self) -> float:
        pass

    @abstractmethod
    def __add__(self, other: Optional['Metric']) -> 'Metric':
        pass

    def __radd__(self, other: Optional['Metric']) -> 'Metric':
        return self if other is None else self + other

    def __float__(self) -> float:
        return float(self.value())

    def __str__(self) -> str:
        return f'{self.value():.4g}'

    def __repr__(self) -> str:
        return f'{type(self).__name__}({self})'


class SumMetric(Metric):
    """Counts runs, trees or any other additive quantity."""

    __slots__ = ('total',)

    def __init__(self, total: Number = 0):
        self.total = _plain(total, type(self).__name__)

    def __add__(self, other: Optional['SumMetric']) -> 'SumMetric':
        if other is None:
            return self
        return type(self)(self.total + other.total)

    def value(self) -> float:
        return self.total


class AverageMetric(Metric):
    """Mean over seeds; each run contributes ``numer`` out of ``denom``."""

    __slots__ = ('numer', 'denom')

    def __init__(self, numer: Number, denom: Number = 1):
        self.numer = _plain(numer, type(self).__name__)
        self.denom = _plain(denom, type(self).__name__)

    def __add__(self, other: Optional['AverageMetric']) -> 'AverageMetric':
        if other is None:
            return self
        return type(self)(self.numer + other.numer, self.denom + other.denom)

    def value(self) -> float:
        if self.denom == 0:
            return 0.0 if self.numer == 0 else float('nan')
        return self.numer / self.denom


def aggregate_unnamed_reports(reports: Iterable[Dict[str, Metric]]) -> Dict[str, Metric]:
    """Merge several ``name -> metric`` reports into one, adding shared names."""
    merged: Dict[str, Metric] = {}
    for report in reports:
        for name, metric in report.items():
            merged[name] = merged.get(name) + metric
    return merged


class Metrics:
    """Named metrics accumulated over runs."""

    def __init__(self):
        self._by_name: Dict[str, Metric] = {}

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> float:
        return self.get(name)

    def __repr__(self) -> str:
        return f'Metrics({self._by_name!r})'

    def add(self, name: str, metric: Optional[Metric]) -> None:
        self._by_name[name] = self._by_name.get(name) + metric

    def get(self, name: str) -> float:
        try:
            return self._by_name[name].value()
        except KeyError:
            raise KeyError(f'metric [{name}] has not been recorded') from None

    def report(self) -> Dict[str, Metric]:
        return dict(self._by_name)

    def clear(self) -> None:
        self._by_name.clear()
