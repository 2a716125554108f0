# @Time   : 2026/10/16
# @Author : SRSLab Team

from abc import ABC, abstractmethod
from typing import Dict, Iterable, Optional


class BaseEvaluator(ABC):
    """Scores selections and predictions, grouped by run setting."""

    @abstractmethod
    def selection_evaluate(self, found: Iterable[int], truth: Iterable[int], group: Optional[str] = None):
        pass

    def accuracy_evaluate(self, predictions, labels, group: Optional[str] = None) -> float:
        raise NotImplementedError(f'{type(self).__name__} does not score predictions')

    @abstractmethod
    def report(self) -> Dict[str, float]:
        pass

    @abstractmethod
    def reset_metrics(self) -> None:
        pass
