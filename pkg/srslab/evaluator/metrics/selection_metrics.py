# @Time   : 2026/10/16
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

from dataclasses import dataclass

import numpy as np
import pandas as pd
from sklearn.metrics import accuracy_score

from srslab.evaluator.metrics.base_metrics import AverageMetric, SumMetric


@dataclass(frozen=True)
class SelectionScore:
    """Quality of a found feature set against the ground truth.

    ``f1`` is the harmonic mean of precision and recall, 0 when both are 0.
    """
    precision: float
    recall: float
    f1: float
    found_count: int
    truth_count: int


def f1_against_truth(found, truth):
    """Precision, recall and F1 of ``found`` against ``truth``.

    An empty ``found`` scores precision 0 and F1 0.

    Raises:
        ValueError: empty ``truth``.

    """
    found, truth = set(found), set(truth)
    if not truth:
        raise ValueError('recall is undefined for an empty ground truth')
    hits = len(found & truth)
    precision = hits / len(found) if found else 0.0
    recall = hits / len(truth)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return SelectionScore(precision, recall, f1, len(found), len(truth))


def f1_curve(history, truth):
    """``(iteration, precision, recall, f1)`` of the cumulative found set after each iteration.

    Args:
        history (list of IterationRecord): records of a run, in order.
        truth (iterable of int): relevant features.

    """
    found = set()
    curve = []
    for record in history:
        found.update(record.new)
        score = f1_against_truth(found, truth)
        row = (record.iteration, score.precision, score.recall, score.f1)
        # several trees of one iteration share the same record values
        if curve and curve[-1][0] == record.iteration:
            curve[-1] = row
        else:
            curve.append(row)
    return curve


def f1_curve_table(history, truth):
    return pd.DataFrame(f1_curve(history, truth), columns=['iteration', 'precision', 'recall', 'f1'])


def accuracy(predictions, labels):
    """Fraction of predictions equal to the labels.

    Raises:
        ValueError: different lengths or no prediction at all.

    """
    predictions, labels = np.asarray(predictions).ravel(), np.asarray(labels).ravel()
    if predictions.shape != labels.shape:
        raise ValueError(f'{predictions.size} predictions for {labels.size} labels')
    if predictions.size == 0:
        raise ValueError('accuracy of an empty prediction set is undefined')
    return float(accuracy_score(labels, predictions))


class PrecisionMetric(AverageMetric):
    @staticmethod
    def compute(score: SelectionScore) -> 'PrecisionMetric':
        return PrecisionMetric(score.precision)


class RecallMetric(AverageMetric):
    @staticmethod
    def compute(score: SelectionScore) -> 'RecallMetric':
        return RecallMetric(score.recall)


class F1Metric(AverageMetric):
    @staticmethod
    def compute(score: SelectionScore) -> 'F1Metric':
        return F1Metric(score.f1)


class FoundCountMetric(AverageMetric):
    @staticmethod
    def compute(score: SelectionScore) -> 'FoundCountMetric':
        return FoundCountMetric(score.found_count)


class AccuracyMetric(AverageMetric):
    @staticmethod
    def compute(predictions, labels) -> 'AccuracyMetric':
        return AccuracyMetric(accuracy(predictions, labels))


class RunCountMetric(SumMetric):
    pass
