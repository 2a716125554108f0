# @Time   : 2026/10/16
# @Author : SRSLab Team

# UPDATE:
# @Time   : 2026/10/18
# @Author : SRSLab Team

from loguru import logger

from srslab.evaluator.base_evaluator import BaseEvaluator
from srslab.evaluator.utils import nice_report
from .metrics import AccuracyMetric, F1Metric, FoundCountMetric, Metrics, PrecisionMetric, RecallMetric, \
    RunCountMetric, aggregate_unnamed_reports, f1_against_truth


class SelectionEvaluator(BaseEvaluator):
    """Averages selection quality and accuracy over runs.

    Metrics are keyed ``group/name`` so that runs with different settings (for
    example ``alpha=0`` and ``alpha=0.5``) are reported on separate rows.
    """

    def __init__(self):
        super(SelectionEvaluator, self).__init__()
        self.selection_metrics = Metrics()
        self.accuracy_metrics = Metrics()

    @staticmethod
    def _key(group, name):
        return f'{group}/{name}' if group else name

    def selection_evaluate(self, found, truth, group=None):
        score = f1_against_truth(found, truth)
        self.selection_metrics.add(self._key(group, 'precision'), PrecisionMetric.compute(score))
        self.selection_metrics.add(self._key(group, 'recall'), RecallMetric.compute(score))
        self.selection_metrics.add(self._key(group, 'f1'), F1Metric.compute(score))
        self.selection_metrics.add(self._key(group, 'found'), FoundCountMetric.compute(score))
        self.selection_metrics.add(self._key(group, 'runs'), RunCountMetric(1))
        return score

    def accuracy_evaluate(self, predictions, labels, group=None):
        metric = AccuracyMetric.compute(predictions, labels)
        self.accuracy_metrics.add(self._key(group, 'accuracy'), metric)
        return metric.value()

    def report(self):
        reports = [self.selection_metrics.report(), self.accuracy_metrics.report()]
        aggregated = aggregate_unnamed_reports(reports)
        if aggregated:
            logger.info('\n' + nice_report(aggregated))
        return {k: v.value() for k, v in aggregated.items()}

    def reset_metrics(self):
        self.selection_metrics.clear()
        self.accuracy_metrics.clear()
