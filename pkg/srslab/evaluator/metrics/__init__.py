from .base_metrics import AverageMetric, Metric, Metrics, SumMetric, aggregate_unnamed_reports
from .selection_metrics import AccuracyMetric, F1Metric, FoundCountMetric, PrecisionMetric, RecallMetric, \
    RunCountMetric, SelectionScore, accuracy, f1_against_truth, f1_curve, f1_curve_table
