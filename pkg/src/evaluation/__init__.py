"""
Evaluation Module.

Precision/recall against ground truth, threshold sweeps for the full
and attribute-only matchers, and per-step runtime reports.
"""

from src.evaluation.metrics import EvaluationError, LinkageQuality, precision_recall
from src.evaluation.runtime import RuntimeReport, StepTiming, runtime_report
from src.evaluation.sweep import DEFAULT_THRESHOLDS, SweepRow, threshold_sweep

__all__ = [
    "DEFAULT_THRESHOLDS",
    "EvaluationError",
    "LinkageQuality",
    "RuntimeReport",
    "StepTiming",
    "SweepRow",
    "precision_recall",
    "runtime_report",
    "threshold_sweep",
]
