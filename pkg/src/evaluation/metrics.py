"""
Linkage quality metrics against ground truth.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Dict

from src.ingest.ground_truth import GroundTruth
from src.model.errors import RecordLinkageError
from src.model.matches import MatchSet


class EvaluationError(RecordLinkageError):
    """Raised for invalid evaluation inputs such as thresholds outside [0, 1]."""

    pass


@dataclass(frozen=True)
class LinkageQuality:
    """
    Precision and recall of one match set, with the underlying counts.

    Conventions for empty inputs: with no matches precision is 1.0 when
    the truth is empty too and 0.0 otherwise; with an empty truth recall
    is 1.0 (nothing was missed).
    """

    precision: float
    recall: float
    true_positives: int
    false_positives: int
    false_negatives: int

    @property
    def n_matches(self) -> int:
        return self.true_positives + self.false_positives

    @property
    def n_truth(self) -> int:
        return self.true_positives + self.false_negatives

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["n_matches"] = self.n_matches
        data["n_truth"] = self.n_truth
        return data


def precision_recall(matches: MatchSet, truth: GroundTruth) -> LinkageQuality:
    """Score a match set against the true links."""
    predicted = matches.id_pairs()
    true_positives = len(predicted & truth.links)
    false_positives = len(predicted) - true_positives
    false_negatives = len(truth.links) - true_positives

    if predicted:
        precision = true_positives / len(predicted)
    else:
        precision = 1.0 if not truth.links else 0.0
    recall = true_positives / len(truth.links) if truth.links else 1.0

    return LinkageQuality(
        precision=precision,
        recall=recall,
        true_positives=true_positives,
        false_positives=false_positives,
        false_negatives=false_negatives,
    )
