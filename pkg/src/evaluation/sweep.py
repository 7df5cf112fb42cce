"""
Threshold sweeps.

Re-runs the matcher over a list of similarity thresholds, with and
without the relational stage, and scores every run against ground
truth. Signature databases are built once and reused for every row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from loguru import logger

from src.config.settings import Config
from src.evaluation.metrics import EvaluationError, precision_recall
from src.ingest.ground_truth import GroundTruth
from src.matching.matcher import match
from src.model.signatures import SignatureDatabase

DEFAULT_THRESHOLDS = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)

MODE_FULL = "full"
MODE_ATTRIBUTE_ONLY = "attribute_only"


@dataclass(frozen=True)
class SweepRow:
    mode: str
    s_t: float
    precision: float
    recall: float
    n_matches: int


def threshold_sweep(
    signatures_a: SignatureDatabase,
    signatures_b: SignatureDatabase,
    config: Config,
    truth: GroundTruth,
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
    workers: int | None = None,
) -> List[SweepRow]:
    """
    Precision and recall per threshold for the full and attribute-only matchers.

    Returns:
        Rows ordered by mode (full first) and then by threshold ascending.

    Raises:
        EvaluationError: If a threshold lies outside [0, 1].
    """
    bad = [t for t in thresholds if not 0.0 <= t <= 1.0]
    if bad:
        raise EvaluationError(f"Thresholds must lie in [0, 1], got {bad}")

    rows: List[SweepRow] = []
    for mode, attribute_only in ((MODE_FULL, False), (MODE_ATTRIBUTE_ONLY, True)):
        for threshold in sorted(set(thresholds)):
            run_config = config.with_overrides(s_t=threshold, attribute_only=attribute_only)
            quality = precision_recall(
                match(signatures_a, signatures_b, run_config, workers), truth
            )
            rows.append(
                SweepRow(
                    mode=mode,
                    s_t=threshold,
                    precision=quality.precision,
                    recall=quality.recall,
                    n_matches=quality.n_matches,
                )
            )
            logger.debug(
                f"[Sweep] {mode} s_t={threshold}: precision={quality.precision:.4f} "
                f"recall={quality.recall:.4f}"
            )
    return rows
