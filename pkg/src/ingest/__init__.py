"""
Ingest Module.

Loading of record databases, ground truth, stored matches and the
linkage configuration.
"""

from src.config.loader import parse_config
from src.ingest.csv_io import IngestError, load_database, load_match_set, write_database
from src.ingest.ground_truth import GroundTruth, load_ground_truth, write_ground_truth

__all__ = [
    "GroundTruth",
    "IngestError",
    "load_database",
    "load_ground_truth",
    "load_match_set",
    "parse_config",
    "write_database",
    "write_ground_truth",
]
