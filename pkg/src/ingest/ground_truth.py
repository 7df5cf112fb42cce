"""
Ground Truth Module.

True links between two databases, read from a pairs file or derived
from shared entity labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import pandas as pd
from loguru import logger

from src.ingest.csv_io import IngestError, read_csv_frame
from src.model.records import Database


@dataclass(frozen=True)
class GroundTruth:
    """Set of true (id_a, id_b) links."""

    links: FrozenSet[Tuple[str, str]] = frozenset()

    def __len__(self) -> int:
        return len(self.links)

    def __contains__(self, pair: object) -> bool:
        return pair in self.links

    def __iter__(self) -> Iterator[Tuple[str, str]]:
        return iter(sorted(self.links))

    def transposed(self) -> "GroundTruth":
        return GroundTruth(frozenset((b, a) for a, b in self.links))


def load_ground_truth(
    path: Optional[str | Path], db_a: Database, db_b: Database
) -> GroundTruth:
    """
    Load ground truth from a pairs file, or from entity labels.

    Args:
        path: CSV with ``id_a`` and ``id_b`` columns; when None the links
            are every pair of records sharing an entity id.
        db_a: First database, used to resolve ``id_a``.
        db_b: Second database, used to resolve ``id_b``.

    Raises:
        IngestError: If an id does not resolve, or entity ids are
            requested but missing.
    """
    if path is None:
        return _truth_from_entities(db_a, db_b)

    file_path = Path(path)
    frame = read_csv_frame(file_path)
    for column in ("id_a", "id_b"):
        if column not in frame.columns:
            raise IngestError(f"{file_path}: column '{column}' missing from header")

    links = set()
    for position, (id_a, id_b) in enumerate(
        frame[["id_a", "id_b"]].itertuples(index=False, name=None)
    ):
        id_a, id_b = id_a.strip(), id_b.strip()
        row = position + 2
        if id_a not in db_a:
            raise IngestError(f"{file_path}: row {row}: id '{id_a}' not found in {db_a.name}")
        if id_b not in db_b:
            raise IngestError(f"{file_path}: row {row}: id '{id_b}' not found in {db_b.name}")
        links.add((id_a, id_b))

    logger.info(f"[Ingest] Loaded {len(links)} true links from {file_path}")
    return GroundTruth(frozenset(links))


def _truth_from_entities(db_a: Database, db_b: Database) -> GroundTruth:
    for database in (db_a, db_b):
        if not any(r.entity_id is not None for r in database):
            raise IngestError(
                f"No ground-truth file given and database {database.name} has no entity ids"
            )

    by_entity: Dict[str, List[str]] = {}
    for record in db_b:
        if record.entity_id is not None:
            by_entity.setdefault(record.entity_id, []).append(record.id)

    links = {
        (record.id, id_b)
        for record in db_a
        if record.entity_id is not None
        for id_b in by_entity.get(record.entity_id, [])
    }
    logger.info(f"[Ingest] Derived {len(links)} true links from entity ids")
    return GroundTruth(frozenset(links))


def write_ground_truth(truth: GroundTruth, path: str | Path) -> Path:
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    rows = sorted(truth.links)
    pd.DataFrame(rows, columns=["id_a", "id_b"]).to_csv(file_path, index=False, encoding="utf-8")
    return file_path
