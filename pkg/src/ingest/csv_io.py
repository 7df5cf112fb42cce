"""
CSV Ingest Module.

Reads and writes record databases and match files:
- load_database: CSV -> normalized, id-indexed Database.
- write_database: Database -> CSV (absent values as empty cells).
- load_match_set: matches CSV -> MatchSet, for offline evaluation.

Every column is read as text with no NA inference, so an empty cell is
the one and only spelling of a missing value.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd
from loguru import logger

from src.model.errors import RecordLinkageError
from src.model.matches import MatchPair, MatchSet, MatchStage
from src.model.records import Database, Record, normalize_value


class IngestError(RecordLinkageError):
    """Raised when an input file is missing, malformed or inconsistent."""

    pass


def read_csv_frame(path: str | Path) -> pd.DataFrame:
    """
    Read a CSV file with every cell as a string and empty cells kept as "".

    Raises:
        IngestError: If the file does not exist or has no header row.
    """
    file_path = Path(path)
    if not file_path.exists():
        raise IngestError(f"Input file not found: {file_path}")
    try:
        return pd.read_csv(
            file_path,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise IngestError(f"{file_path}: file is empty, a header row is required") from None
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise IngestError(f"{file_path}: cannot parse CSV: {e}") from e


def load_database(
    path: str | Path,
    schema: Optional[Sequence[str]] = None,
    *,
    id_column: str = "id",
    entity_column: str = "entity_id",
    name: Optional[str] = None,
) -> Database:
    """
    Load a CSV file as a Database.

    Args:
        path: CSV file with a header row.
        schema: Attribute columns to keep, in order. Defaults to every
            column except the id and entity columns.
        id_column: Column holding record ids.
        entity_column: Optional column holding entity labels.
        name: Database name for logs; defaults to the file stem.

    Returns:
        Database with normalized values (empty cells become absent).

    Raises:
        IngestError: On a missing file, a missing column, an empty id or
            a duplicate id (the message names the row).
    """
    file_path = Path(path)
    frame = read_csv_frame(file_path)
    columns = list(frame.columns)

    if id_column not in columns:
        raise IngestError(f"{file_path}: id column '{id_column}' missing from header {columns}")

    if schema is None:
        schema = [c for c in columns if c not in (id_column, entity_column)]
    missing = [attr for attr in schema if attr not in columns]
    if missing:
        raise IngestError(f"{file_path}: column(s) {missing} missing from header {columns}")

    has_entities = entity_column in columns
    ids = [raw.strip() for raw in frame[id_column].tolist()]
    entities = frame[entity_column].tolist() if has_entities else [None] * len(ids)
    value_columns = [frame[attr].tolist() for attr in schema]

    records: List[Record] = []
    seen: Dict[str, int] = {}
    for position, record_id in enumerate(ids):
        row = position + 2  # header is line 1
        if not record_id:
            raise IngestError(f"{file_path}: row {row} has an empty {id_column}")
        if record_id in seen:
            raise IngestError(
                f"{file_path}: row {row} repeats {id_column} '{record_id}' "
                f"(first seen in row {seen[record_id]})"
            )
        seen[record_id] = row
        entity = entities[position]
        records.append(
            Record(
                id=record_id,
                values=tuple(normalize_value(col[position]) for col in value_columns),
                entity_id=(entity.strip() or None) if entity is not None else None,
            )
        )

    database = Database(
        schema=tuple(schema), records=tuple(records), name=name or file_path.stem
    )
    logger.info(
        f"[Ingest] Loaded {len(database)} records x {len(database.schema)} attributes "
        f"from {file_path}"
    )
    return database


def write_database(
    database: Database,
    path: str | Path,
    *,
    id_column: str = "id",
    entity_column: str = "entity_id",
    extra_columns: Optional[Dict[str, Sequence[str]]] = None,
) -> Path:
    """
    Write a Database as CSV; the entity column is written when any record has one.

    ``extra_columns`` are appended after the schema columns, one value per record.
    """
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)

    data: Dict[str, List[str]] = {id_column: database.ids}
    if any(r.entity_id is not None for r in database):
        data[entity_column] = [r.entity_id or "" for r in database]
    for index, attr in enumerate(database.schema):
        data[attr] = [v if v is not None else "" for v in database.column(index)]
    for column, values in (extra_columns or {}).items():
        data[column] = list(values)

    pd.DataFrame(data).to_csv(file_path, index=False, encoding="utf-8")
    logger.debug(f"[Ingest] Wrote {len(database)} records to {file_path}")
    return file_path


def load_match_set(path: str | Path) -> MatchSet:
    """
    Read a matches CSV (id_a, id_b, similarity, stage) back into a MatchSet.

    Raises:
        IngestError: On missing columns or unparsable values.
    """
    file_path = Path(path)
    frame = read_csv_frame(file_path)
    required = ["id_a", "id_b", "similarity", "stage"]
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise IngestError(f"{file_path}: column(s) {missing} missing from header")

    pairs = []
    for position, (id_a, id_b, similarity, stage) in enumerate(
        frame[required].itertuples(index=False, name=None)
    ):
        try:
            pairs.append(MatchPair(id_a, id_b, float(similarity), MatchStage(stage)))
        except ValueError as e:
            raise IngestError(f"{file_path}: row {position + 2}: {e}") from e
    return MatchSet.from_pairs(pairs)
