"""
Record Model Module.

Immutable records and databases shared by every pipeline step:
- normalize_value: the canonical cell normalization applied on ingest.
- Record: one row, values aligned with its database schema.
- Database: an ordered, id-indexed collection of records over one schema.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from src.model.errors import RecordLinkageError

_WHITESPACE_RUN = re.compile(r"\s+")


class DatabaseError(RecordLinkageError):
    """Raised when a database violates its schema or id constraints."""

    pass


def normalize_value(raw: Optional[str]) -> Optional[str]:
    """
    Normalize a raw cell value.

    Lowercases, trims surrounding whitespace and collapses internal
    whitespace runs to a single space. An empty result is reported as
    absent (None). Applying the function twice yields the same value.

    Args:
        raw: Raw cell text, or None for an already-absent value.

    Returns:
        The normalized value, or None when nothing is left.
    """
    if raw is None:
        return None
    value = _WHITESPACE_RUN.sub(" ", raw.lower()).strip()
    return value or None


@dataclass(frozen=True)
class Record:
    """
    A single database row.

    Attributes:
        id: Identifier, unique within its database.
        values: Normalized attribute values aligned with the schema; None is absent.
        entity_id: Optional real-world entity label, used only to derive ground truth.
    """

    id: str
    values: Tuple[Optional[str], ...]
    entity_id: Optional[str] = field(default=None, compare=False)

    def value(self, index: int) -> Optional[str]:
        return self.values[index]

    @property
    def is_complete(self) -> bool:
        return all(v is not None for v in self.values)


@dataclass(frozen=True)
class Database:
    """
    An ordered collection of records sharing one schema.

    Record order is the order the rows were read in and is preserved by
    every transformation, which keeps downstream output deterministic.

    Attributes:
        schema: Attribute names, unique and ordered.
        records: Records in input order; ids are unique.
        name: Label used in logs and reports (for example "A" or "B").

    Raises:
        DatabaseError: On duplicate attribute names, duplicate record ids
            or a record whose value count differs from the schema length.
    """

    schema: Tuple[str, ...]
    records: Tuple[Record, ...]
    name: str = "D"
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.schema)) != len(self.schema):
            raise DatabaseError(f"Database {self.name}: duplicate attribute names in {self.schema}")

        index: Dict[str, int] = {}
        for position, record in enumerate(self.records):
            if len(record.values) != len(self.schema):
                raise DatabaseError(
                    f"Database {self.name}: record '{record.id}' has {len(record.values)} values, "
                    f"schema has {len(self.schema)} attributes"
                )
            if record.id in index:
                raise DatabaseError(f"Database {self.name}: duplicate record id '{record.id}'")
            index[record.id] = position
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[Record]:
        return iter(self.records)

    def __contains__(self, record_id: object) -> bool:
        return record_id in self._index

    @property
    def ids(self) -> List[str]:
        return [r.id for r in self.records]

    @property
    def has_entity_ids(self) -> bool:
        """True when every record carries an entity label."""
        return bool(self.records) and all(r.entity_id is not None for r in self.records)

    def get(self, record_id: str) -> Record:
        """
        Look up a record by id.

        Raises:
            DatabaseError: If the id is unknown.
        """
        try:
            return self.records[self._index[record_id]]
        except KeyError:
            raise DatabaseError(f"Database {self.name}: unknown record id '{record_id}'") from None

    def attribute_index(self, attribute: str) -> int:
        """
        Position of an attribute in the schema.

        Raises:
            DatabaseError: If the attribute is not part of the schema.
        """
        try:
            return self.schema.index(attribute)
        except ValueError:
            raise DatabaseError(
                f"Database {self.name}: unknown attribute '{attribute}' "
                f"(schema: {list(self.schema)})"
            ) from None

    def column(self, index: int) -> List[Optional[str]]:
        return [r.values[index] for r in self.records]

    def with_records(self, records: Iterable[Record]) -> "Database":
        """Return a copy holding the given records under the same schema and name."""
        return replace(self, records=tuple(records))
