"""Core value types shared across the linkage pipeline."""

from src.model.errors import RecordLinkageError
from src.model.matches import MatchPair, MatchSet, MatchStage
from src.model.records import Database, DatabaseError, Record, normalize_value
from src.model.signatures import (
    AttributeCombination,
    AttributeSignature,
    RelationalSignature,
    SignatureDatabase,
    member_label,
)

__all__ = [
    "AttributeCombination",
    "AttributeSignature",
    "Database",
    "DatabaseError",
    "MatchPair",
    "MatchSet",
    "MatchStage",
    "Record",
    "RecordLinkageError",
    "RelationalSignature",
    "SignatureDatabase",
    "member_label",
    "normalize_value",
]
