"""
Database Perturbation Module.

Seeded degradations applied to generated databases:
- inject_mcar: blank values completely at random.
- corrupt: apply character and token edits to present values.

inject_mcar only changes presence and corrupt only changes content.
Record ids and entity ids are never touched, so ground truth stays valid.
"""

from __future__ import annotations

import string
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.ingest.ground_truth import GroundTruth
from src.model.records import Database, Record, normalize_value
from src.synthgen.generator import SYNTH_QIDS, SynthesisError, generate_pair

LETTERS = string.ascii_lowercase
DIGITS = string.digits

EditFn = Callable[[str, np.random.Generator], Optional[str]]


def _check_rate(name: str, rate: float) -> None:
    if not 0.0 <= rate <= 1.0:
        raise SynthesisError(f"{name} must be in [0, 1], got {rate}")


def _attribute_positions(database: Database, attrs: Optional[Sequence[str]]) -> List[int]:
    if attrs is None:
        return list(range(len(database.schema)))
    unknown = [a for a in attrs if a not in database.schema]
    if unknown:
        raise SynthesisError(f"Attributes {unknown} not in schema {list(database.schema)}")
    return [database.schema.index(a) for a in attrs]


def _select_records(rng: np.random.Generator, database: Database, rate: float) -> List[int]:
    count = int(round(rate * len(database)))
    return sorted(int(i) for i in rng.choice(len(database), size=count, replace=False))


# ----------------------------------------------------------------------
# Missing values
# ----------------------------------------------------------------------


def inject_mcar(
    database: Database,
    record_rate: float,
    max_per_record: int,
    attrs: Optional[Sequence[str]] = None,
    seed: int = 0,
) -> Database:
    """
    Blank values completely at random.

    Selects ``round(record_rate * |D|)`` records uniformly and blanks
    between 1 and ``max_per_record`` of their present values among
    ``attrs`` (all attributes when None).

    Raises:
        SynthesisError: On a rate outside [0, 1], a non-positive maximum or
            an attribute missing from the schema.
    """
    _check_rate("record_rate", record_rate)
    if max_per_record < 1:
        raise SynthesisError(f"max_per_record must be >= 1, got {max_per_record}")
    positions = _attribute_positions(database, attrs)

    rng = np.random.default_rng(seed)
    records = list(database.records)
    blanked = 0
    for index in _select_records(rng, database, record_rate):
        record = records[index]
        present = [p for p in positions if record.values[p] is not None]
        if not present:
            continue
        count = int(rng.integers(1, min(max_per_record, len(present)) + 1))
        targets = {int(p) for p in rng.choice(present, size=count, replace=False)}
        values = tuple(None if p in targets else v for p, v in enumerate(record.values))
        records[index] = Record(id=record.id, values=values, entity_id=record.entity_id)
        blanked += count

    logger.info(f"[Synth] {database.name}: blanked {blanked} values (MCAR, seed={seed})")
    return database.with_records(records)


# ----------------------------------------------------------------------
# Value corruption
# ----------------------------------------------------------------------


def _editable(value: str) -> List[int]:
    return [i for i, ch in enumerate(value) if not ch.isspace()]


def _replacement(rng: np.random.Generator, current: str) -> str:
    pool = DIGITS if current.isdigit() else LETTERS
    choices = [c for c in pool if c != current]
    return choices[int(rng.integers(len(choices)))]


def _substitute(value: str, rng: np.random.Generator) -> Optional[str]:
    positions = [i for i in _editable(value) if value[i].isalnum()] or _editable(value)
    if not positions:
        return None
    i = positions[int(rng.integers(len(positions)))]
    return value[:i] + _replacement(rng, value[i]) + value[i + 1 :]


def _transpose(value: str, rng: np.random.Generator) -> Optional[str]:
    pairs = [
        i
        for i in range(len(value) - 1)
        if not value[i].isspace() and not value[i + 1].isspace() and value[i] != value[i + 1]
    ]
    if not pairs:
        return None
    i = pairs[int(rng.integers(len(pairs)))]
    return value[:i] + value[i + 1] + value[i] + value[i + 2 :]


def _delete(value: str, rng: np.random.Generator) -> Optional[str]:
    positions = _editable(value)
    if len(positions) < 2:
        return None
    i = positions[int(rng.integers(len(positions)))]
    return value[:i] + value[i + 1 :]


def _insert(value: str, rng: np.random.Generator) -> Optional[str]:
    i = int(rng.integers(len(value) + 1))
    return value[:i] + LETTERS[int(rng.integers(len(LETTERS)))] + value[i:]


def _swap_tokens(value: str, rng: np.random.Generator) -> Optional[str]:
    tokens = value.split(" ")
    pairs = [i for i in range(len(tokens) - 1) if tokens[i] != tokens[i + 1]]
    if not pairs:
        return None
    i = pairs[int(rng.integers(len(pairs)))]
    tokens[i], tokens[i + 1] = tokens[i + 1], tokens[i]
    return " ".join(tokens)


EDIT_OPERATIONS: Dict[str, EditFn] = {
    "substitution": _substitute,
    "transposition": _transpose,
    "deletion": _delete,
    "insertion": _insert,
    "token_swap": _swap_tokens,
}

# an operation that cannot apply to a value falls through this chain
_FALLBACK = {
    "token_swap": "transposition",
    "transposition": "substitution",
    "deletion": "insertion",
}


def apply_edit(operation: str, value: str, rng: np.random.Generator) -> str:
    """
    Apply one named edit to a normalized value.

    Whitespace is never edited. The result is normalized, non-empty and
    differs from the input; when the operation cannot apply (for example
    a token swap on a single token) the fallback chain is used, ending in
    a substitution or an insertion.

    Raises:
        SynthesisError: For an unknown operation.
    """
    if operation not in EDIT_OPERATIONS:
        raise SynthesisError(
            f"Unknown edit operation '{operation}' (known: {sorted(EDIT_OPERATIONS)})"
        )
    current: Optional[str] = operation
    while current is not None:
        edited = normalize_value(EDIT_OPERATIONS[current](value, rng))
        if edited is not None and edited != value:
            return edited
        current = _FALLBACK.get(current)
    return normalize_value(_insert(value, rng)) or value


def corrupt(
    database: Database,
    record_rate: float,
    max_edits: int = 3,
    attrs: Optional[Sequence[str]] = None,
    seed: int = 0,
    min_edits: int = 1,
    operations: Optional[Sequence[str]] = None,
) -> Database:
    """
    Corrupt present values of randomly selected records.

    Each of the ``round(record_rate * |D|)`` selected records gets between
    ``min_edits`` and ``max_edits`` distinct present values among ``attrs``
    edited once each, with the operation drawn uniformly from
    ``operations`` (all of EDIT_OPERATIONS when None).

    Raises:
        SynthesisError: On a rate outside [0, 1], an invalid edit range,
            an unknown operation or an attribute missing from the schema.
    """
    _check_rate("record_rate", record_rate)
    if not 1 <= min_edits <= max_edits:
        raise SynthesisError(
            f"Edit range must satisfy 1 <= min <= max, got {min_edits}..{max_edits}"
        )
    ops = list(operations) if operations is not None else list(EDIT_OPERATIONS)
    unknown = [o for o in ops if o not in EDIT_OPERATIONS]
    if unknown or not ops:
        raise SynthesisError(
            f"Unknown edit operations {unknown} (known: {sorted(EDIT_OPERATIONS)})"
        )
    positions = _attribute_positions(database, attrs)

    rng = np.random.default_rng(seed)
    records = list(database.records)
    edits = 0
    for index in _select_records(rng, database, record_rate):
        record = records[index]
        present = [p for p in positions if record.values[p] is not None]
        if not present:
            continue
        count = min(int(rng.integers(min_edits, max_edits + 1)), len(present))
        targets = sorted(int(p) for p in rng.choice(present, size=count, replace=False))
        values = list(record.values)
        for position in targets:
            operation = ops[int(rng.integers(len(ops)))]
            values[position] = apply_edit(operation, values[position], rng)
        records[index] = Record(id=record.id, values=tuple(values), entity_id=record.entity_id)
        edits += count

    logger.info(f"[Synth] {database.name}: applied {edits} edits (seed={seed})")
    return database.with_records(records)


# ----------------------------------------------------------------------
# Convenience
# ----------------------------------------------------------------------


def perturbed_pair(
    n_a: int,
    n_b: int,
    overlap: float,
    *,
    households: float = 2.5,
    seed: int = 0,
    moved_fraction: float = 0.0,
    mcar_rate: float = 0.2,
    mcar_max: int = 5,
    corrupt_rate: float = 0.2,
    max_edits: int = 3,
) -> Tuple[Database, Database, GroundTruth]:
    """
    generate_pair followed by inject_mcar and corrupt on both sides, over the QIDs.

    Each side and each perturbation draws from its own seed
    (``seed + 1`` / ``seed + 2`` for missingness, ``seed + 3`` /
    ``seed + 4`` for corruption).
    """
    db_a, db_b, truth = generate_pair(
        n_a, n_b, overlap, households=households, seed=seed, moved_fraction=moved_fraction
    )
    perturbed = []
    for offset, database in enumerate((db_a, db_b)):
        database = inject_mcar(
            database, mcar_rate, mcar_max, attrs=SYNTH_QIDS, seed=seed + 1 + offset
        )
        database = corrupt(
            database, corrupt_rate, max_edits, attrs=SYNTH_QIDS, seed=seed + 3 + offset
        )
        perturbed.append(database)
    return perturbed[0], perturbed[1], truth
