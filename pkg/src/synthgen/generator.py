"""
Synthetic Database Pair Generator Module.

Draws person records from the bundled frequency tables and splits the
entities across two databases with a known overlap:

- Persons are grouped into households sharing street address, city and
  zip; most members also share the household last name.
- ``overlap * min(n_a, n_b)`` entities appear in both databases; the
  ground truth holds exactly those pairs. Shared entities are taken
  household by household, so at most one household is split between
  the shared and the single-database entities on each side.
- A fraction of the shared entities can be moved to a new address in
  the second database.

Every draw comes from one numpy Generator seeded by the caller, so the
output is a pure function of the arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml
from loguru import logger

from src.ingest.ground_truth import GroundTruth
from src.model.errors import RecordLinkageError
from src.model.records import Database, Record, normalize_value

TABLES_PATH = Path(__file__).parent / "data" / "tables.yaml"

SYNTH_SCHEMA: Tuple[str, ...] = (
    "first_name",
    "middle_name",
    "last_name",
    "birth_date",
    "street_address",
    "city",
    "zip",
    "household_id",
)
SYNTH_QIDS: Tuple[str, ...] = SYNTH_SCHEMA[:-1]

SHARED_LAST_NAME_RATE = 0.85
BIRTH_RANGE = (date(1930, 1, 1), date(2005, 12, 31))
MAX_HOUSE_NUMBER = 999


class SynthesisError(RecordLinkageError):
    """Raised for invalid generator or perturbation parameters."""

    pass


# ----------------------------------------------------------------------
# Frequency tables
# ----------------------------------------------------------------------


class _WeightedTable:
    """Values with relative weights, drawn in batches."""

    def __init__(self, values: Sequence[str], weights: Sequence[float]) -> None:
        if not values or len(values) != len(weights):
            raise SynthesisError("Frequency table needs one weight per value")
        self.values = list(values)
        probabilities = np.asarray(weights, dtype=float)
        self._probabilities = probabilities / probabilities.sum()

    def __len__(self) -> int:
        return len(self.values)

    def draw(self, rng: np.random.Generator, size: int) -> List[str]:
        picks = rng.choice(len(self.values), size=size, p=self._probabilities)
        return [self.values[i] for i in picks]


@dataclass(frozen=True)
class FrequencyTables:
    first_names: _WeightedTable
    last_names: _WeightedTable
    street_names: _WeightedTable
    street_suffixes: _WeightedTable
    cities: _WeightedTable
    zip_prefixes: Dict[str, str]


@lru_cache(maxsize=4)
def load_tables(path: Path = TABLES_PATH) -> FrequencyTables:
    """
    Load the bundled frequency tables.

    Raises:
        SynthesisError: If the file is missing a table.
    """
    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}

    def table(key: str) -> _WeightedTable:
        if key not in raw:
            raise SynthesisError(f"{path}: table '{key}' missing")
        return _WeightedTable([str(v) for v, _ in raw[key]], [w for _, w in raw[key]])

    if "cities" not in raw:
        raise SynthesisError(f"{path}: table 'cities' missing")
    cities = raw["cities"]
    return FrequencyTables(
        first_names=table("first_names"),
        last_names=table("last_names"),
        street_names=table("street_names"),
        street_suffixes=table("street_suffixes"),
        cities=_WeightedTable([c for c, _, _ in cities], [w for _, _, w in cities]),
        zip_prefixes={c: str(p) for c, p, _ in cities},
    )


# ----------------------------------------------------------------------
# Generation
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class _Address:
    street_address: str
    city: str
    zip: str


def _draw_addresses(
    rng: np.random.Generator, tables: FrequencyTables, count: int
) -> List[_Address]:
    numbers = rng.integers(1, MAX_HOUSE_NUMBER + 1, size=count)
    streets = tables.street_names.draw(rng, count)
    suffixes = tables.street_suffixes.draw(rng, count)
    cities = tables.cities.draw(rng, count)
    zip_tails = rng.integers(0, 100, size=count)
    return [
        _Address(
            street_address=f"{numbers[i]} {streets[i]} {suffixes[i]}",
            city=cities[i],
            zip=f"{tables.zip_prefixes[cities[i]]}{zip_tails[i]:02d}",
        )
        for i in range(count)
    ]


def _draw_households(rng: np.random.Generator, count: int, mean_size: float) -> np.ndarray:
    """
    Household index per entity; sizes are 1 + Poisson(mean_size - 1).

    Members of a household have consecutive entity indices.
    """
    if count == 0:
        return np.zeros(0, dtype=int)
    sizes = 1 + rng.poisson(mean_size - 1.0, size=count)
    return np.repeat(np.arange(count), sizes)[:count]


def _draw_birth_dates(rng: np.random.Generator, count: int) -> List[str]:
    start, end = (d.toordinal() for d in BIRTH_RANGE)
    ordinals = rng.integers(start, end + 1, size=count)
    return [date.fromordinal(int(o)).isoformat() for o in ordinals]


def _validate(n_a: int, n_b: int, overlap: float, households: float, moved_fraction: float) -> None:
    if n_a < 0 or n_b < 0:
        raise SynthesisError(f"Database sizes must be >= 0, got {n_a} and {n_b}")
    if not 0.0 <= overlap <= 1.0:
        raise SynthesisError(f"overlap must be in [0, 1], got {overlap}")
    if households < 1.0:
        raise SynthesisError(f"Mean household size must be >= 1, got {households}")
    if not 0.0 <= moved_fraction <= 1.0:
        raise SynthesisError(f"moved_fraction must be in [0, 1], got {moved_fraction}")


def shared_entity_count(n_a: int, n_b: int, overlap: float) -> int:
    return int(round(overlap * min(n_a, n_b)))


def generate_pair(
    n_a: int,
    n_b: int,
    overlap: float,
    households: float = 2.5,
    seed: int = 0,
    moved_fraction: float = 0.0,
    tables: Optional[FrequencyTables] = None,
) -> Tuple[Database, Database, GroundTruth]:
    """
    Generate two databases over SYNTH_SCHEMA with a known set of true links.

    Args:
        n_a: Number of records in the first database.
        n_b: Number of records in the second database.
        overlap: Fraction of ``min(n_a, n_b)`` entities present in both.
        households: Mean household size (>= 1).
        seed: Seed of the numpy Generator driving every draw.
        moved_fraction: Fraction of shared entities given a new address
            in the second database.
        tables: Frequency tables; the bundled ones when None.

    Returns:
        (database A, database B, ground truth). Records carry their
        entity ids, ids are ``a0000001``/``b0000001`` style and household
        ids are local to each database.

    Raises:
        SynthesisError: On a negative size or a fraction outside [0, 1].
    """
    _validate(n_a, n_b, overlap, households, moved_fraction)
    tables = tables or load_tables()
    rng = np.random.default_rng(seed)

    n_shared = shared_entity_count(n_a, n_b, overlap)
    total = n_a + n_b - n_shared

    household_of = _draw_households(rng, total, households)
    n_households = int(household_of.max()) + 1 if total else 0
    household_addresses = _draw_addresses(rng, tables, n_households)
    household_last_names = tables.last_names.draw(rng, n_households)

    first_names = tables.first_names.draw(rng, total)
    middle_names = tables.first_names.draw(rng, total)
    own_last_names = tables.last_names.draw(rng, total)
    keeps_family_name = rng.random(total) < SHARED_LAST_NAME_RATE
    birth_dates = _draw_birth_dates(rng, total)

    n_moved = int(round(moved_fraction * n_shared))
    moved = sorted(int(i) for i in rng.choice(n_shared, size=n_moved, replace=False))
    new_addresses = dict(zip(moved, _draw_addresses(rng, tables, n_moved)))

    def person(entity: int, in_b: bool) -> Tuple[List[str], str]:
        household = int(household_of[entity])
        address = household_addresses[household]
        household_key = f"h{household}"
        if in_b and entity in new_addresses:
            address = new_addresses[entity]
            household_key = f"m{entity}"
        last_name = (
            household_last_names[household] if keeps_family_name[entity] else own_last_names[entity]
        )
        values = [
            first_names[entity],
            middle_names[entity],
            last_name,
            birth_dates[entity],
            address.street_address,
            address.city,
            address.zip,
        ]
        return values, household_key

    def build(name: str, prefix: str, entities: np.ndarray, in_b: bool) -> Database:
        local_households: Dict[str, str] = {}
        records = []
        for position, entity in enumerate(entities, start=1):
            values, household_key = person(int(entity), in_b)
            household_id = local_households.setdefault(
                household_key, f"h{prefix}{len(local_households) + 1:06d}"
            )
            records.append(
                Record(
                    id=f"{prefix}{position:07d}",
                    values=tuple(normalize_value(v) for v in values + [household_id]),
                    entity_id=f"e{int(entity) + 1:07d}",
                )
            )
        return Database(schema=SYNTH_SCHEMA, records=tuple(records), name=name)

    shared = np.arange(n_shared)
    entities_a = rng.permutation(np.concatenate([shared, np.arange(n_shared, n_a)]))
    entities_b = rng.permutation(np.concatenate([shared, np.arange(n_a, total)]))
    db_a = build("A", "a", entities_a, in_b=False)
    db_b = build("B", "b", entities_b, in_b=True)

    id_of_a = {r.entity_id: r.id for r in db_a}
    links = frozenset((id_of_a[r.entity_id], r.id) for r in db_b if r.entity_id in id_of_a)

    logger.info(
        f"[Synth] Generated {n_a} + {n_b} records, {len(links)} shared entities, "
        f"{n_households} households, {n_moved} moved (seed={seed})"
    )
    return db_a, db_b, GroundTruth(links)
