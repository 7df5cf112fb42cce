"""
Root conftest.py: shared Pytest fixtures.

Provides fixtures for:
- The five-record example databases and the two
  attribute combinations used throughout the worked example.
- Their signature databases and ground truth.
- A small perturbed synthetic database pair with a matching config.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Tuple

import pytest

from src.config.settings import Config
from src.ingest.csv_io import load_database
from src.ingest.ground_truth import GroundTruth, load_ground_truth
from src.model.records import Database
from src.model.signatures import AttributeCombination, SignatureDatabase
from src.selection.lattice import combination_from_labels
from src.signatures.generation import build_signature_database
from src.synthgen.generator import SYNTH_QIDS
from src.synthgen.perturb import perturbed_pair

DATA_DIR = Path(__file__).parent / "data"

SAMPLE_RELATIONSHIPS = (("PhoneNumber",), ("prefix(9):StreetAddress",))


# ---------------------------------------------------------------------------
# Worked example
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def sample_a() -> Database:
    """Database A: r1, r2, r3."""
    return load_database(
        DATA_DIR / "sample_a.csv", id_column="RecordID", entity_column="EntityID", name="A"
    )


@pytest.fixture(scope="session")
def sample_b() -> Database:
    """Database B: r4, r5."""
    return load_database(
        DATA_DIR / "sample_b.csv", id_column="RecordID", entity_column="EntityID", name="B"
    )


@pytest.fixture(scope="session")
def sample_config() -> Config:
    """beta = 0 and s_t = 0.5, phone / address-prefix relationships."""
    return Config(
        beta=0.0,
        s_t=0.5,
        relationships=SAMPLE_RELATIONSHIPS,
        id_column="RecordID",
        entity_column="EntityID",
    )


@pytest.fixture(scope="session")
def sample_combinations(sample_a: Database) -> List[AttributeCombination]:
    """
    S1 = FirstName, LastName, yearOf(BirthDate)
    S2 = FirstName, yearOf(BirthDate), StreetAddress
    """
    schema = sample_a.schema
    return [
        combination_from_labels(schema, ["FirstName", "LastName", "yearOf:BirthDate"]),
        combination_from_labels(schema, ["FirstName", "yearOf:BirthDate", "StreetAddress"]),
    ]


@pytest.fixture(scope="session")
def sample_signatures(
    sample_a: Database,
    sample_b: Database,
    sample_combinations: List[AttributeCombination],
    sample_config: Config,
) -> Tuple[SignatureDatabase, SignatureDatabase]:
    return (
        build_signature_database(sample_a, sample_combinations, sample_config),
        build_signature_database(sample_b, sample_combinations, sample_config),
    )


@pytest.fixture(scope="session")
def sample_truth(sample_a: Database, sample_b: Database) -> GroundTruth:
    """Derived from entity ids: (r2, r4) and (r3, r5)."""
    return load_ground_truth(None, sample_a, sample_b)


# ---------------------------------------------------------------------------
# Synthetic data
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def synthetic_pair() -> Tuple[Database, Database, GroundTruth]:
    """300 x 300 records, 80% overlap, 20% MCAR and 20% corruption."""
    return perturbed_pair(300, 300, 0.8, households=2.5, seed=11)


@pytest.fixture(scope="session")
def synthetic_config() -> Config:
    return Config(
        qids=SYNTH_QIDS,
        transforms={"birth_date": ("identity", "yearOf")},
        relationships=(("last_name", "street_address"),),
        c_t=0.6,
        s_t=0.6,
    )
