"""
Tests for the Synthetic Data Module.

Covers:
- generate_pair: sizes, overlap, ground truth, households, determinism.
- inject_mcar: exact record counts and presence-only changes.
- apply_edit / corrupt: edit semantics and content-only changes.
- perturbed_pair: the combined generator.
"""

from __future__ import annotations

import numpy as np
import pytest

from src.model.records import Database, Record
from src.synthgen import (
    EDIT_OPERATIONS,
    SYNTH_SCHEMA,
    SynthesisError,
    apply_edit,
    corrupt,
    generate_pair,
    inject_mcar,
    load_tables,
    perturbed_pair,
)


def changed_records(before: Database, after: Database) -> int:
    return sum(1 for old, new in zip(before, after) if old.values != new.values)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def thousand() -> Database:
    """1000 complete records over three attributes."""
    return Database(
        schema=("first", "last", "born"),
        records=tuple(
            Record(f"t{i:04d}", (f"anna{i}", f"van der berg{i}", "1981-11-25"), f"e{i}")
            for i in range(1000)
        ),
        name="T",
    )


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------


class TestGeneratePair:
    """Tests for generate_pair."""

    def test_overlap_sets_truth_size(self) -> None:
        """Test that 10 x 10 records at 60% overlap share 6 entities."""
        db_a, db_b, truth = generate_pair(10, 10, 0.6, seed=1)
        assert (len(db_a), len(db_b), len(truth)) == (10, 10, 6)
        assert db_a.schema == SYNTH_SCHEMA
        for id_a, id_b in truth:
            assert db_a.get(id_a).entity_id == db_b.get(id_b).entity_id

    def test_overlap_uses_smaller_side(self) -> None:
        """Test that full overlap links every record of the smaller database."""
        _, _, truth = generate_pair(5, 8, 1.0, seed=2)
        assert len(truth) == 5

    def test_zero_overlap(self) -> None:
        """Test that no overlap means disjoint entities and empty truth."""
        db_a, db_b, truth = generate_pair(20, 20, 0.0, seed=3)
        assert len(truth) == 0
        assert not {r.entity_id for r in db_a} & {r.entity_id for r in db_b}

    def test_ids_and_values(self) -> None:
        """Test id formats and that every generated value is present and normalized."""
        db_a, db_b, _ = generate_pair(3, 2, 0.5, seed=4)
        assert db_a.ids == ["a0000001", "a0000002", "a0000003"]
        assert db_b.ids == ["b0000001", "b0000002"]
        for record in list(db_a) + list(db_b):
            assert record.is_complete
            assert all(v == v.lower().strip() for v in record.values)
            assert record.values[-1].startswith(("ha", "hb"))

    def test_deterministic(self) -> None:
        """Test that the same seed reproduces the pair and another seed does not."""
        first = generate_pair(50, 40, 0.5, seed=9)
        second = generate_pair(50, 40, 0.5, seed=9)
        other = generate_pair(50, 40, 0.5, seed=10)
        assert first[0].records == second[0].records
        assert first[1].records == second[1].records
        assert first[2] == second[2]
        assert first[0].records != other[0].records

    def test_single_person_households(self) -> None:
        """Test that a mean household size of 1 gives every record its own household."""
        db_a, _, _ = generate_pair(40, 0, 0.0, households=1.0, seed=5)
        households = [r.values[-1] for r in db_a]
        assert len(set(households)) == 40

    def test_households_share_addresses(self) -> None:
        """Test that records of one household share street, city and zip."""
        db_a, _, _ = generate_pair(200, 0, 0.0, households=3.0, seed=6)
        by_household = {}
        for record in db_a:
            address = record.values[4:7]
            assert by_household.setdefault(record.values[-1], address) == address
        assert len(by_household) < 200

    def test_shared_entities_come_by_household(self) -> None:
        """Test that at most one household per side mixes shared and unshared entities."""
        db_a, db_b, truth = generate_pair(400, 300, 0.6, households=2.5, seed=8)
        shared = {db_a.get(id_a).entity_id for id_a, _ in truth}
        for database in (db_a, db_b):
            members = {}
            for record in database:
                members.setdefault(record.values[-1], set()).add(record.entity_id in shared)
            assert sum(1 for flags in members.values() if len(flags) == 2) <= 1

        household_in_b = {r.entity_id: r.values[-1] for r in db_b}
        groups = {}
        for record in db_a:
            if record.entity_id in shared:
                groups.setdefault(record.values[-1], set()).add(
                    household_in_b[record.entity_id]
                )
        assert sum(1 for targets in groups.values() if len(targets) > 1) == 0

    def test_moved_entities_change_address(self) -> None:
        """Test that moved entities get a new address in the second database only."""
        db_a, db_b, truth = generate_pair(30, 30, 1.0, moved_fraction=1.0, seed=7)
        for id_a, id_b in truth:
            assert db_a.get(id_a).values[4] != db_b.get(id_b).values[4]
            assert db_a.get(id_a).values[:4] == db_b.get(id_b).values[:4]

    @pytest.mark.parametrize(
        "kwargs, message",
        [
            ({"n_a": -1, "n_b": 5, "overlap": 0.5}, "sizes must be >= 0"),
            ({"n_a": 5, "n_b": 5, "overlap": 1.5}, r"overlap must be in \[0, 1\]"),
            ({"n_a": 5, "n_b": 5, "overlap": 0.5, "households": 0.5}, "household size"),
            ({"n_a": 5, "n_b": 5, "overlap": 0.5, "moved_fraction": 2.0}, "moved_fraction"),
        ],
    )
    def test_invalid_parameters(self, kwargs: dict, message: str) -> None:
        """Test that out-of-range parameters are refused."""
        with pytest.raises(SynthesisError, match=message):
            generate_pair(**kwargs)

    def test_tables_loaded(self) -> None:
        """Test that the bundled tables hold names and city zip prefixes."""
        tables = load_tables()
        assert "peter" in tables.first_names.values
        assert len(tables.last_names) > 100
        assert set(tables.zip_prefixes) == set(tables.cities.values)


# ---------------------------------------------------------------------------
# Missing values
# ---------------------------------------------------------------------------


class TestInjectMcar:
    """Tests for inject_mcar."""

    def test_exact_record_count(self, thousand: Database) -> None:
        """Test that 20% of 1000 records lose at least one value."""
        blanked = inject_mcar(thousand, 0.2, 2, seed=1)
        assert changed_records(thousand, blanked) == 200

    def test_only_removes_values(self, thousand: Database) -> None:
        """Test that values are blanked, never altered, up to the per-record maximum."""
        blanked = inject_mcar(thousand, 0.5, 2, seed=2)
        for old, new in zip(thousand, blanked):
            assert new.id == old.id and new.entity_id == old.entity_id
            removed = sum(1 for o, n in zip(old.values, new.values) if o != n)
            assert removed <= 2
            assert all(n is None or n == o for o, n in zip(old.values, new.values))

    def test_restricted_attributes(self, thousand: Database) -> None:
        """Test that only the named attributes are blanked."""
        blanked = inject_mcar(thousand, 1.0, 3, attrs=["born"], seed=3)
        assert all(r.values[:2] == o.values[:2] for r, o in zip(blanked, thousand))
        assert all(r.values[2] is None for r in blanked)

    def test_invalid_arguments(self, thousand: Database) -> None:
        """Test rate, maximum and attribute validation."""
        with pytest.raises(SynthesisError, match="record_rate"):
            inject_mcar(thousand, 1.2, 1)
        with pytest.raises(SynthesisError, match="max_per_record"):
            inject_mcar(thousand, 0.2, 0)
        with pytest.raises(SynthesisError, match="not in schema"):
            inject_mcar(thousand, 0.2, 1, attrs=["email"])


# ---------------------------------------------------------------------------
# Corruption
# ---------------------------------------------------------------------------


class TestApplyEdit:
    """Tests for apply_edit."""

    def test_operation_names(self) -> None:
        """Test that corruption draws from exactly the five character and token edits."""
        assert set(EDIT_OPERATIONS) == {
            "substitution",
            "transposition",
            "deletion",
            "insertion",
            "token_swap",
        }

    def test_substitution_changes_one_character(self) -> None:
        """Test that a substitution keeps length and differs in one place."""
        rng = np.random.default_rng(0)
        for _ in range(50):
            edited = apply_edit("substitution", "43 skye pl", rng)
            assert len(edited) == len("43 skye pl")
            assert sum(a != b for a, b in zip(edited, "43 skye pl")) == 1

    def test_token_swap(self) -> None:
        """Test that two tokens trade places."""
        assert apply_edit("token_swap", "anne marie", np.random.default_rng(0)) == "marie anne"

    def test_fallback_on_single_token(self) -> None:
        """Test that an inapplicable operation still changes the value."""
        rng = np.random.default_rng(1)
        for operation in EDIT_OPERATIONS:
            edited = apply_edit(operation, "aa", rng)
            assert edited and edited != "aa"

    def test_deletion_and_insertion_lengths(self) -> None:
        """Test that deletion shortens and insertion lengthens by one."""
        rng = np.random.default_rng(2)
        assert len(apply_edit("deletion", "miller", rng)) == 5
        assert len(apply_edit("insertion", "miller", rng)) == 7

    def test_unknown_operation(self) -> None:
        """Test that an unknown operation is refused."""
        with pytest.raises(SynthesisError, match="Unknown edit operation"):
            apply_edit("ocr", "smith", np.random.default_rng(0))


class TestCorrupt:
    """Tests for corrupt."""

    def test_keeps_presence_and_ids(self, thousand: Database) -> None:
        """Test that corruption edits content only."""
        blanked = inject_mcar(thousand, 0.3, 1, seed=4)
        corrupted = corrupt(blanked, 0.5, max_edits=3, seed=5)
        for old, new in zip(blanked, corrupted):
            assert new.id == old.id and new.entity_id == old.entity_id
            assert [v is None for v in old.values] == [v is None for v in new.values]

    def test_exact_record_count(self, thousand: Database) -> None:
        """Test that every selected record changes."""
        assert changed_records(thousand, corrupt(thousand, 0.2, seed=6)) == 200

    def test_edit_range(self, thousand: Database) -> None:
        """Test that min_edits = max_edits = 2 edits exactly two values per record."""
        corrupted = corrupt(thousand, 1.0, max_edits=2, min_edits=2, seed=7)
        for old, new in zip(thousand, corrupted):
            assert sum(1 for o, n in zip(old.values, new.values) if o != n) == 2

    def test_invalid_arguments(self, thousand: Database) -> None:
        """Test edit range and operation validation."""
        with pytest.raises(SynthesisError, match="Edit range"):
            corrupt(thousand, 0.2, max_edits=1, min_edits=2)
        with pytest.raises(SynthesisError, match="Unknown edit operations"):
            corrupt(thousand, 0.2, operations=["ocr"])


class TestPerturbedPair:
    """Tests for perturbed_pair."""

    def test_truth_survives_perturbation(self) -> None:
        """Test that perturbation keeps every true link resolvable."""
        db_a, db_b, truth = perturbed_pair(100, 80, 0.5, seed=3)
        assert len(truth) == 40
        clean_a, _, _ = generate_pair(100, 80, 0.5, seed=3)
        assert db_a.ids == clean_a.ids
        assert changed_records(clean_a, db_a) > 0
        for id_a, id_b in truth:
            assert db_a.get(id_a).entity_id == db_b.get(id_b).entity_id

    def test_household_id_never_perturbed(self) -> None:
        """Test that only QIDs are blanked or edited."""
        db_a, _, _ = perturbed_pair(60, 60, 0.5, seed=4, mcar_rate=1.0, corrupt_rate=1.0)
        clean_a, _, _ = generate_pair(60, 60, 0.5, seed=4)
        assert [r.values[-1] for r in db_a] == [r.values[-1] for r in clean_a]
