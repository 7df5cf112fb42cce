"""
Tests for the Selection Module.

Covers:
- Completeness, Gini impurity and the combined score.
- Lattice generation (join and prune).
- select_attribute_combinations: acceptance, subset eviction, ordering.
- The random baseline and the on-disk selection cache.
"""

from __future__ import annotations

from pathlib import Path
from typing import List

import numpy as np
import pytest

from src.config.settings import Config
from src.model.records import Database, Record
from src.model.signatures import AttributeCombination
from src.selection.cache import cache_path, load_selection, save_selection, selection_cache_key
from src.selection.lattice import (
    combination_from_labels,
    gen_combinations,
    lattice_atoms,
    select_attribute_combinations,
    select_combinations,
    select_random_combinations,
    top_combinations,
)
from src.selection.scoring import (
    ColumnCache,
    SelectionError,
    combined_score,
    completeness_score,
    gini_impurity_score,
    score_combination,
)
from src.synthgen.generator import SYNTH_QIDS


def combo(*attributes: int) -> AttributeCombination:
    return AttributeCombination(tuple((a, "identity") for a in attributes))


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def distinct_db() -> Database:
    """Four records, a and b distinct and complete, c always missing."""
    return Database(
        schema=("a", "b", "c"),
        records=tuple(Record(f"x{i}", (f"a{i}", f"b{i}", None)) for i in range(4)),
        name="D",
    )


@pytest.fixture
def complete_db() -> Database:
    """Four records with three distinct, complete attributes."""
    return Database(
        schema=("a", "b", "c"),
        records=tuple(Record(f"y{i}", (f"a{i}", f"b{i}", f"c{i}")) for i in range(4)),
        name="E",
    )


# ---------------------------------------------------------------------------
# Scoring
# ---------------------------------------------------------------------------


class TestScoring:
    """Tests for the combination quality scores."""

    def test_gini_of_first_name(self, sample_a: Database) -> None:
        """Test Gini impurity of FirstName over peter, peter, anne."""
        first_name = combination_from_labels(sample_a.schema, ["FirstName"])
        assert gini_impurity_score(first_name, sample_a) == pytest.approx(4 / 9)

    def test_completeness_with_missing_last_name(self, sample_a: Database) -> None:
        """Test that r2's missing LastName lowers completeness to 2/3."""
        names = combination_from_labels(sample_a.schema, ["FirstName", "LastName"])
        assert completeness_score(names, sample_a) == pytest.approx(2 / 3)

    def test_gini_counts_missing_in_denominator(self, sample_a: Database) -> None:
        """Test that records with a missing member still count in the size."""
        names = combination_from_labels(sample_a.schema, ["FirstName", "LastName"])
        assert gini_impurity_score(names, sample_a) == pytest.approx(4 / 9)

    def test_combined_score(self) -> None:
        """Test the alpha blend of completeness and Gini."""
        assert combined_score(2 / 3, 4 / 9, 0.5) == pytest.approx(5 / 9)
        assert combined_score(0.2, 0.9, 1.0) == pytest.approx(0.2)
        assert combined_score(0.2, 0.9, 0.0) == pytest.approx(0.9)

    def test_missing_after_transform(self, sample_b: Database) -> None:
        """Test that a value whose transform yields nothing counts as missing."""
        year = combination_from_labels(sample_b.schema, ["FirstName", "yearOf:BirthDate"])
        assert completeness_score(year, sample_b) == pytest.approx(0.5)

    def test_empty_database_scores_zero(self) -> None:
        """Test that an empty database has zero completeness and Gini."""
        empty = Database(("a", "b"), ())
        assert completeness_score(combo(0, 1), empty) == 0.0
        assert gini_impurity_score(combo(0, 1), empty) == 0.0

    def test_score_is_minimum_over_databases(
        self, distinct_db: Database, complete_db: Database
    ) -> None:
        """Test that the weaker database determines the score."""
        scored = score_combination(
            combo(0, 2), [ColumnCache(complete_db), ColumnCache(distinct_db)], 0.5
        )
        assert scored.score == pytest.approx(0.0)
        assert [entry[0] for entry in scored.per_database] == ["E", "D"]
        assert scored.per_database[0][3] == pytest.approx(0.875)

    def test_unknown_index_raises(self, distinct_db: Database) -> None:
        """Test that a member outside the schema is reported."""
        with pytest.raises(SelectionError, match="outside schema"):
            completeness_score(combo(0, 7), distinct_db)


# ---------------------------------------------------------------------------
# Lattice
# ---------------------------------------------------------------------------


class TestLattice:
    """Tests for lattice generation helpers."""

    def test_join_complete_level(self) -> None:
        """Test that ab, ac, bc join to abc."""
        assert gen_combinations({combo(0, 1), combo(0, 2), combo(1, 2)}) == {combo(0, 1, 2)}

    def test_prune_missing_subset(self) -> None:
        """Test that abc is pruned when bc did not survive."""
        assert gen_combinations({combo(0, 1), combo(0, 2)}) == set()

    def test_same_attribute_never_joined(self) -> None:
        """Test that two transforms of one attribute are not combined."""
        level = {
            AttributeCombination(((2, "identity"),)),
            AttributeCombination(((2, "yearOf"),)),
            AttributeCombination(((0, "identity"),)),
        }
        pairs = gen_combinations(level)
        assert pairs == {
            AttributeCombination(((0, "identity"), (2, "identity"))),
            AttributeCombination(((0, "identity"), (2, "yearOf"))),
        }

    def test_mixed_sizes_rejected(self) -> None:
        """Test that a level must hold one combination size."""
        with pytest.raises(SelectionError, match="mixes combination sizes"):
            gen_combinations({combo(0), combo(0, 1)})

    def test_atoms_follow_transforms(self, sample_a: Database) -> None:
        """Test that every configured transform of a QID becomes an atom."""
        config = Config(
            qids=("FirstName", "BirthDate"), transforms={"BirthDate": ["identity", "yearOf"]}
        )
        assert lattice_atoms(sample_a.schema, config) == [
            (0, "identity"),
            (2, "identity"),
            (2, "yearOf"),
        ]

    def test_unknown_qid(self, sample_a: Database) -> None:
        """Test that a QID outside the schema is reported."""
        with pytest.raises(SelectionError, match="not in the schema"):
            lattice_atoms(sample_a.schema, Config(qids=("Email",)))

    def test_labels(self, sample_a: Database) -> None:
        """Test label parsing and its unknown-attribute error."""
        s1 = combination_from_labels(
            sample_a.schema, ["FirstName", "LastName", "yearOf:BirthDate"]
        )
        assert s1.members == ((0, "identity"), (1, "identity"), (2, "yearOf"))
        with pytest.raises(SelectionError, match="Unknown attribute"):
            combination_from_labels(sample_a.schema, ["Email"])

    def test_top_combinations_order(self) -> None:
        """Test ordering by score, then size, then members."""
        ranked = top_combinations(
            [
                combo(0, 1, 2).with_scores(0.9, 1.0, 0.8),
                combo(1, 2).with_scores(0.9, 1.0, 0.8),
                combo(0, 2).with_scores(0.9, 1.0, 0.8),
                combo(0, 1).with_scores(0.95, 1.0, 0.9),
            ],
            3,
        )
        assert ranked == [combo(0, 1), combo(0, 2), combo(1, 2)]


# ---------------------------------------------------------------------------
# Selection
# ---------------------------------------------------------------------------


class TestSelectAttributeCombinations:
    """Tests for the level-wise selection."""

    def test_incomplete_attribute_never_selected(self, distinct_db: Database) -> None:
        """Test that only the complete pair survives."""
        selected = select_attribute_combinations(distinct_db, distinct_db, Config(c_t=0.7))
        assert selected == [combo(0, 1)]
        assert selected[0].score == pytest.approx(0.875)
        assert selected[0].completeness == pytest.approx(1.0)
        assert selected[0].gini == pytest.approx(0.75)

    def test_superset_evicts_subsets(self, complete_db: Database) -> None:
        """Test that an accepted triple replaces its accepted pairs."""
        selected = select_attribute_combinations(complete_db, complete_db, Config(c_t=0.7))
        assert selected == [combo(0, 1, 2)]

    def test_nothing_reaches_threshold(self, complete_db: Database) -> None:
        """Test that an unreachable c_t yields an empty selection."""
        assert select_attribute_combinations(complete_db, complete_db, Config(c_t=0.99)) == []

    def test_n_a_caps_selection(self, complete_db: Database) -> None:
        """Test that ties keep canonical member order and n_a cuts the list."""
        config = Config(c_t=0.7, n_a=1, transforms={"a": ["identity", "prefix(1)"]})
        identity_triple = combo(0, 1, 2)
        prefix_triple = AttributeCombination(((0, "prefix(1)"), (1, "identity"), (2, "identity")))

        assert select_attribute_combinations(complete_db, complete_db, config) == [
            identity_triple
        ]
        assert select_attribute_combinations(
            complete_db, complete_db, config.with_overrides(n_a=5)
        ) == [identity_triple, prefix_triple]

    def test_scope_a_only(self, complete_db: Database, distinct_db: Database) -> None:
        """Test that a_only ignores the second database's scores."""
        both = select_attribute_combinations(complete_db, distinct_db, Config(c_t=0.7))
        a_only = select_attribute_combinations(
            complete_db, distinct_db, Config(c_t=0.7, selection_scope="a_only")
        )
        assert both == [combo(0, 1)]
        assert a_only == [combo(0, 1, 2)]

    def test_schema_mismatch(self, complete_db: Database, sample_a: Database) -> None:
        """Test that databases with different schemas are refused."""
        with pytest.raises(SelectionError, match="Schema mismatch"):
            select_attribute_combinations(complete_db, sample_a, Config())

    def test_workers_do_not_change_result(self, sample_a: Database, sample_b: Database) -> None:
        """Test that parallel scoring returns the same selection."""
        config = Config(c_t=0.3, transforms={"BirthDate": ["identity", "yearOf"]})
        serial = select_attribute_combinations(sample_a, sample_b, config, workers=1)
        parallel = select_attribute_combinations(sample_a, sample_b, config, workers=2)
        assert [c.members for c in serial] == [c.members for c in parallel]
        assert [c.score for c in serial] == pytest.approx([c.score for c in parallel])

    def test_record_order_does_not_matter(self, synthetic_pair: tuple) -> None:
        """Test that permuting both databases leaves the selection and its scores unchanged."""
        db_a, db_b, _ = synthetic_pair
        config = Config(
            qids=SYNTH_QIDS, transforms={"birth_date": ["identity", "prefix(4)"]}, c_t=0.6
        )
        rng = np.random.default_rng(5)
        shuffled_a = db_a.with_records(db_a.records[i] for i in rng.permutation(len(db_a)))
        shuffled_b = db_b.with_records(db_b.records[i] for i in rng.permutation(len(db_b)))
        assert shuffled_a.records != db_a.records

        original = select_attribute_combinations(db_a, db_b, config, workers=1)
        permuted = select_attribute_combinations(shuffled_a, shuffled_b, config, workers=1)
        assert original
        assert [c.members for c in permuted] == [c.members for c in original]
        assert [c.score for c in permuted] == [c.score for c in original]


class TestRandomSelection:
    """Tests for the random baseline."""

    def test_seeded_and_valid(self, complete_db: Database) -> None:
        """Test that a seed fixes the draw and every draw is a valid combination."""
        config = Config(selection_method="random", n_a=3, seed=4)
        first = select_random_combinations(complete_db, complete_db, config)
        second = select_combinations(complete_db, complete_db, config)
        assert [c.members for c in first] == [c.members for c in second]
        assert len(first) == 3
        assert all(c.size >= 2 for c in first)
        assert len(set(first)) == 3

    def test_pool_smaller_than_n_a(self, distinct_db: Database) -> None:
        """Test that the draw is capped by the four available combinations."""
        config = Config(selection_method="random", n_a=10)
        assert len(select_random_combinations(distinct_db, distinct_db, config)) == 4


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------


class TestSelectionCache:
    """Tests for the selection cache."""

    def test_save_and_load(
        self,
        tmp_path: Path,
        data_dir: Path,
        sample_a: Database,
        sample_combinations: List[AttributeCombination],
    ) -> None:
        """Test that a stored selection is returned for the same key."""
        key = selection_cache_key(
            data_dir / "sample_a.csv", data_dir / "sample_b.csv", Config()
        )
        path = save_selection(cache_path(tmp_path, key), key, sample_a.schema, sample_combinations)
        assert path.name == f"selection-{key[:16]}.json"
        assert load_selection(path, key, sample_a.schema) == sample_combinations

    def test_stale_key_ignored(
        self, tmp_path: Path, sample_a: Database, sample_combinations: List[AttributeCombination]
    ) -> None:
        """Test that a different key or schema misses the cache."""
        path = save_selection(tmp_path / "s.json", "k1", sample_a.schema, sample_combinations)
        assert load_selection(path, "k2", sample_a.schema) is None
        assert load_selection(path, "k1", ["x"]) is None
        assert load_selection(tmp_path / "absent.json", "k1", sample_a.schema) is None

    def test_key_tracks_selection_parameters(self, data_dir: Path) -> None:
        """Test that c_t changes the key and s_t does not."""
        a, b = data_dir / "sample_a.csv", data_dir / "sample_b.csv"
        base = selection_cache_key(a, b, Config())
        assert selection_cache_key(a, b, Config(s_t=0.6)) == base
        assert selection_cache_key(a, b, Config(c_t=0.6)) != base
