"""
Attribute Selection Lattice Module.

Level-wise (Apriori) search for attribute combinations that are both
complete and distinctive on the databases being linked:

1. Every configured (attribute, transform) pair seeds level 1.
2. Level k is joined from level k-1; a candidate survives the join only
   if all of its size-(k-1) sub-combinations survived level k-1.
3. Candidates scoring at least c_t are accepted and evict any accepted
   strict subset; candidates below c_t are dropped from the level so no
   superset of theirs is ever generated.
4. The best n_a accepted combinations are returned.

A random baseline drawing n_a combinations uniformly is provided for
comparison runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import numpy as np
from loguru import logger

from src.config.settings import Config
from src.model.records import Database
from src.model.signatures import AttributeCombination, Member
from src.pipeline.parallel import map_chunks, worker_context
from src.selection.scoring import ColumnCache, SelectionError, score_combination
from src.signatures.transforms import SignatureError, get_transform, parse_member


# ---------------------------------------------------------------------------
# Lattice generation
# ---------------------------------------------------------------------------


def seed_combinations(atoms: Iterable[Member]) -> Set[AttributeCombination]:
    """Level 1 of the lattice: one single-member combination per atom."""
    return {AttributeCombination((atom,)) for atom in atoms}


def gen_combinations(prev: Iterable[AttributeCombination]) -> Set[AttributeCombination]:
    """
    Join size-(k-1) combinations into size-k candidates.

    Two combinations sharing their first k-2 members (in canonical order)
    produce a candidate when their last members name different
    attributes. A candidate is kept only if every size-(k-1)
    sub-combination is in ``prev``.

    Raises:
        SelectionError: If ``prev`` mixes combinations of different sizes.
    """
    level = set(prev)
    if not level:
        return set()
    sizes = {c.size for c in level}
    if len(sizes) > 1:
        raise SelectionError(f"Lattice level mixes combination sizes {sorted(sizes)}")

    ordered = sorted(level, key=lambda c: c.members)
    candidates: Set[AttributeCombination] = set()
    for i, left in enumerate(ordered):
        for right in ordered[i + 1 :]:
            if left.members[:-1] != right.members[:-1]:
                break
            if left.members[-1][0] == right.members[-1][0]:
                continue
            candidate = AttributeCombination(left.members + right.members[-1:])
            if all(sub in level for sub in candidate.sub_combinations()):
                candidates.add(candidate)
    return candidates


def lattice_atoms(schema: Sequence[str], config: Config) -> List[Member]:
    """
    (attribute index, transform id) atoms for the configured QIDs.

    Raises:
        SelectionError: If a QID or transform is unknown.
    """
    qids = config.qids or tuple(schema)
    atoms: List[Member] = []
    for name in qids:
        if name not in schema:
            raise SelectionError(f"QID attribute '{name}' is not in the schema {list(schema)}")
        for transform_id in config.transforms_for(name):
            try:
                get_transform(transform_id)
            except SignatureError as e:
                raise SelectionError(str(e)) from e
            atoms.append((schema.index(name), transform_id))
    for name, _ in config.transforms:
        if name not in qids:
            logger.warning(f"[Select] Transforms configured for non-QID attribute '{name}'")
    return sorted(atoms)


def combination_from_labels(schema: Sequence[str], labels: Sequence[str]) -> AttributeCombination:
    """
    Build a combination from ``attr`` / ``transform:attr`` labels.

    Raises:
        SelectionError: If a label names an attribute outside the schema.
    """
    members = []
    for label in labels:
        try:
            attribute, transform_id = parse_member(label)
        except SignatureError as e:
            raise SelectionError(str(e)) from e
        if attribute not in schema:
            raise SelectionError(f"Unknown attribute '{attribute}' (schema: {list(schema)})")
        members.append((schema.index(attribute), transform_id))
    return AttributeCombination(tuple(members))


def selection_order(combination: AttributeCombination) -> Tuple:
    """Sort key: score descending, then fewer members, then canonical member order."""
    return (-combination.score, combination.size, combination.members)


def top_combinations(
    accepted: Iterable[AttributeCombination], n_a: int
) -> List[AttributeCombination]:
    return sorted(accepted, key=selection_order)[:n_a]


# ---------------------------------------------------------------------------
# Scoring in workers
# ---------------------------------------------------------------------------


def _score_chunk(chunk: Sequence[AttributeCombination]) -> List[AttributeCombination]:
    context = worker_context()
    caches = context.get("caches")
    if caches is None:
        caches = [ColumnCache(db) for db in context["databases"]]
        context["caches"] = caches
    return [score_combination(c, caches, context["alpha"]) for c in chunk]


def _scoring_databases(db_a: Database, db_b: Database, config: Config) -> List[Database]:
    if db_a.schema != db_b.schema:
        raise SelectionError(
            f"Schema mismatch: {db_a.name} has {list(db_a.schema)}, "
            f"{db_b.name} has {list(db_b.schema)}"
        )
    return [db_a] if config.selection_scope == "a_only" else [db_a, db_b]


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


@dataclass
class SelectionLattice:
    """
    State of one level-wise selection run.

    Attributes:
        levels: Surviving combinations per level (scored, >= c_t from level 2 on).
        accepted: Accepted combinations with no accepted strict superset.
        scored: Number of combinations scored across all levels.
    """

    levels: Dict[int, Set[AttributeCombination]] = field(default_factory=dict)
    accepted: List[AttributeCombination] = field(default_factory=list)
    scored: int = 0

    def accept(self, combination: AttributeCombination) -> None:
        self.accepted = [c for c in self.accepted if not c.is_strict_subset_of(combination)]
        self.accepted.append(combination)


def select_attribute_combinations(
    db_a: Database,
    db_b: Database,
    config: Config,
    workers: int | None = None,
) -> List[AttributeCombination]:
    """
    Run the level-wise selection and return the top n_a combinations.

    A combination's score is the minimum of its scores on the scored
    databases (both by default, database A alone with ``selection_scope=a_only``).
    Single-attribute combinations only seed the lattice and are never
    selected.

    Args:
        db_a: First database.
        db_b: Second database; must share db_a's schema.
        config: Uses n_a, alpha, c_t, qids, transforms and selection_scope.
        workers: Worker processes for scoring; defaults to ``config.workers``.

    Returns:
        Up to n_a combinations ordered by score descending, then size,
        then canonical member order. Empty (with a warning) when no
        combination reaches c_t.

    Raises:
        SelectionError: On a schema mismatch or an unknown QID.
    """
    databases = _scoring_databases(db_a, db_b, config)
    workers = config.workers if workers is None else workers
    atoms = lattice_atoms(db_a.schema, config)
    max_size = len({attribute for attribute, _ in atoms})

    lattice = SelectionLattice(levels={1: seed_combinations(atoms)})
    context = {"databases": databases, "alpha": config.alpha}
    logger.info(
        f"[Select] {len(atoms)} atoms over {max_size} attributes, "
        f"c_t={config.c_t}, alpha={config.alpha}, scope={config.selection_scope}"
    )

    for k in range(2, max_size + 1):
        candidates = sorted(gen_combinations(lattice.levels[k - 1]), key=lambda c: c.members)
        if not candidates:
            break
        scored = map_chunks(_score_chunk, candidates, workers, context)
        lattice.scored += len(scored)

        level: Set[AttributeCombination] = set()
        for combination in scored:
            if combination.score >= config.c_t:
                lattice.accept(combination)
                level.add(combination)
        lattice.levels[k] = level
        logger.debug(f"[Select] Level {k}: {len(candidates)} candidates, {len(level)} kept")

    selected = top_combinations(lattice.accepted, config.n_a)
    if not selected:
        logger.warning(f"[Select] No combination reached c_t={config.c_t}; selection is empty")
    logger.info(
        f"[Select] Scored {lattice.scored} combinations, accepted {len(lattice.accepted)}, "
        f"selected {len(selected)}"
    )
    return selected


def select_random_combinations(
    db_a: Database,
    db_b: Database,
    config: Config,
) -> List[AttributeCombination]:
    """
    Baseline selection: n_a distinct combinations drawn uniformly.

    Candidates are every combination of 2 or more distinct attributes
    over the lattice atoms; the draw uses a numpy Generator seeded with
    ``config.seed``. The chosen combinations are scored for reporting
    and returned in selection order.
    """
    databases = _scoring_databases(db_a, db_b, config)
    atoms = lattice_atoms(db_a.schema, config)
    by_attribute: Dict[int, List[Member]] = {}
    for atom in atoms:
        by_attribute.setdefault(atom[0], []).append(atom)

    pool: List[AttributeCombination] = []
    attributes = sorted(by_attribute)
    for size in range(2, len(attributes) + 1):
        for chosen in itertools.combinations(attributes, size):
            for members in itertools.product(*(by_attribute[a] for a in chosen)):
                pool.append(AttributeCombination(tuple(members)))
    pool.sort(key=lambda c: c.members)

    rng = np.random.default_rng(config.seed)
    count = min(config.n_a, len(pool))
    picks: List[int] = []
    if count:
        picks = sorted(int(i) for i in rng.choice(len(pool), size=count, replace=False))

    caches = [ColumnCache(db) for db in databases]
    selected = [score_combination(pool[i], caches, config.alpha) for i in picks]
    logger.info(f"[Select] Random baseline drew {len(selected)} of {len(pool)} combinations")
    return sorted(selected, key=selection_order)


def select_combinations(
    db_a: Database, db_b: Database, config: Config, workers: int | None = None
) -> List[AttributeCombination]:
    """Dispatch on ``config.selection_method``."""
    if config.selection_method == "random":
        return select_random_combinations(db_a, db_b, config)
    return select_attribute_combinations(db_a, db_b, config, workers)
