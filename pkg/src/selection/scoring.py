"""
Combination Scoring Module.

Quality scores of an attribute combination over one database:
- completeness_score: fraction of records with every member present.
- gini_impurity_score: distinctiveness of the joint member values.
- combined_score: the alpha-weighted blend used by the selection lattice.

Missing means absent after the member's transform, so a combination is
scored on exactly the values its signatures would be built from.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.model.errors import RecordLinkageError
from src.model.records import Database
from src.model.signatures import AttributeCombination, Member
from src.signatures.transforms import apply_transform, get_transform


class SelectionError(RecordLinkageError):
    """Raised on unknown attributes, schema mismatches or malformed lattice levels."""

    pass


class ColumnCache:
    """Transformed columns of one database, computed once per (attribute, transform)."""

    def __init__(self, database: Database) -> None:
        self.database = database
        self._columns: Dict[Member, List[Optional[str]]] = {}

    def column(self, member: Member) -> List[Optional[str]]:
        if member not in self._columns:
            index, transform_id = member
            if not 0 <= index < len(self.database.schema):
                raise SelectionError(
                    f"Attribute index {index} outside schema of database {self.database.name}"
                )
            fn = get_transform(transform_id)
            self._columns[member] = [
                apply_transform(fn, value) for value in self.database.column(index)
            ]
        return self._columns[member]


def combination_values(
    combination: AttributeCombination,
    database: Database,
    cache: Optional[ColumnCache] = None,
) -> List[Optional[Tuple[str, ...]]]:
    """Per record, the tuple of transformed member values, or None if any is missing."""
    cache = cache or ColumnCache(database)
    columns = [cache.column(member) for member in combination.members]
    return [None if None in row else row for row in zip(*columns)]


def completeness_score(
    combination: AttributeCombination,
    database: Database,
    cache: Optional[ColumnCache] = None,
) -> float:
    """
    Fraction of records holding a value for every member of the combination.

    An empty database scores 0.
    """
    if len(database) == 0:
        return 0.0
    values = combination_values(combination, database, cache)
    missing = sum(1 for v in values if v is None)
    return (len(database) - missing) / len(database)


def gini_impurity_score(
    combination: AttributeCombination,
    database: Database,
    cache: Optional[ColumnCache] = None,
) -> float:
    """
    Gini impurity of the joint member values.

    Probabilities are value frequencies over the full database size,
    records with a missing member included in the denominator. The sum
    is exact, so record order never changes the result.
    """
    if len(database) == 0:
        return 0.0
    size = len(database)
    counts = Counter(v for v in combination_values(combination, database, cache) if v is not None)
    return math.fsum((f / size) * (1.0 - f / size) for f in counts.values())


def combined_score(completeness: float, gini: float, alpha: float) -> float:
    return alpha * completeness + (1.0 - alpha) * gini


@dataclass(frozen=True)
class CombinationScore:
    database: str
    completeness: float
    gini: float
    score: float


def score_on(
    combination: AttributeCombination,
    cache: ColumnCache,
    alpha: float,
) -> CombinationScore:
    s_c = completeness_score(combination, cache.database, cache)
    s_g = gini_impurity_score(combination, cache.database, cache)
    return CombinationScore(cache.database.name, s_c, s_g, combined_score(s_c, s_g, alpha))


def score_combination(
    combination: AttributeCombination,
    caches: List[ColumnCache],
    alpha: float,
) -> AttributeCombination:
    """
    Score a combination on every database and keep the weakest score.

    Returns:
        The combination carrying the minimum score, the completeness and
        Gini values that produced it, and the per-database breakdown.
    """
    scores = [score_on(combination, cache, alpha) for cache in caches]
    worst = min(scores, key=lambda s: s.score)
    return combination.with_scores(
        worst.score,
        worst.completeness,
        worst.gini,
        [(s.database, s.completeness, s.gini, s.score) for s in scores],
    )
