"""
Match Model Module.

Output types of the matcher: MatchStage, MatchPair and MatchSet.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, Tuple


class MatchStage(Enum):
    """Which matching stage admitted a pair."""

    ATTRIBUTE = "attribute"
    RELATIONAL = "relational"


@dataclass(frozen=True)
class MatchPair:
    """
    One declared link between a record of database A and a record of database B.

    Attributes:
        id_a: Record id in the first database.
        id_b: Record id in the second database.
        similarity: Similarity the pair was admitted with, in [0, 1].
        stage: Stage that admitted the pair.
    """

    id_a: str
    id_b: str
    similarity: float
    stage: MatchStage

    @property
    def key(self) -> Tuple[str, str]:
        return (self.id_a, self.id_b)


@dataclass(frozen=True)
class MatchSet:
    """Matched pairs, unique per (id_a, id_b) and sorted by that key."""

    pairs: Tuple[MatchPair, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.pairs, key=lambda p: p.key))
        keys = [p.key for p in ordered]
        if len(set(keys)) != len(keys):
            raise ValueError("MatchSet received the same (id_a, id_b) pair twice")
        object.__setattr__(self, "pairs", ordered)

    @classmethod
    def from_pairs(cls, pairs: Iterable[MatchPair]) -> "MatchSet":
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[MatchPair]:
        return iter(self.pairs)

    def id_pairs(self) -> FrozenSet[Tuple[str, str]]:
        return frozenset(p.key for p in self.pairs)

    def by_stage(self, stage: MatchStage) -> "MatchSet":
        return MatchSet(tuple(p for p in self.pairs if p.stage is stage))
