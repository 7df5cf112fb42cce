"""
Signature Model Module.

Value types produced by attribute selection and signature generation:
- AttributeCombination: a canonical set of (attribute, transform) members
  together with the quality scores it was selected with.
- AttributeSignature: the token tuple one record yields for one combination.
- RelationalSignature: per-record feature values drawn from the record graph.
- SignatureDatabase: everything the matcher needs about one database.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

# (attribute index, transform id)
Member = Tuple[int, str]

# (database name, completeness, gini impurity, combined score)
DatabaseScore = Tuple[str, float, float, float]


def member_label(attribute: str, transform_id: str) -> str:
    """Display form of a member, e.g. ``yearOf(BirthDate)``; identity shows the bare name."""
    if transform_id == "identity":
        return attribute
    return f"{transform_id}({attribute})"


@dataclass(frozen=True)
class AttributeCombination:
    """
    A non-empty set of (attribute, transform) members.

    Members are held sorted, so two combinations built from any
    permutation of the same members compare and hash equal. Scores do
    not take part in equality.

    Attributes:
        members: Sorted (attribute index, transform id) pairs, one per attribute.
        score: Combined quality score (minimum over the scored databases).
        completeness: Completeness score belonging to ``score``.
        gini: Gini impurity score belonging to ``score``.
        per_database: Individual scores per database, kept for reporting.

    Raises:
        ValueError: If members is empty or names an attribute twice.
    """

    members: Tuple[Member, ...]
    score: float = field(default=0.0, compare=False)
    completeness: float = field(default=0.0, compare=False)
    gini: float = field(default=0.0, compare=False)
    per_database: Tuple[DatabaseScore, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        members = tuple(sorted((int(a), str(t)) for a, t in self.members))
        if not members:
            raise ValueError("An attribute combination needs at least one member")
        attributes = [a for a, _ in members]
        if len(set(attributes)) != len(attributes):
            raise ValueError(f"Attribute used more than once in combination {members}")
        object.__setattr__(self, "members", members)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def attributes(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.members)

    def with_scores(
        self,
        score: float,
        completeness: float,
        gini: float,
        per_database: Sequence[DatabaseScore] = (),
    ) -> "AttributeCombination":
        return replace(
            self,
            score=score,
            completeness=completeness,
            gini=gini,
            per_database=tuple(per_database),
        )

    def is_strict_subset_of(self, other: "AttributeCombination") -> bool:
        return self.size < other.size and set(self.members) <= set(other.members)

    def sub_combinations(self) -> List["AttributeCombination"]:
        """All combinations obtained by dropping exactly one member."""
        if self.size == 1:
            return []
        return [
            AttributeCombination(self.members[:i] + self.members[i + 1 :])
            for i in range(self.size)
        ]

    def label(self, schema: Sequence[str]) -> str:
        return "+".join(member_label(schema[a], t) for a, t in self.members)


@dataclass(frozen=True)
class AttributeSignature:
    """
    Ordered token tuple derived from one record under one combination.

    Two signatures are equal exactly when their token tuples are equal;
    the originating combination is kept for display only.
    """

    tokens: Tuple[str, ...]
    combination: Optional[AttributeCombination] = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if not self.tokens or any(not t for t in self.tokens):
            raise ValueError(f"Signature tokens must be non-empty strings: {self.tokens!r}")
        if self.combination is not None and len(self.tokens) != self.combination.size:
            raise ValueError(
                f"Signature has {len(self.tokens)} tokens but its combination "
                f"has {self.combination.size} members"
            )

    def display(self) -> str:
        """Concatenated token string, the human-readable form of the signature."""
        return "".join(self.tokens)


FeatureValue = Union[FrozenSet[AttributeSignature], float]


@dataclass(frozen=True)
class RelationalSignature:
    """
    Feature vector of one record's graph neighbourhood.

    Attributes:
        feature_ids: Feature identifiers, in configuration order.
        feature_values: A signature set for set-valued features, a finite
            non-negative number for numeric ones.
    """

    feature_ids: Tuple[str, ...]
    feature_values: Tuple[FeatureValue, ...]

    def __post_init__(self) -> None:
        if len(self.feature_ids) != len(self.feature_values):
            raise ValueError(
                f"{len(self.feature_ids)} feature ids but {len(self.feature_values)} values"
            )
        for fid, value in zip(self.feature_ids, self.feature_values):
            if isinstance(value, frozenset):
                continue
            if not (value >= 0.0 and value != float("inf")):
                raise ValueError(f"Numeric feature '{fid}' must be finite and >= 0, got {value}")

    def feature(self, feature_id: str) -> FeatureValue:
        return self.feature_values[self.feature_ids.index(feature_id)]

    def get(
        self, feature_id: str, default: Optional[FeatureValue] = None
    ) -> Optional[FeatureValue]:
        if feature_id not in self.feature_ids:
            return default
        return self.feature(feature_id)


RecordSignatures = Tuple[FrozenSet[AttributeSignature], RelationalSignature]


@dataclass(frozen=True)
class SignatureDatabase:
    """
    Per-record signatures and the inverted index over one database.

    Attributes:
        name: Name of the source database.
        combinations: Attribute combinations the signatures were built from.
        per_record: record id -> (attribute signatures, relational signature),
            in database order.
        inverted: attribute signature -> ids of the records holding it.
        occurrence: attribute signature -> number of records that produced it,
            counted before probability filtering.
        settings: Fingerprint of the generation settings; two databases
            can only be matched when their fingerprints agree.
    """

    name: str
    combinations: Tuple[AttributeCombination, ...]
    per_record: Dict[str, RecordSignatures]
    inverted: Dict[AttributeSignature, FrozenSet[str]]
    occurrence: Dict[AttributeSignature, int] = field(default_factory=dict)
    settings: Tuple = ()

    @property
    def record_ids(self) -> List[str]:
        return list(self.per_record)

    def attribute_signatures(self, record_id: str) -> FrozenSet[AttributeSignature]:
        return self.per_record[record_id][0]

    def relational_signature(self, record_id: str) -> RelationalSignature:
        return self.per_record[record_id][1]

    @staticmethod
    def invert(
        per_record: Dict[str, FrozenSet[AttributeSignature]],
    ) -> Dict[AttributeSignature, FrozenSet[str]]:
        """Build the signature -> record ids index from per-record signature sets."""
        index: Dict[AttributeSignature, List[str]] = {}
        for record_id, signatures in per_record.items():
            for signature in signatures:
                index.setdefault(signature, []).append(record_id)
        return {sig: frozenset(ids) for sig, ids in index.items()}

    def is_consistent(self) -> bool:
        """True when ``inverted`` is exactly the transpose of the per-record sets."""
        expected = self.invert({rid: sigs for rid, (sigs, _) in self.per_record.items()})
        return expected == self.inverted
