"""
Linkage Settings Module.

The frozen Config dataclass holding every tunable of the pipeline, with
defaults matching the published experimental setup. Every construction
is validated against ``linkage_config_schema.json``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from src.config.schema_registry import SchemaRegistry, SchemaValidationError
from src.model.errors import RecordLinkageError

CONFIG_SCHEMA = "linkage_config_schema"

# Relational feature ids, in the order they are documented.
FEATURE_IDS = ("neighbour_signatures", "degree", "egonet_density")

_registry = SchemaRegistry()


class ConfigurationError(RecordLinkageError):
    """Raised when a configuration file or value is invalid or cannot be loaded."""

    pass


TransformTable = Tuple[Tuple[str, Tuple[str, ...]], ...]
RelationshipSpec = Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class Config:
    """
    Resolved pipeline configuration.

    Attributes:
        n_a: Number of attribute combinations kept by selection.
        alpha: Completeness weight in the combination score.
        c_t: Minimum combination score.
        p_t: Minimum signature probability.
        beta: Weight of attribute similarity in the fused similarity.
        s_t: Similarity threshold for declaring a match.
        lam: Probability base, > 1 (``lambda`` in files and on the CLI).
        mu: Probability scale, in (0, 1).
        qids: Attributes eligible for combinations; empty means the whole schema.
        transforms: Per-attribute transform ids; unlisted attributes use identity.
        relationships: Relationship sets; each member is ``attr`` or ``transform:attr``.
        features: Relational feature ids.
        attribute_only: Disable the relational stage.
        selection_scope: ``both`` scores on both databases, ``a_only`` on database A alone.
        selection_method: ``apriori`` or ``random``.
        similarity: ``jaccard`` or ``dice``.
        relational_candidates: Add pairs sharing neighbour signatures as candidates.
        one_to_one: Reduce the match set to a greedy one-to-one assignment.
        seed: Seed for every random choice.
        workers: Worker processes for parallel sections.
        id_column: Record id column in CSV inputs.
        entity_column: Entity id column in CSV inputs.

    Raises:
        ConfigurationError: If any value violates its documented range.
    """

    n_a: int = 5
    alpha: float = 0.5
    c_t: float = 0.7
    p_t: float = 0.7
    beta: float = 0.5
    s_t: float = 0.8
    lam: float = 1.2
    mu: float = 0.2
    qids: Tuple[str, ...] = ()
    transforms: TransformTable = ()
    relationships: RelationshipSpec = ()
    features: Tuple[str, ...] = ("neighbour_signatures",)
    attribute_only: bool = False
    selection_scope: str = "both"
    selection_method: str = "apriori"
    similarity: str = "jaccard"
    relational_candidates: bool = True
    one_to_one: bool = False
    seed: int = 0
    workers: int = 1
    id_column: str = "id"
    entity_column: str = "entity_id"

    def __post_init__(self) -> None:
        object.__setattr__(self, "qids", tuple(self.qids))
        object.__setattr__(self, "features", tuple(self.features))
        object.__setattr__(
            self, "relationships", tuple(tuple(s) for s in self.relationships)
        )
        transforms = self.transforms
        if isinstance(transforms, Mapping):
            transforms = transforms.items()
        object.__setattr__(
            self, "transforms", tuple(sorted((a, tuple(t)) for a, t in transforms))
        )
        validate_mapping(self.to_dict())

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "Config":
        """
        Build a Config from a file-style mapping (``lambda`` key, lists).

        Raises:
            ConfigurationError: On unknown keys or out-of-range values.
        """
        validate_mapping(dict(data))
        kwargs = dict(data)
        if "lambda" in kwargs:
            kwargs["lam"] = kwargs.pop("lambda")
        return cls(**kwargs)

    def with_overrides(self, **overrides: Any) -> "Config":
        """Return a copy with the given non-None fields replaced, re-validated."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if "lambda" in changes:
            changes["lam"] = changes.pop("lambda")
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigurationError(f"Unknown configuration keys: {sorted(unknown)}")
        return replace(self, **changes)

    def transforms_for(self, attribute: str) -> Tuple[str, ...]:
        for name, ids in self.transforms:
            if name == attribute:
                return ids
        return ("identity",)

    def to_dict(self) -> Dict[str, Any]:
        """File-style mapping of every setting; the form logged for each run."""
        data = asdict(self)
        data["lambda"] = data.pop("lam")
        data["qids"] = list(self.qids)
        data["transforms"] = {a: list(t) for a, t in self.transforms}
        data["relationships"] = [list(s) for s in self.relationships]
        data["features"] = list(self.features)
        return data


def validate_mapping(data: Dict[str, Any], registry: Optional[SchemaRegistry] = None) -> None:
    """
    Validate a file-style configuration mapping against the config schema.

    Raises:
        ConfigurationError: Wrapping the schema violations.
    """
    try:
        (registry or _registry).validate(data, CONFIG_SCHEMA)
    except SchemaValidationError as e:
        raise ConfigurationError(
            "Configuration invalid:\n" + "\n".join(e.errors)
        ) from e


def parse_relationship_sets(raw: str | Sequence[Any]) -> RelationshipSpec:
    """
    Parse relationship sets written as ``a+b|c`` (or a list of such strings / lists).

    ``|`` separates sets, ``+`` separates the members of one set.
    """
    if isinstance(raw, str):
        parts: Sequence[Any] = [p for p in raw.split("|")]
    else:
        parts = raw
    sets = []
    for part in parts:
        if isinstance(part, str):
            members = tuple(m.strip() for m in part.split("+") if m.strip())
        else:
            members = tuple(str(m).strip() for m in part)
        if members:
            sets.append(members)
    return tuple(sets)
