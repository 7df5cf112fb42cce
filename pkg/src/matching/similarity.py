"""
Similarity functions used by the matcher.

Set similarities compare attribute-signature sets; relational
similarity averages per-feature similarities over two relational
signatures. All functions return values in [0, 1].
"""

from __future__ import annotations

from typing import AbstractSet, Any, Callable, Dict

from src.model.signatures import RelationalSignature

SetSimilarity = Callable[[AbstractSet[Any], AbstractSet[Any]], float]


def jaccard(x: AbstractSet[Any], y: AbstractSet[Any]) -> float:
    """|x & y| / |x | y|; two empty sets score 0."""
    if not x and not y:
        return 0.0
    shared = len(x & y)
    return shared / (len(x) + len(y) - shared)


def dice(x: AbstractSet[Any], y: AbstractSet[Any]) -> float:
    """2|x & y| / (|x| + |y|); two empty sets score 0."""
    total = len(x) + len(y)
    if total == 0:
        return 0.0
    return 2.0 * len(x & y) / total


SET_SIMILARITIES: Dict[str, SetSimilarity] = {"jaccard": jaccard, "dice": dice}


def get_set_similarity(name: str) -> SetSimilarity:
    try:
        return SET_SIMILARITIES[name]
    except KeyError:
        raise ValueError(
            f"Unknown set similarity '{name}' (expected one of {sorted(SET_SIMILARITIES)})"
        ) from None


def numeric_similarity(x: float, y: float) -> float:
    """1 - |x - y| / max(x, y, 1) for non-negative values."""
    return 1.0 - abs(x - y) / max(x, y, 1.0)


def relational_similarity(
    left: RelationalSignature,
    right: RelationalSignature,
    set_similarity: SetSimilarity = jaccard,
) -> float:
    """
    Unweighted mean of per-feature similarities.

    Set-valued features use ``set_similarity``, numeric ones
    ``numeric_similarity``. Both signatures must carry the same features.
    """
    if left.feature_ids != right.feature_ids:
        raise ValueError(
            f"Relational signatures disagree on features: "
            f"{left.feature_ids} vs {right.feature_ids}"
        )
    if not left.feature_ids:
        return 0.0

    total = 0.0
    for a, b in zip(left.feature_values, right.feature_values):
        if isinstance(a, frozenset) and isinstance(b, frozenset):
            total += set_similarity(a, b)
        else:
            total += numeric_similarity(float(a), float(b))  # type: ignore[arg-type]
    return total / len(left.feature_ids)


def fused_similarity(attribute: float, relational: float, beta: float) -> float:
    return beta * attribute + (1.0 - beta) * relational
