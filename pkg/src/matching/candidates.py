"""
Candidate pair generation.

Candidates are found through the inverted indexes of the two signature
databases, never through the cross product: a pair is a candidate when
the two records share at least one attribute signature. Relational
candidates additionally pair records whose neighbour-signature sets
intersect.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Set, Tuple

from loguru import logger

from src.model.signatures import AttributeSignature, SignatureDatabase


@dataclass(frozen=True, order=True)
class CandidatePair:
    """A pair of records sharing ``shared`` signatures (>= 1)."""

    id_a: str
    id_b: str
    shared: int = 1


def _pair_counts(
    index_a: Mapping[AttributeSignature, Iterable[str]],
    index_b: Mapping[AttributeSignature, Iterable[str]],
) -> Counter:
    if len(index_b) < len(index_a):
        swapped = _pair_counts(index_b, index_a)
        return Counter({(a, b): n for (b, a), n in swapped.items()})

    counts: Counter = Counter()
    for signature, ids_a in index_a.items():
        ids_b = index_b.get(signature)
        if not ids_b:
            continue
        for id_a in ids_a:
            for id_b in ids_b:
                counts[(id_a, id_b)] += 1
    return counts


def gen_candidate_pairs(
    signatures_a: SignatureDatabase, signatures_b: SignatureDatabase
) -> FrozenSet[CandidatePair]:
    """
    Pairs of records sharing at least one attribute signature.

    Returns:
        One CandidatePair per distinct (id_a, id_b), carrying the number
        of signatures the two records share.
    """
    counts = _pair_counts(signatures_a.inverted, signatures_b.inverted)
    logger.debug(f"[Match] {len(counts)} attribute candidate pairs")
    return frozenset(CandidatePair(a, b, n) for (a, b), n in counts.items())


def neighbour_index(
    signatures: SignatureDatabase,
) -> Dict[AttributeSignature, List[str]]:
    """Inverted index over the neighbour-signature feature of every record."""
    index: Dict[AttributeSignature, List[str]] = {}
    for record_id, (_, relational) in signatures.per_record.items():
        neighbours = relational.get("neighbour_signatures")
        if not isinstance(neighbours, frozenset):
            continue
        for signature in neighbours:
            index.setdefault(signature, []).append(record_id)
    return index


def gen_relational_candidate_pairs(
    signatures_a: SignatureDatabase, signatures_b: SignatureDatabase
) -> Set[Tuple[str, str]]:
    """
    Pairs of records whose neighbour-signature sets intersect.

    Empty when ``neighbour_signatures`` is not a configured feature.
    """
    counts = _pair_counts(neighbour_index(signatures_a), neighbour_index(signatures_b))
    logger.debug(f"[Match] {len(counts)} relational candidate pairs")
    return set(counts)
