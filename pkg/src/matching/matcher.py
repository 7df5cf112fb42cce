"""
Record Matcher Module.

Two-stage classification of candidate pairs:

1. Attribute stage: a pair whose attribute-signature similarity reaches
   s_t is matched.
2. Relational stage: otherwise the attribute similarity is fused with
   the relational similarity (beta-weighted) and the pair is matched if
   the fused value reaches s_t.

With ``attribute_only`` the second stage and relational candidates are
skipped. Output is sorted by (id_a, id_b) and identical for any number
of workers.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Set, Tuple

from loguru import logger

from src.config.settings import Config
from src.matching.candidates import gen_candidate_pairs, gen_relational_candidate_pairs
from src.matching.similarity import fused_similarity, get_set_similarity, relational_similarity
from src.model.errors import RecordLinkageError
from src.model.matches import MatchPair, MatchSet, MatchStage
from src.model.signatures import SignatureDatabase
from src.pipeline.parallel import map_chunks, worker_context


class MatchError(RecordLinkageError):
    """Raised when two signature databases cannot be matched against each other."""

    pass


def classify_pair(
    id_a: str,
    id_b: str,
    signatures_a: SignatureDatabase,
    signatures_b: SignatureDatabase,
    config: Config,
) -> Optional[MatchPair]:
    """Classify one pair; returns the MatchPair if it is a match, None otherwise."""
    set_similarity = get_set_similarity(config.similarity)
    s_a = set_similarity(
        signatures_a.attribute_signatures(id_a), signatures_b.attribute_signatures(id_b)
    )
    if s_a >= config.s_t:
        return MatchPair(id_a, id_b, s_a, MatchStage.ATTRIBUTE)
    if config.attribute_only:
        return None

    s_r = relational_similarity(
        signatures_a.relational_signature(id_a),
        signatures_b.relational_signature(id_b),
        set_similarity,
    )
    fused = fused_similarity(s_a, s_r, config.beta)
    if fused >= config.s_t:
        return MatchPair(id_a, id_b, fused, MatchStage.RELATIONAL)
    return None


def _classify_chunk(chunk: Sequence[Tuple[str, str]]) -> List[MatchPair]:
    context = worker_context()
    signatures_a, signatures_b, config = context["a"], context["b"], context["config"]
    matched = []
    for id_a, id_b in chunk:
        pair = classify_pair(id_a, id_b, signatures_a, signatures_b, config)
        if pair is not None:
            matched.append(pair)
    return matched


def candidate_keys(
    signatures_a: SignatureDatabase, signatures_b: SignatureDatabase, config: Config
) -> List[Tuple[str, str]]:
    """Sorted (id_a, id_b) pairs the matcher will classify."""
    keys: Set[Tuple[str, str]] = {
        (c.id_a, c.id_b) for c in gen_candidate_pairs(signatures_a, signatures_b)
    }
    if not config.attribute_only and config.relational_candidates:
        keys |= gen_relational_candidate_pairs(signatures_a, signatures_b)
    return sorted(keys)


def match(
    signatures_a: SignatureDatabase,
    signatures_b: SignatureDatabase,
    config: Config,
    workers: int | None = None,
) -> MatchSet:
    """
    Classify every candidate pair of two signature databases.

    Args:
        signatures_a: Signature database of database A.
        signatures_b: Signature database of database B.
        config: Uses s_t, beta, similarity, attribute_only,
            relational_candidates and one_to_one.
        workers: Worker processes; defaults to ``config.workers``.

    Returns:
        MatchSet sorted by (id_a, id_b). Pairs admitted by the attribute
        stage carry the attribute similarity, the others the fused one.

    Raises:
        MatchError: If the two databases were built with different
            combinations or generation settings.
    """
    if signatures_a.settings != signatures_b.settings:
        raise MatchError(
            f"Signature databases {signatures_a.name} and {signatures_b.name} "
            f"were built with different settings"
        )
    workers = config.workers if workers is None else workers

    keys = candidate_keys(signatures_a, signatures_b, config)
    pairs = map_chunks(
        _classify_chunk,
        keys,
        workers,
        {"a": signatures_a, "b": signatures_b, "config": config},
    )
    result = MatchSet.from_pairs(pairs)

    if config.one_to_one:
        result = resolve_one_to_one(result)

    attribute = sum(1 for p in result if p.stage is MatchStage.ATTRIBUTE)
    logger.info(
        f"[Match] {len(keys)} candidates -> {len(result)} matches "
        f"({attribute} attribute, {len(result) - attribute} relational), s_t={config.s_t}"
    )
    return result


def resolve_one_to_one(matches: MatchSet) -> MatchSet:
    """
    Greedy one-to-one reduction.

    Pairs are taken by similarity descending, ties by (id_a, id_b); a
    pair is kept only if neither of its records is already used.
    """
    used_a: Set[str] = set()
    used_b: Set[str] = set()
    kept = []
    for pair in sorted(matches, key=lambda p: (-p.similarity, p.id_a, p.id_b)):
        if pair.id_a in used_a or pair.id_b in used_b:
            continue
        used_a.add(pair.id_a)
        used_b.add(pair.id_b)
        kept.append(pair)
    return MatchSet.from_pairs(kept)
