"""
Signature Generation Module.

Builds the SignatureDatabase of one database:

1. Every record yields one attribute signature per selected combination
   for which all member values are present after transformation.
2. Signatures shared by too many records are unlikely to identify a
   single entity; a signature held by n records survives only if
   1 / (1 + lambda**n * mu) >= p_t.
3. The record graph is built and every record receives its relational
   signature from the surviving signatures of its neighbours.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, FrozenSet, List, Optional, Sequence

from loguru import logger

from src.config.settings import Config
from src.model.records import Database, Record, normalize_value
from src.model.signatures import (
    AttributeCombination,
    AttributeSignature,
    RelationalSignature,
    SignatureDatabase,
)
from src.pipeline.parallel import map_chunks, worker_context
from src.signatures.graph import build_record_graph
from src.signatures.relational import gen_relational_signature
from src.signatures.transforms import SignatureError, apply_transform


def gen_attribute_signature(
    record: Record, combination: AttributeCombination
) -> Optional[AttributeSignature]:
    """
    Token tuple of ``record`` under ``combination``, in canonical member order.

    Returns:
        The signature, or None when a member value is absent or its
        transform yields nothing.

    Raises:
        SignatureError: If a member's attribute index is outside the record.
    """
    tokens = []
    for index, transform_id in combination.members:
        if index >= len(record.values):
            raise SignatureError(
                f"Combination member {index} outside record '{record.id}' "
                f"with {len(record.values)} values"
            )
        token = apply_transform(transform_id, normalize_value(record.values[index]))
        if token is None:
            return None
        tokens.append(token)
    return AttributeSignature(tuple(tokens), combination)


def signature_probability(n: int, lam: float, mu: float) -> float:
    """
    Probability that a signature held by ``n`` records identifies one entity.

    Raises:
        SignatureError: If n < 1, lam <= 1 or mu is outside (0, 1).
    """
    if n < 1:
        raise SignatureError(f"Occurrence count must be >= 1, got {n}")
    if not lam > 1.0 or not 0.0 < mu < 1.0:
        raise SignatureError(
            f"Probability requires 0 < mu < 1 < lambda, got mu={mu}, lambda={lam}"
        )
    return 1.0 / (1.0 + lam**n * mu)


def record_signatures(
    record: Record, combinations: Sequence[AttributeCombination]
) -> FrozenSet[AttributeSignature]:
    signatures = (gen_attribute_signature(record, c) for c in combinations)
    return frozenset(s for s in signatures if s is not None)


def _attribute_chunk(chunk: Sequence[Record]) -> List[FrozenSet[AttributeSignature]]:
    combinations = worker_context()["combinations"]
    return [record_signatures(record, combinations) for record in chunk]


def _relational_chunk(chunk: Sequence[str]) -> List[RelationalSignature]:
    context = worker_context()
    return [
        gen_relational_signature(rid, context["graph"], context["signatures"], context["features"])
        for rid in chunk
    ]


def generation_settings(combinations: Sequence[AttributeCombination], config: Config) -> tuple:
    """Fingerprint of everything that must agree for two signature databases to be matched."""
    return (
        tuple(c.members for c in combinations),
        config.p_t,
        config.lam,
        config.mu,
        tuple(config.features),
    )


def build_signature_database(
    database: Database,
    combinations: Sequence[AttributeCombination],
    config: Config,
    workers: int | None = None,
) -> SignatureDatabase:
    """
    Generate, filter and index the signatures of one database.

    Args:
        database: Records to sign.
        combinations: Selected attribute combinations.
        config: Uses p_t, lam, mu, relationships and features.
        workers: Worker processes; defaults to ``config.workers``.

    Returns:
        SignatureDatabase whose per-record entries follow database order.
        Occurrence counts are taken once, before filtering, and are not
        recomputed afterwards.

    Raises:
        SignatureError: On an invalid combination, relationship or feature.
    """
    workers = config.workers if workers is None else workers
    combinations = tuple(combinations)
    ids = database.ids

    raw = map_chunks(
        _attribute_chunk, list(database.records), workers, {"combinations": combinations}
    )

    occurrence: Counter = Counter()
    for signatures in raw:
        occurrence.update(signatures)

    probability: Dict[int, float] = {}
    removed = set()
    for signature, n in occurrence.items():
        if n not in probability:
            probability[n] = signature_probability(n, config.lam, config.mu)
        if probability[n] < config.p_t:
            removed.add(signature)

    per_record_signatures = {
        rid: frozenset(s for s in signatures if s not in removed) if removed else signatures
        for rid, signatures in zip(ids, raw)
    }
    surviving = {s: n for s, n in occurrence.items() if s not in removed}
    logger.info(
        f"[Signatures] {database.name}: {len(occurrence)} distinct signatures, "
        f"{len(removed)} removed below p_t={config.p_t}"
    )

    graph = build_record_graph(database, config.relationships)
    relational = map_chunks(
        _relational_chunk,
        ids,
        workers,
        {"graph": graph, "signatures": per_record_signatures, "features": config.features},
    )

    per_record = {
        rid: (per_record_signatures[rid], rel) for rid, rel in zip(ids, relational)
    }
    without = sum(1 for sigs in per_record_signatures.values() if not sigs)
    if without:
        logger.debug(
            f"[Signatures] {database.name}: {without} records without attribute signatures"
        )

    return SignatureDatabase(
        name=database.name,
        combinations=combinations,
        per_record=per_record,
        inverted=SignatureDatabase.invert(per_record_signatures),
        occurrence=surviving,
        settings=generation_settings(combinations, config),
    )
