"""
Relational signature generation.

A record's relational signature summarizes its neighbourhood in the
record graph, one value per configured feature:

- neighbour_signatures  union of the neighbours' attribute signatures
- degree                number of neighbours
- egonet_density        density of the record's egonet
"""

from __future__ import annotations

from typing import Callable, Dict, FrozenSet, Mapping, Sequence

from src.model.records import Record
from src.model.signatures import AttributeSignature, FeatureValue, RelationalSignature
from src.signatures.graph import RecordGraph, egonet_density
from src.signatures.transforms import SignatureError

SignatureMap = Mapping[str, FrozenSet[AttributeSignature]]
FeatureFn = Callable[[str, FrozenSet[str], RecordGraph, SignatureMap], FeatureValue]


def _neighbour_signatures(
    vertex: str, neighbours: FrozenSet[str], graph: RecordGraph, signatures: SignatureMap
) -> FeatureValue:
    return frozenset().union(*(signatures.get(n, frozenset()) for n in neighbours))


def _degree(
    vertex: str, neighbours: FrozenSet[str], graph: RecordGraph, signatures: SignatureMap
) -> FeatureValue:
    return float(len(neighbours))


def _egonet_density(
    vertex: str, neighbours: FrozenSet[str], graph: RecordGraph, signatures: SignatureMap
) -> FeatureValue:
    return egonet_density(vertex, graph)


FEATURES: Dict[str, FeatureFn] = {
    "neighbour_signatures": _neighbour_signatures,
    "degree": _degree,
    "egonet_density": _egonet_density,
}


def gen_relational_signature(
    record: Record | str,
    graph: RecordGraph,
    signatures: SignatureMap,
    feature_ids: Sequence[str],
) -> RelationalSignature:
    """
    Compute the relational signature of one record.

    Args:
        record: The record (or its id); it must be a vertex of ``graph``.
        graph: Record graph of the record's database.
        signatures: Surviving attribute signatures per record id.
        feature_ids: Features to compute, in output order.

    Raises:
        SignatureError: On an unknown feature id or a record outside the graph.
    """
    vertex = record.id if isinstance(record, Record) else record
    neighbours = graph.neighbours(vertex)

    values = []
    for feature_id in feature_ids:
        fn = FEATURES.get(feature_id)
        if fn is None:
            raise SignatureError(
                f"Unknown relational feature '{feature_id}' (expected one of {sorted(FEATURES)})"
            )
        values.append(fn(vertex, neighbours, graph, signatures))
    return RelationalSignature(tuple(feature_ids), tuple(values))
