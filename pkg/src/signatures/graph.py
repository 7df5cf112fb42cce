"""
Record Graph Module.

Undirected graph over the records of one database. Two records are
adjacent when, for at least one relationship set, every member of the
set is present in both and their transformed values are equal (for
example a shared phone number, or a shared last name and address).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
from loguru import logger

from src.model.records import Database, DatabaseError, normalize_value
from src.signatures.transforms import (
    SignatureError,
    TransformFn,
    apply_transform,
    get_transform,
    parse_member,
)

# Relationship groups larger than this are logged; they add a clique of edges.
LARGE_GROUP_WARNING = 1000


@dataclass(frozen=True)
class RecordGraph:
    """
    A frozen networkx graph whose vertices are the record ids of one database.

    Attributes:
        graph: Frozen ``networkx.Graph``; no self-loops, no multi-edges.
        relationships: Relationship sets the edges were built from.
    """

    graph: nx.Graph
    relationships: Tuple[Tuple[str, ...], ...] = ()

    def has_vertex(self, vertex: str) -> bool:
        return self.graph.has_node(vertex)

    def neighbours(self, vertex: str) -> FrozenSet[str]:
        """
        Adjacent vertices of ``vertex``.

        Raises:
            SignatureError: If the vertex is not in the graph.
        """
        if not self.graph.has_node(vertex):
            raise SignatureError(f"Record '{vertex}' is not a vertex of the record graph")
        return frozenset(self.graph.neighbors(vertex))

    @property
    def vertex_count(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()


def build_record_graph(
    database: Database,
    relationships: Sequence[Sequence[str]],
) -> RecordGraph:
    """
    Build the record graph of a database.

    Args:
        database: Records to connect; every record id becomes a vertex.
        relationships: Relationship sets; each member is ``attr`` or
            ``transform:attr``.

    Returns:
        The frozen RecordGraph. With no relationship sets every vertex is
        isolated.

    Raises:
        SignatureError: If a member names an unknown attribute or transform.
    """
    graph = nx.Graph()
    graph.add_nodes_from(database.ids)
    spec = tuple(tuple(s) for s in relationships)

    for relationship in spec:
        members = []
        for text in relationship:
            attribute, transform_id = parse_member(text)
            try:
                members.append((database.attribute_index(attribute), get_transform(transform_id)))
            except DatabaseError as e:
                raise SignatureError(str(e)) from e

        groups: Dict[Tuple[str, ...], List[str]] = {}
        for record in database:
            key = _relationship_key(record.values, members)
            if key is not None:
                groups.setdefault(key, []).append(record.id)

        for key, ids in groups.items():
            if len(ids) < 2:
                continue
            if len(ids) > LARGE_GROUP_WARNING:
                logger.warning(
                    f"[Graph] {len(ids)} records share {'+'.join(relationship)}={key}; "
                    f"adding {len(ids) * (len(ids) - 1) // 2} edges"
                )
            graph.add_edges_from(itertools.combinations(ids, 2))

    nx.freeze(graph)
    logger.info(
        f"[Graph] {database.name}: {graph.number_of_nodes()} vertices, "
        f"{graph.number_of_edges()} edges from {len(spec)} relationship set(s)"
    )
    return RecordGraph(graph, spec)


def _relationship_key(
    values: Sequence[Optional[str]], members: Sequence[Tuple[int, TransformFn]]
) -> Optional[Tuple[str, ...]]:
    key = []
    for index, fn in members:
        token = apply_transform(fn, normalize_value(values[index]))
        if token is None:
            return None
        key.append(token)
    return tuple(key)


def egonet_density(vertex: str, graph: RecordGraph) -> float:
    """
    Density of the vertex's egonet (the vertex, its neighbours and the edges among them).

    Isolated vertices have density 0.

    Raises:
        SignatureError: If the vertex is not in the graph.
    """
    if not graph.has_vertex(vertex):
        raise SignatureError(f"Record '{vertex}' is not a vertex of the record graph")
    return float(nx.density(nx.ego_graph(graph.graph, vertex, radius=1)))
