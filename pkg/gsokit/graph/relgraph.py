"""Finite relation and graph algebra.

All relations of the theory are carried by finite directed graphs without
self-loops. Undirected graphs are treated as the special case of a
directed graph whose edge set is symmetric. Values are immutable and every
operation here is a pure function of its arguments.

Node ids are strings; their string order is the canonical order used for
every serialisation.

Closures are computed on a boolean adjacency matrix with ``numpy``;
acyclicity and the transitive reduction of a DAG come from ``networkx``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from gsokit.errors import CyclicInput, EmptyFamily, MalformedGraph, VertexMismatch

NodeId = str
Edge = Tuple[NodeId, NodeId]


@dataclass(frozen=True, eq=False)
class Digraph:
    """A finite directed graph without self-loops.

    Args:
        vertices: The vertex set.
        edges: Ordered pairs of vertices; never ``(v, v)``.
    """

    vertices: FrozenSet[NodeId]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if u == v:
                raise MalformedGraph(f"self-loop on {u!r}")
            if u not in self.vertices or v not in self.vertices:
                raise MalformedGraph(f"edge ({u!r}, {v!r}) has an endpoint outside the vertex set")

    @classmethod
    def build(cls, edges: Iterable[Edge] = (), vertices: Iterable[NodeId] = ()) -> "Digraph":
        """Build a graph whose vertex set also covers every edge endpoint."""
        edges = frozenset((u, v) for u, v in edges)
        nodes = set(vertices)
        for u, v in edges:
            nodes.add(u)
            nodes.add(v)
        return cls(frozenset(nodes), edges)

    def sorted_vertices(self) -> List[NodeId]:
        return sorted(self.vertices)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return (u, v) in self.edges

    def successors(self, u: NodeId) -> FrozenSet[NodeId]:
        return frozenset(w for v, w in self.edges if v == u)

    def is_symmetric(self) -> bool:
        return all((v, u) in self.edges for u, v in self.edges)

    def undirected_pairs(self) -> List[Edge]:
        """Edges ``(u, v)`` with ``u < v`` whose reverse is also present."""
        return sorted((u, v) for u, v in self.edges if u < v and (v, u) in self.edges)

    def with_vertices(self, vertices: Iterable[NodeId]) -> "Digraph":
        return Digraph(frozenset(vertices), self.edges)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.sorted_vertices())
        graph.add_edges_from(self.sorted_edges())
        return graph

    def __eq__(self, other: object) -> bool:
        # UGraph and Digraph compare by content
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __len__(self) -> int:
        return len(self.edges)


class UGraph(Digraph):
    """A digraph whose edge set is symmetric."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_symmetric():
            u, v = next((u, v) for u, v in sorted(self.edges) if (v, u) not in self.edges)
            raise MalformedGraph(f"edge ({u!r}, {v!r}) has no reverse in an undirected graph")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Edge], vertices: Iterable[NodeId] = ()) -> "UGraph":
        """Build an undirected graph from unordered pairs given in either direction."""
        edges = set()
        for u, v in pairs:
            edges.add((u, v))
            edges.add((v, u))
        base = Digraph.build(edges, vertices)
        return cls(base.vertices, base.edges)


def adjacency_matrix(g: Digraph) -> Tuple[List[NodeId], np.ndarray]:
    """Return the canonical vertex order and the boolean adjacency matrix of ``g``."""
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    matrix = np.zeros((len(order), len(order)), dtype=bool)
    for u, v in g.edges:
        matrix[index[u], index[v]] = True
    return order, matrix


def from_matrix(order: List[NodeId], matrix: np.ndarray) -> Digraph:
    """Inverse of :func:`adjacency_matrix`; the diagonal is ignored."""
    rows, cols = np.nonzero(matrix)
    edges = {(order[i], order[j]) for i, j in zip(rows.tolist(), cols.tolist()) if i != j}
    return Digraph(frozenset(order), frozenset(edges))


def complete(vertices: Iterable[NodeId]) -> UGraph:
    """The complete graph without self-loops on ``vertices``."""
    vertices = frozenset(vertices)
    return UGraph(vertices, frozenset(permutations(vertices, 2)))


def _reach(g: Digraph) -> Tuple[List[NodeId], np.ndarray]:
    # Warshall on the boolean matrix; the diagonal marks vertices on a cycle.
    order, reach = adjacency_matrix(g)
    for k in range(len(order)):
        reach |= np.outer(reach[:, k], reach[k, :])
    return order, reach


def transitive_closure(g: Digraph) -> Digraph:
    """Return the transitive closure of ``g`` with self-loops removed.

    Args:
        g: Any digraph.

    Returns:
        A graph on the same vertices with an edge ``(v, w)`` iff ``g`` has a
        nonempty directed path from ``v`` to ``w`` and ``v != w``.
    """
    order, reach = _reach(g)
    return from_matrix(order, reach)


def is_acyclic(g: Digraph) -> bool:
    return nx.is_directed_acyclic_graph(g.to_networkx())


def is_transitive(g: Digraph) -> bool:
    """True iff ``g`` equals its transitive closure minus self-loops.

    A pure two-cycle counts as transitive: its closure only adds self-loops.
    """
    return transitive_closure(g).edges == g.edges


def transitive_reduction(g: Digraph) -> Digraph:
    """Return the unique minimal graph with the same closure as the DAG ``g``.

    Raises:
        CyclicInput: If ``g`` has a directed cycle.
    """
    graph = g.to_networkx()
    if not nx.is_directed_acyclic_graph(graph):
        raise CyclicInput("transitive reduction is only unique on acyclic graphs")
    reduced = nx.transitive_reduction(graph)
    return Digraph(g.vertices, frozenset(reduced.edges()))


def comparability(g: Digraph) -> UGraph:
    """Pairs related by ``g`` in at least one direction, as an undirected graph."""
    edges = set(g.edges)
    edges.update((v, u) for u, v in g.edges)
    return UGraph(g.vertices, frozenset(edges))


def incomparability(g: Digraph) -> UGraph:
    """Distinct pairs related by ``g`` in neither direction."""
    related = comparability(g).edges
    edges = {(u, v) for u, v in permutations(g.vertices, 2) if (u, v) not in related}
    return UGraph(g.vertices, frozenset(edges))


def complement(g: Digraph) -> Digraph:
    """Distinct ordered pairs that are not edges of ``g``."""
    edges = {(u, v) for u, v in permutations(g.vertices, 2) if (u, v) not in g.edges}
    if g.is_symmetric():
        return UGraph(g.vertices, frozenset(edges))
    return Digraph(g.vertices, frozenset(edges))


def _same_vertices(g: Digraph, h: Digraph) -> None:
    if g.vertices != h.vertices:
        missing = sorted(g.vertices ^ h.vertices)
        raise VertexMismatch(f"vertex sets differ on {missing}")


def union(g: Digraph, h: Digraph) -> Digraph:
    _same_vertices(g, h)
    return Digraph(g.vertices, g.edges | h.edges)


def intersection(g: Digraph, h: Digraph) -> Digraph:
    _same_vertices(g, h)
    return Digraph(g.vertices, g.edges & h.edges)


def difference(g: Digraph, h: Digraph) -> Digraph:
    _same_vertices(g, h)
    return Digraph(g.vertices, g.edges - h.edges)


def sym(g: Digraph) -> UGraph:
    """The smallest symmetric supergraph of ``g``."""
    return comparability(g)


def intersect_all(graphs: Iterable[Digraph], vertices: Optional[Iterable[NodeId]] = None) -> Digraph:
    """Intersect a family of graphs; the empty family gives the complete graph.

    Args:
        graphs: Graphs on a common vertex set.
        vertices: Vertex set used when ``graphs`` is empty.

    Raises:
        EmptyFamily: If ``graphs`` is empty and no ``vertices`` are given.
    """
    graphs = list(graphs)
    if not graphs:
        if vertices is None:
            raise EmptyFamily("vertices are required to intersect an empty family")
        return complete(vertices)
    result = graphs[0]
    for g in graphs[1:]:
        result = intersection(result, g)
    return result


def forbidden_triangles(solid: Digraph, dashed: Digraph) -> List[Tuple[NodeId, NodeId, NodeId]]:
    """List the triangles excluded from a decomposition.

    Pattern A is ``solid(u,v), dashed(v,w), dashed(u,w)`` and pattern B is
    ``dashed(u,v), solid(v,w), dashed(u,w)``. The result is sorted; an empty
    list means no triangle of either form exists.
    """
    _same_vertices(solid, dashed)
    found = set()
    for u, w in dashed.edges:
        for v in solid.vertices:
            if v in (u, w):
                continue
            if (u, v) in solid.edges and (v, w) in dashed.edges:
                found.add((u, v, w))
            elif (u, v) in dashed.edges and (v, w) in solid.edges:
                found.add((u, v, w))
    return sorted(found)
