"""Graphviz DOT emission.

Output is deterministic: vertices and edges are written in canonical id
order. A directed drawing can carry a *base* graph drawn with solid edges
and a *residual* overlay drawn dashed, the way the not-later-than relation
is usually pictured on top of its earlier-than part. To render the text,
save it and run ``dot -Tpng graph.dot > graph.png``.
"""
from __future__ import annotations

from typing import List, Optional

from gsokit.graph.relgraph import Digraph


def _node(v: str) -> str:
    return '"{}"'.format(v.replace('"', '\\"'))


def to_dot(base: Digraph, residual: Optional[Digraph] = None, name: str = "G") -> str:
    """Render a directed graph with an optional dashed overlay.

    Args:
        base: Edges drawn solid.
        residual: Edges drawn dashed; edges also in ``base`` are drawn once, solid.
        name: Graph name.

    Returns:
        The DOT text, newline terminated.
    """
    vertices = set(base.vertices)
    if residual is not None:
        vertices |= residual.vertices
    lines: List[str] = [f"digraph {_node(name)} {{"]
    append = lines.append
    for v in sorted(vertices):
        append(f"  {_node(v)};")
    for u, v in base.sorted_edges():
        append(f"  {_node(u)} -> {_node(v)};")
    if residual is not None:
        for u, v in residual.sorted_edges():
            if (u, v) not in base.edges:
                append(f"  {_node(u)} -> {_node(v)} [style=dashed];")
    append("}")
    return "\n".join(lines) + "\n"


def to_undirected_dot(graph: Digraph, name: str = "G") -> str:
    """Render the symmetric pairs of ``graph`` as an undirected DOT graph."""
    lines: List[str] = [f"graph {_node(name)} {{"]
    for v in graph.sorted_vertices():
        lines.append(f"  {_node(v)};")
    for u, v in graph.undirected_pairs():
        lines.append(f"  {_node(u)} -- {_node(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
