"""Reduction from Clique to target set selection with all thresholds equal to two.

The reduced instance is the vertex-edge incidence split of the input graph:
one vertex per original vertex, one per original edge, adjacent iff incident.
With every threshold two and budget k, activating k + C(k, 2) vertices is
possible exactly when the input has a k-clique (the clique's vertex side
activates all its edge vertices in one round).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .instance import Graph, Instance

VertexOrigin = Union[tuple[str, int], tuple[str, tuple[int, int]]]


@dataclass(frozen=True)
class ReductionOutput:
    """Reduced instance plus the query and the provenance of each new vertex.

    The query (k, l) is stored here even when l exceeds the vertex count
    (such instances are simply infeasible); instance.query is set only when
    the pair is in range.
    """

    instance: Instance
    k: int
    l: int
    vertex_origin: tuple[VertexOrigin, ...]


def reduce_clique_to_tss(g: Graph, k: int) -> ReductionOutput:
    """Build the incidence-split instance asking for k + C(k,2) activations with budget k.

    Vertex side keeps the input ids 0..n-1; edge vertices follow in ascending
    (u, v) order. The output graph is bipartite and all thresholds are two.
    k may exceed n and l may exceed the output size; the reduction stays total.
    """
    if k < 1:
        raise ValueError("clique size must be at least 1")
    edges_in = g.edges()
    n, m = g.n, len(edges_in)
    split_edges: list[tuple[int, int]] = []
    for j, (u, v) in enumerate(edges_in):
        split_edges.append((u, n + j))
        split_edges.append((v, n + j))
    graph = Graph(n + m, split_edges)
    l = k + k * (k - 1) // 2
    query = (k, l) if k <= graph.n and l <= graph.n else None
    instance = Instance(graph, (2,) * graph.n, query)
    origin: tuple[VertexOrigin, ...] = tuple(
        ("vertex", u) for u in range(n)
    ) + tuple(("edge", e) for e in edges_in)
    return ReductionOutput(instance, k, l, origin)
