"""Finite undirected graphs and the cycle / string families."""

from __future__ import annotations

from typing import Iterable


class Graph:
    """Undirected graph on vertices 1..vertex_count; loops allowed.

    Immutable after construction.  Edges are normalized pairs (a, b)
    with a <= b; a loop at v is the pair (v, v).
    """

    __slots__ = ("vertex_count", "edges", "_neighbors")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        norm = set()
        for a, b in edges:
            if not (1 <= a <= vertex_count and 1 <= b <= vertex_count):
                raise ValueError(f"edge ({a},{b}) out of range 1..{vertex_count}")
            norm.add((a, b) if a <= b else (b, a))
        self.vertex_count = vertex_count
        self.edges = frozenset(norm)
        nbrs = [set() for _ in range(vertex_count + 1)]
        for a, b in norm:
            nbrs[a].add(b)
            nbrs[b].add(a)
        self._neighbors = tuple(frozenset(s) for s in nbrs)

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._neighbors[v]

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a <= b else (b, a)) in self.edges

    def degree(self, v: int) -> int:
        return len(self._neighbors[v])

    def neighbor_masks(self) -> tuple[int, ...]:
        """Adjacency as bitmasks: bit k-1 of entry v is set iff k ~ v.

        Entry 0 is unused (vertices are 1-based).
        """
        masks = [0] * (self.vertex_count + 1)
        for a, b in self.edges:
            masks[a] |= 1 << (b - 1)
            masks[b] |= 1 << (a - 1)
        return tuple(masks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertex_count, self.edges) == (other.vertex_count, other.edges)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {sorted(self.edges)})"


def cycle(n: int) -> Graph:
    """The cycle C_n on vertices 1..n. Rejects n < 3 (C_2 degenerates)."""
    if n < 3:
        raise ValueError("cycle graph needs n >= 3; use path(2) for a single edge")
    return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    """The string L_n on vertices 1..n: n-1 edges, no branching."""
    if n < 2:
        raise ValueError("path graph needs n >= 2")
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def twins(g: Graph) -> set[tuple[int, int]]:
    """All pairs u < v of distinct vertices with identical neighbor sets."""
    found = set()
    for u in g.vertices():
        nu = g.neighbors(u)
        for v in range(u + 1, g.vertex_count + 1):
            if nu == g.neighbors(v):
                found.add((u, v))
    return found


def delete_vertex(g: Graph, v: int) -> tuple[Graph, dict[int, int]]:
    """Remove vertex v, relabeling the rest to 1..n-1 order-preservingly.

    Returns the reduced graph and the old-label -> new-label map.
    """
    if not 1 <= v <= g.vertex_count:
        raise ValueError(f"vertex {v} not in graph")
    if g.vertex_count == 1:
        raise ValueError("cannot delete the last vertex")
    relabel = {}
    new = 0
    for old in g.vertices():
        if old != v:
            new += 1
            relabel[old] = new
    edges = [
        (relabel[a], relabel[b]) for a, b in g.edges if a != v and b != v
    ]
    return Graph(g.vertex_count - 1, edges), relabel
