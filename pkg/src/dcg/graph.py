"""Immutable directed and undirected graph values keyed by vertex name."""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from dcg.errors import GraphError

NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

Edge = tuple[str, str]


def _check_name(name) -> str:
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise GraphError(f"invalid vertex name {name!r}")
    return name


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class DirectedGraph:
    """A directed graph with no self-loops.

    Both ``(a, b)`` and ``(b, a)`` may be present. Vertices are kept in
    lexicographic order, which fixes the bit position used for each vertex
    in the mask-based helpers (``index``, ``pa``, ``ch``).

    >>> g = DirectedGraph("ABC", [("A", "B"), ("B", "C")])
    >>> sorted(g.edges)
    [('A', 'B'), ('B', 'C')]
    """

    __slots__ = ("vertices", "edges", "index", "pa", "ch", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge] = ()):
        names = [_check_name(v) for v in vertices]
        if len(set(names)) != len(names):
            dup = sorted({v for v in names if names.count(v) > 1})
            raise GraphError(f"duplicate vertex {dup[0]!r}")
        self.vertices: tuple[str, ...] = tuple(sorted(names))
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        edge_set = set()
        for edge in edges:
            tail, head = edge
            for end in (tail, head):
                if end not in self.index:
                    raise GraphError(f"edge {tail}->{head} names unknown vertex {end!r}")
            if tail == head:
                raise GraphError(f"self-loop on {tail!r}")
            edge_set.add((tail, head))
        self.edges: frozenset[Edge] = frozenset(edge_set)
        n = len(self.vertices)
        self.pa = [0] * n
        self.ch = [0] * n
        for tail, head in self.edges:
            t, h = self.index[tail], self.index[head]
            self.ch[t] |= 1 << h
            self.pa[h] |= 1 << t
        self._hash = hash((self.vertices, self.edges))

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("DirectedGraph is immutable")
        object.__setattr__(self, name, value)

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        edges = ", ".join(f"{t}->{h}" for t, h in self.sorted_edges())
        return f"DirectedGraph([{', '.join(self.vertices)}], [{edges}])"

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, vertex):
        return vertex in self.index

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, tail: str, head: str) -> bool:
        return (tail, head) in self.edges

    def idx(self, vertex: str) -> int:
        try:
            return self.index[vertex]
        except KeyError:
            raise GraphError(f"unknown vertex {vertex!r}") from None

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in iter_bits(mask))

    def adj_mask(self, i: int) -> int:
        """Vertices joined to vertex ``i`` by an edge in either direction."""
        return self.pa[i] | self.ch[i]

    def skeleton(self) -> frozenset[Edge]:
        return frozenset(tuple(sorted(e)) for e in self.edges)

    def reverse(self) -> DirectedGraph:
        return DirectedGraph(self.vertices, [(h, t) for t, h in self.edges])


def parents(g: DirectedGraph, v: str) -> frozenset[str]:
    return g.names(g.pa[g.idx(v)])


def children(g: DirectedGraph, v: str) -> frozenset[str]:
    return g.names(g.ch[g.idx(v)])


def topological_order(g: DirectedGraph) -> list[str] | None:
    """Kahn's algorithm; ``None`` when the graph has a directed cycle."""
    indeg = [bin(m).count("1") for m in g.pa]
    ready = [i for i, d in enumerate(indeg) if d == 0]
    order = []
    while ready:
        i = ready.pop()
        order.append(g.vertices[i])
        for j in iter_bits(g.ch[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(order) != len(g.vertices):
        return None
    return order


def is_acyclic(g: DirectedGraph) -> bool:
    return topological_order(g) is not None


class UndirectedGraph:
    """Undirected simple graph; each edge stored as a name-sorted pair."""

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge] = ()):
        self.vertices: tuple[str, ...] = tuple(sorted(vertices))
        known = set(self.vertices)
        pairs = set()
        for a, b in edges:
            if a == b:
                raise GraphError(f"self-loop on {a!r}")
            if a not in known or b not in known:
                raise GraphError(f"edge {a}-{b} names unknown vertex")
            pairs.add((a, b) if a < b else (b, a))
        self.edges: frozenset[Edge] = frozenset(pairs)

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        edges = ", ".join(f"{a}-{b}" for a, b in sorted(self.edges))
        return f"UndirectedGraph([{', '.join(self.vertices)}], [{edges}])"

    def adjacent(self, a: str, b: str) -> bool:
        return ((a, b) if a < b else (b, a)) in self.edges

    def neighbors(self, v: str) -> frozenset[str]:
        return frozenset(b if a == v else a for a, b in self.edges if v in (a, b))
