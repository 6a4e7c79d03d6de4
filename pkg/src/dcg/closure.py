"""Directed-path reachability and the reflexive ancestor relation."""

from __future__ import annotations

from dataclasses import dataclass, field

from dcg.graph import DirectedGraph, iter_bits


@dataclass(frozen=True)
class AncestorClosure:
    """Transitive closure of a graph's edge relation.

    ``reach[i]`` is a bitmask of the vertices reachable from vertex ``i`` by a
    directed path with at least one edge, so bit ``i`` of ``reach[i]`` is set
    exactly when ``i`` lies on a directed cycle. Reflexivity is added only by
    the ancestor queries.
    """

    base: DirectedGraph
    reach: tuple[int, ...] = field(repr=False)

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.reach[u] >> v & 1)

    def mutual(self, i: int) -> int:
        """Vertices ``j`` with paths both ``i -> j`` and ``j -> i``."""
        return self.reach[i] & self.reached_by[i]

    @property
    def reached_by(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_reached_by")
        if cached is None:
            rows = [0] * len(self.reach)
            for u, row in enumerate(self.reach):
                for v in iter_bits(row):
                    rows[v] |= 1 << u
            cached = tuple(rows)
            object.__setattr__(self, "_reached_by", cached)
        return cached

    def pairs(self) -> frozenset[tuple[str, str]]:
        names = self.base.vertices
        return frozenset(
            (names[u], names[v]) for u, row in enumerate(self.reach) for v in iter_bits(row)
        )


def build_closure(g: DirectedGraph) -> AncestorClosure:
    """Warshall's algorithm on bitmask rows, O(n^2) word operations."""
    reach = list(g.ch)
    n = len(reach)
    for k in range(n):
        bit = 1 << k
        row_k = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= row_k
    return AncestorClosure(g, tuple(reach))


def is_ancestor(c: AncestorClosure, u: str, v: str) -> bool:
    """Reflexive: every vertex is its own ancestor."""
    i, j = c.base.idx(u), c.base.idx(v)
    return i == j or c.reaches(i, j)


def descendants(c: AncestorClosure, v: str) -> frozenset[str]:
    i = c.base.idx(v)
    return c.base.names(c.reach[i] | 1 << i)


def ancestors(c: AncestorClosure, v: str) -> frozenset[str]:
    i = c.base.idx(v)
    return c.base.names(c.reached_by[i] | 1 << i)
