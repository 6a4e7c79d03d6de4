"""Definitional oracles written at the level of vertex names.

Nothing here uses the bitmask machinery of the package, so these functions
check the library rather than restate it.
"""

import itertools
from collections import deque

from dcg.graph import DirectedGraph


def reach_bfs(g: DirectedGraph) -> set[tuple[str, str]]:
    """Pairs (u, v) joined by a directed path of at least one edge."""
    succ = {v: [h for t, h in g.edges if t == v] for v in g.vertices}
    pairs = set()
    for u in g.vertices:
        queue = deque(succ[u])
        seen = set()
        while queue:
            v = queue.popleft()
            if v in seen:
                continue
            seen.add(v)
            queue.extend(succ[v])
        pairs |= {(u, v) for v in seen}
    return pairs


def reach_squaring(g: DirectedGraph) -> set[tuple[str, str]]:
    rel = set(g.edges)
    while True:
        composed = {(a, d) for a, b in rel for c, d in rel if b == c}
        bigger = rel | composed
        if bigger == rel:
            return rel
        rel = bigger


class Definitions:
    """Ancestry, adjacency and triple kinds read straight off the definitions."""

    def __init__(self, g: DirectedGraph):
        self.g = g
        self.reach = reach_bfs(g)

    def anc(self, u, v):
        return u == v or (u, v) in self.reach

    def really_adjacent(self, a, b):
        return self.g.has_edge(a, b) or self.g.has_edge(b, a)

    def virtually_adjacent(self, a, b):
        return any(
            self.g.has_edge(a, c) and self.g.has_edge(b, c) and (self.anc(c, a) or self.anc(c, b))
            for c in self.g.vertices
        )

    def adjacent(self, a, b):
        return a != b and (self.really_adjacent(a, b) or self.virtually_adjacent(a, b))

    def unshielded(self, a, b, c):
        return (
            len({a, b, c}) == 3
            and self.adjacent(a, b)
            and self.adjacent(b, c)
            and not self.adjacent(a, c)
        )

    def triple_kind(self, a, b, c):
        if not self.unshielded(a, b, c):
            return None
        if self.anc(b, a) or self.anc(b, c):
            return "conductor"
        common = [d for d in self.g.vertices if self.g.has_edge(a, d) and self.g.has_edge(c, d)]
        if any(self.anc(d, b) for d in common):
            return "perfect"
        return "imperfect"

    def triples(self, kind):
        out = set()
        for a, b, c in itertools.permutations(self.g.vertices, 3):
            if a < c and self.triple_kind(a, b, c) == kind:
                out.add((a, b, c))
        return out

    def hadj(self):
        return {(a, b) for a, b in itertools.combinations(self.g.vertices, 2) if self.adjacent(a, b)}


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)
