"""d-connection and d-separation in directed (possibly cyclic) graphs.

Two independent checkers live here. ``is_d_connected_oracle`` enumerates
acyclic undirected paths, including the choice of edge when both
orientations join a pair, and is the ground truth. ``is_d_connected_fast``
is a polynomial search over (vertex, arrival-direction) states.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from dcg.closure import build_closure
from dcg.errors import GraphError, OracleCapError
from dcg.graph import DirectedGraph, iter_bits

DEFAULT_MAX_ORACLE_N = 12

# Edge orientations along a path, read in the direction of travel.
FORWARD = "->"
BACKWARD = "<-"


def oracle_cap(default: int = DEFAULT_MAX_ORACLE_N) -> int:
    value = os.environ.get("DCG_MAX_ORACLE_N")
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise GraphError(f"DCG_MAX_ORACLE_N must be an integer, got {value!r}") from None


@dataclass(frozen=True, order=True)
class SeparationStatement:
    """The claim that ``x`` and ``y`` are d-separated given ``given``."""

    x: str
    y: str
    given: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "given", frozenset(self.given))
        if self.x == self.y:
            raise GraphError(f"statement endpoints coincide: {self.x!r}")
        if self.x in self.given or self.y in self.given:
            raise GraphError("conditioning set contains an endpoint")

    def canonical(self) -> SeparationStatement:
        if self.x <= self.y:
            return self
        return SeparationStatement(self.y, self.x, self.given)

    def sort_key(self):
        return (self.x, self.y, len(self.given), sorted(self.given))

    def __str__(self):
        return f"{self.x} _||_ {self.y} | {{{', '.join(sorted(self.given))}}}"


@dataclass(frozen=True)
class DConnectingWitness:
    """An acyclic path together with the edge used between each consecutive pair.

    ``edge_choices[k]`` is ``"->"`` when the path uses
    ``vertex_sequence[k] -> vertex_sequence[k+1]`` and ``"<-"`` for the
    opposite edge.
    """

    vertex_sequence: tuple[str, ...]
    edge_choices: tuple[str, ...]

    def __str__(self):
        parts = [self.vertex_sequence[0]]
        for arrow, v in zip(self.edge_choices, self.vertex_sequence[1:]):
            parts += [arrow, v]
        return " ".join(parts)

    def colliders(self) -> list[str]:
        seq, ch = self.vertex_sequence, self.edge_choices
        return [
            seq[k]
            for k in range(1, len(seq) - 1)
            if ch[k - 1] == FORWARD and ch[k] == BACKWARD
        ]


def _resolve(g: DirectedGraph, s: SeparationStatement) -> tuple[int, int, int]:
    x, y = g.idx(s.x), g.idx(s.y)
    z = 0
    for v in s.given:
        z |= 1 << g.idx(v)
    return x, y, z


def _has_descendant_in(g: DirectedGraph, z: int) -> int:
    """Mask of vertices with a (reflexive) descendant in ``z``: An(z)."""
    seen = z
    stack = list(iter_bits(z))
    while stack:
        v = stack.pop()
        new = g.pa[v] & ~seen
        seen |= new
        stack.extend(iter_bits(new))
    return seen


def is_d_connected_oracle(g: DirectedGraph, s: SeparationStatement) -> DConnectingWitness | None:
    """Search every acyclic path from ``s.x`` to ``s.y`` for a d-connecting one.

    A path is enumerated as a sequence of distinct vertices plus an edge choice
    between each consecutive pair. An intermediate vertex that lies in the
    conditioning set must be a collider on the path, and every collider must
    have a descendant (possibly itself) in the conditioning set. Returns the
    first d-connecting path found, or ``None`` when ``x`` and ``y`` are
    d-separated.
    """
    x, y, z = _resolve(g, s)
    closure = build_closure(g)
    names = g.vertices

    def collider_ok(v: int) -> bool:
        return bool((closure.reach[v] | 1 << v) & z)

    path = [x]
    arrows: list[str] = []

    def extend(v: int, visited: int):
        # v is the current path end; arrows[-1] is the edge used to reach it.
        for w in iter_bits(g.adj_mask(v) & ~visited):
            choices = []
            if g.ch[v] >> w & 1:
                choices.append(FORWARD)
            if g.pa[v] >> w & 1:
                choices.append(BACKWARD)
            for arrow in choices:
                if arrows:
                    collider = arrows[-1] == FORWARD and arrow == BACKWARD
                    if collider:
                        if not collider_ok(v):
                            continue
                    elif z >> v & 1:
                        continue
                path.append(w)
                arrows.append(arrow)
                if w == y:
                    found = DConnectingWitness(
                        tuple(names[i] for i in path), tuple(arrows)
                    )
                else:
                    found = extend(w, visited | 1 << w)
                path.pop()
                arrows.pop()
                if found is not None:
                    return found
        return None

    # y is excluded from the interior of every path by visiting it last.
    return extend(x, 1 << x)


def is_d_connected_fast(g: DirectedGraph, s: SeparationStatement) -> bool:
    """Reachability over (vertex, arrived-via-arrowhead) states.

    Traversal moves along edges in either direction. Passing through a vertex
    where both used edges point into it requires the vertex to have a
    descendant in the conditioning set; passing through any other way
    requires the vertex to be outside it. O(|V| + |E|) after computing the
    ancestors of the conditioning set.
    """
    x, y, z = _resolve(g, s)
    anc_z = _has_descendant_in(g, z)
    # into=True: arrived along an edge pointing into the vertex.
    seen_into = 0
    seen_out = 0
    queue: deque[tuple[int, bool]] = deque()

    def push(v: int, into: bool):
        nonlocal seen_into, seen_out
        if into:
            if not seen_into >> v & 1:
                seen_into |= 1 << v
                queue.append((v, True))
        elif not seen_out >> v & 1:
            seen_out |= 1 << v
            queue.append((v, False))

    for w in iter_bits(g.ch[x]):
        push(w, True)
    for w in iter_bits(g.pa[x]):
        push(w, False)
    while queue:
        v, into = queue.popleft()
        if v == y:
            return True
        if v == x:
            continue
        blocked_as_noncollider = bool(z >> v & 1)
        if into and anc_z >> v & 1:
            # continue as collider: leave against an edge pointing into v
            for w in iter_bits(g.pa[v]):
                push(w, False)
        if not blocked_as_noncollider:
            for w in iter_bits(g.ch[v]):
                push(w, True)
            if not into:
                for w in iter_bits(g.pa[v]):
                    push(w, False)
    return False


def all_separations(
    g: DirectedGraph, max_n: int | None = None, method: str = "oracle"
) -> frozenset[SeparationStatement]:
    """Every pairwise d-separation statement that holds in ``g``.

    Statements are canonical (``x < y``). Refuses graphs with more than
    ``max_n`` vertices (default: ``DCG_MAX_ORACLE_N`` or 12).
    """
    cap = oracle_cap() if max_n is None else max_n
    n = len(g.vertices)
    if n > cap:
        raise OracleCapError(
            f"all_separations enumerates 2^(n-2) conditioning sets per pair; "
            f"graph has {n} vertices, cap is {cap}"
        )
    if method == "oracle":
        connected = lambda st: is_d_connected_oracle(g, st) is not None  # noqa: E731
    elif method == "fast":
        connected = lambda st: is_d_connected_fast(g, st)  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}")
    out = set()
    for st in _statements(g.vertices):
        if not connected(st):
            out.add(st)
    return frozenset(out)


def _statements(vertices: Iterable[str]):
    vs = sorted(vertices)
    for a, b in itertools.combinations(vs, 2):
        rest = [v for v in vs if v != a and v != b]
        for r in range(len(rest) + 1):
            for given in itertools.combinations(rest, r):
                yield SeparationStatement(a, b, frozenset(given))

