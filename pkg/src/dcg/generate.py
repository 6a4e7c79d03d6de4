"""Seeded random graphs and exhaustive graph enumeration."""

from __future__ import annotations

import itertools
import random
import string
from dataclasses import dataclass
from typing import Iterator, Sequence

from dcg.errors import GraphError
from dcg.graph import DirectedGraph, is_acyclic


def vertex_names(n: int) -> list[str]:
    """``A..Z`` for up to 26 vertices, zero-padded ``V00..`` beyond that."""
    if n <= 26:
        return list(string.ascii_uppercase[:n])
    width = len(str(n - 1))
    return [f"V{i:0{width}d}" for i in range(n)]


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    p: float
    seed: int = 0
    allow_two_cycles: bool = True

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise GraphError(f"n must be a positive integer, got {self.n!r}")
        if not 0.0 <= self.p <= 1.0:
            raise GraphError(f"p must lie in [0, 1], got {self.p!r}")
        if not 0 <= self.seed < 2**64:
            raise GraphError(f"seed must be a 64-bit unsigned value, got {self.seed!r}")


def generate_random(cfg: GeneratorConfig) -> DirectedGraph:
    """Include each ordered pair independently with probability ``cfg.p``.

    Without two-cycles, a pair drawn in both orientations keeps one of them
    by a fair coin from the same stream.
    """
    rng = random.Random(cfg.seed)
    names = vertex_names(cfg.n)
    edges = []
    for a, b in itertools.combinations(names, 2):
        fwd = rng.random() < cfg.p
        bwd = rng.random() < cfg.p
        if fwd and bwd and not cfg.allow_two_cycles:
            if rng.random() < 0.5:
                bwd = False
            else:
                fwd = False
        if fwd:
            edges.append((a, b))
        if bwd:
            edges.append((b, a))
    return DirectedGraph(names, edges)


def random_dag(rng: random.Random, n: int, p: float, names: Sequence[str] | None = None) -> DirectedGraph:
    names = list(names or vertex_names(n))
    order = names[:]
    rng.shuffle(order)
    edges = [(a, b) for i, a in enumerate(order) for b in order[i + 1:] if rng.random() < p]
    return DirectedGraph(names, edges)


def ordered_pairs(names: Sequence[str]) -> list[tuple[str, str]]:
    return [(a, b) for a in names for b in names if a != b]


def all_graphs(n: int) -> Iterator[DirectedGraph]:
    """All 2^(n(n-1)) directed graphs on ``n`` labelled vertices, by edge bitmask."""
    names = vertex_names(n)
    pairs = ordered_pairs(names)
    for mask in range(1 << len(pairs)):
        yield DirectedGraph(names, [p for k, p in enumerate(pairs) if mask >> k & 1])


def all_dags(n: int) -> Iterator[DirectedGraph]:
    for g in all_graphs(n):
        if is_acyclic(g):
            yield g
