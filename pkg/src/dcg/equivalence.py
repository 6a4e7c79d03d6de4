"""Decision procedures for Markov equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from dcg.dsep import all_separations
from dcg.errors import GraphError
from dcg.features import FeatureSet, analyze, classify
from dcg.graph import DirectedGraph, is_acyclic

CONDITION_NAMES = (
    "same vertices",
    "same adjacencies",
    "same unshielded conductors",
    "same unshielded perfect non-conductors",
    "same m.e. unshielded conductors",
    "same ancestor relations among imperfect non-conductor middles",
    "same ancestor relations from m.e. conductors to imperfect non-conductors",
)


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    failing_condition: int | None = None
    # features present in exactly one graph: (only in first, only in second)
    witness: tuple[Any, Any] | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"equivalent": self.equivalent}
        if self.failing_condition is not None:
            out["failing_condition"] = self.failing_condition
            out["condition"] = CONDITION_NAMES[self.failing_condition]
            out["only_in_first"] = _sorted_list(self.witness[0])
            out["only_in_second"] = _sorted_list(self.witness[1])
        return out


def _sorted_list(items):
    return [list(x) if isinstance(x, tuple) else x for x in sorted(items)]


def _as_set(component):
    edges = getattr(component, "edges", None)
    return set(edges) if edges is not None else set(component)


def compare_features(f1: FeatureSet, f2: FeatureSet) -> EquivalenceVerdict:
    for k in range(len(FeatureSet.COMPONENTS)):
        a, b = _as_set(f1.component(k)), _as_set(f2.component(k))
        if a != b:
            return EquivalenceVerdict(False, k, (frozenset(a - b), frozenset(b - a)))
    return EquivalenceVerdict(True)


def markov_equivalent(g1: DirectedGraph, g2: DirectedGraph) -> EquivalenceVerdict:
    if set(g1.vertices) != set(g2.vertices):
        a, b = set(g1.vertices), set(g2.vertices)
        return EquivalenceVerdict(False, 0, (frozenset(a - b), frozenset(b - a)))
    return compare_features(classify(g1), classify(g2))


def oracle_equivalent(g1: DirectedGraph, g2: DirectedGraph, max_n: int | None = None) -> bool:
    """Compare the full sets of d-separation statements. Exponential."""
    if g1.vertices != g2.vertices:
        return False
    return all_separations(g1, max_n) == all_separations(g2, max_n)


def unshielded_colliders(g: DirectedGraph) -> frozenset[tuple[str, str, str]]:
    out = set()
    for b in g.vertices:
        pa = sorted(p for p, ch in g.edges if ch == b)
        for i, a in enumerate(pa):
            for c in pa[i + 1:]:
                if not (g.has_edge(a, c) or g.has_edge(c, a)):
                    out.add((a, b, c))
    return frozenset(out)


def verma_pearl_equivalent(g1: DirectedGraph, g2: DirectedGraph) -> bool:
    """Same vertices, same skeleton and same unshielded colliders (DAGs only)."""
    for g in (g1, g2):
        if not is_acyclic(g):
            raise GraphError("verma_pearl_equivalent requires acyclic graphs")
    return (
        g1.vertices == g2.vertices
        and g1.skeleton() == g2.skeleton()
        and unshielded_colliders(g1) == unshielded_colliders(g2)
    )


def proposition_one_conditions(g: DirectedGraph) -> bool:
    """No unshielded imperfect non-conductors and no m.e. conductor pairs.

    Necessary for a Markov equivalent DAG to exist but not sufficient: a
    directed cycle on four or more vertices without chords meets both
    conditions, yet no DAG has its separations.
    """
    result = analyze(g)
    return not result.imperfect_non_conductors and not result.features.me_conductors


def _dag_extension(
    vertices, edges, colliders
) -> DirectedGraph | None:
    """Dor-Tarsi: orient ``edges`` (sorted pairs) into a DAG whose unshielded
    colliders are exactly ``colliders``, or return ``None``."""
    directed: set[tuple[str, str]] = set()
    for a, b, c in colliders:
        directed.add((a, b))
        directed.add((c, b))
    if any((h, t) in directed for t, h in directed):
        return None
    undirected = {frozenset(e) for e in edges} - {frozenset(e) for e in directed}
    nbrs = {v: set() for v in vertices}
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)

    out_edges = set(directed)
    live = set(vertices)
    live_directed = set(directed)
    live_undirected = set(undirected)
    while live:
        for x in sorted(live):
            if any(t == x for t, _ in live_directed):
                continue
            und = [next(iter(e - {x})) for e in live_undirected if x in e]
            adj_x = {y for y in nbrs[x] if y in live}
            if all(adj_x - {y} <= nbrs[y] for y in und):
                break
        else:
            return None
        for y in und:
            out_edges.add((y, x))
        live.discard(x)
        live_directed = {e for e in live_directed if x not in e}
        live_undirected = {e for e in live_undirected if x not in e}
    dag = DirectedGraph(vertices, out_edges)
    found = {(a, b, c) if a < c else (c, b, a) for a, b, c in unshielded_colliders(dag)}
    want = {(a, b, c) if a < c else (c, b, a) for a, b, c in colliders}
    return dag if found == want else None


def acyclic_equivalent_exists(g: DirectedGraph) -> bool:
    """Whether some DAG on the same vertices has exactly the d-separations of ``g``.

    Requires no unshielded imperfect non-conductors, no m.e. conductor
    pairs, and an acyclic orientation of the adjacency graph whose
    unshielded colliders are exactly the perfect non-conductors.
    """
    result = analyze(g)
    f = result.features
    if result.imperfect_non_conductors or f.me_conductors:
        return False
    return _dag_extension(f.vertices, f.hadj.edges, f.perfect_non_conductors) is not None
