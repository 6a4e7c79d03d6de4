"""Feature extraction for deciding Markov equivalence of directed cyclic graphs.

``classify`` runs the classification pipeline:

A. transitive closure of the graph (``closure.build_closure``);
B. the adjacency graph of real and virtual adjacencies (``build_hadj``);
C. unshielded conductors;
D. unshielded perfect non-conductors;
E. mutually exclusive conductor pairs, found by a path search over mutual
   ancestors that avoids the neighbourhoods of the end vertices;
F. ancestor pairs among middles of imperfect non-conductors sharing endpoints;
G. ancestor pairs between m.e. conductor middles and imperfect non-conductor
   middles.

Internally vertices are integer positions in ``g.vertices`` and vertex sets
are bitmasks. The public functions translate results back to names.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from dcg.closure import AncestorClosure, build_closure
from dcg.errors import OracleCapError
from dcg.graph import DirectedGraph, UndirectedGraph, iter_bits

DEFAULT_MAX_ITINERARY_N = 8


class Triple(NamedTuple):
    a: str
    b: str
    c: str

    def canonical(self) -> Triple:
        return self if self.a <= self.c else Triple(self.c, self.b, self.a)


class Sextuple(NamedTuple):
    a: str
    b: str
    c: str
    d: str
    e: str
    f: str

    def canonical(self) -> Sextuple:
        rev = Sextuple(*reversed(self))
        return min(self, rev)


@dataclass(frozen=True)
class AdjacencyStructure:
    """The adjacency graph with each edge tagged ``"real"`` or ``"virtual"``."""

    graph: UndirectedGraph
    kind: dict[tuple[str, str], str] = field(compare=False)
    masks: tuple[int, ...] = field(repr=False, compare=False)

    def virtual_edges(self) -> frozenset[tuple[str, str]]:
        return frozenset(e for e, k in self.kind.items() if k == "virtual")


@dataclass(frozen=True)
class FeatureSet:
    """Everything two graphs must share to be Markov equivalent.

    Equality compares the seven components; ``virtual_edges`` is carried for
    reporting only. The closure is not part of the features because
    equivalent graphs need not share it.
    """

    vertices: tuple[str, ...]
    hadj: UndirectedGraph
    conductors: frozenset[Triple]
    perfect_non_conductors: frozenset[Triple]
    me_conductors: frozenset[Sextuple]
    imperfect_ancestors: frozenset[tuple[str, str]]
    me_imperfect_ancestors: frozenset[tuple[str, str]]
    virtual_edges: frozenset[tuple[str, str]] = field(default=frozenset(), compare=False)

    COMPONENTS = (
        "vertices",
        "hadj",
        "conductors",
        "perfect_non_conductors",
        "me_conductors",
        "imperfect_ancestors",
        "me_imperfect_ancestors",
    )

    def component(self, index: int):
        return getattr(self, self.COMPONENTS[index])

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "hadj": [list(e) for e in sorted(self.hadj.edges)],
            "virtual_edges": [list(e) for e in sorted(self.virtual_edges)],
            "conductors": [list(t) for t in sorted(self.conductors)],
            "perfect_non_conductors": [list(t) for t in sorted(self.perfect_non_conductors)],
            "me_conductors": [list(s) for s in sorted(self.me_conductors)],
            "imperfect_ancestors": [list(p) for p in sorted(self.imperfect_ancestors)],
            "me_imperfect_ancestors": [list(p) for p in sorted(self.me_imperfect_ancestors)],
        }


# --- step B -----------------------------------------------------------------


def _hadj_masks(g: DirectedGraph, c: AncestorClosure) -> list[int]:
    n = len(g.vertices)
    adj = [g.adj_mask(i) for i in range(n)]
    for child in range(n):
        pa = g.pa[child]
        # parents that the common child leads back to
        back = pa & c.reach[child]
        if not back:
            continue
        for a in iter_bits(pa):
            partners = pa if back >> a & 1 else back
            adj[a] |= partners & ~(1 << a)
    return adj


def build_hadj(g: DirectedGraph, c: AncestorClosure | None = None) -> AdjacencyStructure:
    """Join two vertices when an edge connects them, or when they have a
    common child from which a directed path returns to one of them."""
    if c is None:
        c = build_closure(g)
    masks = _hadj_masks(g, c)
    names = g.vertices
    kind = {}
    for i, row in enumerate(masks):
        real = g.adj_mask(i)
        for j in iter_bits(row >> (i + 1) << (i + 1)):
            kind[(names[i], names[j])] = "real" if real >> j & 1 else "virtual"
    return AdjacencyStructure(UndirectedGraph(names, kind), kind, tuple(masks))


# --- steps C, D and the imperfect remainder --------------------------------


@dataclass
class _Triples:
    """Ordered unshielded triples, split by kind; both orientations present."""

    conductors: set[tuple[int, int, int]]
    perfect: set[tuple[int, int, int]]
    imperfect: set[tuple[int, int, int]]


def _classify_triples(g: DirectedGraph, c: AncestorClosure, hadj) -> _Triples:
    conductors, perfect, imperfect = set(), set(), set()
    reach, reached_by = c.reach, c.reached_by
    for b in range(len(g.vertices)):
        nbrs = list(iter_bits(hadj[b]))
        for a in nbrs:
            for cc in nbrs:
                if cc == a or hadj[a] >> cc & 1:
                    continue
                t = (a, b, cc)
                if reach[b] & (1 << a | 1 << cc):
                    conductors.add(t)
                elif g.ch[a] & g.ch[cc] & (reached_by[b] | 1 << b):
                    perfect.add(t)
                else:
                    imperfect.add(t)
    return _Triples(conductors, perfect, imperfect)


# --- step E -----------------------------------------------------------------


def _step_e_candidates(c: AncestorClosure, hadj, conductors):
    """Ordered pairs of conductors passing the cheap sextuple filters.

    Yields ``(a, b, cc, d, e, f)`` with ``<a,b,cc>`` and ``<d,e,f>`` ordered
    conductors, ``cc != f``, ``b != e``, ``b`` not reaching ``a``, ``e`` not
    reaching ``f``, ``a``-``f`` non-adjacent, and ``b``-``e`` non-adjacent
    unless ``b == d`` and ``cc == e``. Pairs whose ``b`` and ``e`` do not
    share a cycle are skipped: both tests below need a path of mutual
    ancestors between them.
    """
    reach = c.reach
    heads: dict[tuple[int, int], list[int]] = defaultdict(list)
    tails: dict[tuple[int, int], list[int]] = defaultdict(list)
    for a, b, cc in conductors:
        if not reach[b] >> a & 1:
            heads[(a, b)].append(cc)
        if not reach[b] >> cc & 1:
            tails[(b, cc)].append(a)
    for (a, b), cs in heads.items():
        for (e, f), ds in tails.items():
            if b == e or hadj[a] >> f & 1:
                continue
            if not (reach[b] >> e & 1 and reach[e] >> b & 1):
                continue
            be_adjacent = bool(hadj[b] >> e & 1)
            for cc in cs:
                if cc == f:
                    continue
                for d in ds:
                    if be_adjacent and not (b == d and cc == e):
                        continue
                    yield a, b, cc, d, e, f


def _me_conductors_idx(c: AncestorClosure, hadj, conductors) -> set[tuple[int, ...]]:
    """Sextuples whose end triples are m.e. conductors on an uncovered itinerary.

    With ``<a,b,cc>`` and ``<d,e,f>`` conductors, ``b`` not reaching ``a`` and
    ``e`` not reaching ``f``, the itinerary conditions reduce to: the
    vertices ``b .. e`` form a chordless path of mutual ancestors, and no
    vertex of the itinerary is adjacent to a non-neighbour on it. For the
    middle stretch from ``cc`` to ``d`` a shortest path through vertices
    adjacent to none of ``a, b, e, f`` is chordless, because any two
    vertices on it share a strongly connected component and so any
    adjacency between them is itself a mutual-ancestor edge.
    """
    mutual = [hadj[v] & c.mutual(v) for v in range(len(hadj))]
    out = set()
    for a, b, cc, d, e, f in _step_e_candidates(c, hadj, conductors):
        if not (mutual[b] >> cc & 1 and mutual[d] >> e & 1):
            continue
        if b == d or cc == e:
            # itinerary <a, b, cc, f>
            if b == d and cc == e:
                out.add((a, b, cc, d, e, f))
            continue
        six = 1 << a | 1 << b | 1 << cc | 1 << e | 1 << f
        if cc == d:
            # itinerary <a, b, cc, e, f>
            if a != f and bin(six).count("1") == 5 and not (
                hadj[a] >> e & 1 or hadj[b] >> f & 1
            ):
                out.add((a, b, cc, d, e, f))
            continue
        if a == f or bin(six | 1 << d).count("1") != 6:
            continue
        if hadj[d] & (1 << a | 1 << b) or hadj[cc] & (1 << e | 1 << f) or hadj[a] >> e & 1:
            continue
        if hadj[b] >> f & 1:
            continue
        if hadj[cc] >> d & 1:
            # adjacent ends of the middle stretch: only the direct step is chordless
            if mutual[cc] >> d & 1:
                out.add((a, b, cc, d, e, f))
            continue
        interior = ~(hadj[a] | hadj[b] | hadj[e] | hadj[f] | six | 1 << d)
        if _connected(mutual, interior | 1 << cc | 1 << d, cc, d):
            out.add((a, b, cc, d, e, f))
    return out


def _me_conductors_literal_idx(c: AncestorClosure, hadj, conductors) -> set[tuple[int, ...]]:
    """The pruned-subgraph connectivity test, taken word for word.

    Starting from the adjacency graph: delete every vertex adjacent to
    ``a``, ``b``, ``e`` or ``f`` other than ``b, cc, d, e``; keep only edges
    between mutual ancestors; delete ``a`` and ``f``; accept when ``b`` and
    ``e`` are still connected. This over-accepts when the connecting path
    avoids ``cc`` or ``d`` or when an end vertex touches the far triple, so
    it is kept for audit only.
    """
    mutual = [hadj[v] & c.mutual(v) for v in range(len(hadj))]
    out = set()
    for a, b, cc, d, e, f in _step_e_candidates(c, hadj, conductors):
        base = ~(hadj[a] | hadj[b] | hadj[e] | hadj[f])
        allowed = (base | 1 << b | 1 << cc | 1 << d | 1 << e) & ~(1 << a | 1 << f)
        if _connected(mutual, allowed, b, e):
            out.add((a, b, cc, d, e, f))
    return out


def _connected(adj, allowed: int, src: int, dst: int) -> bool:
    if not (allowed >> src & 1 and allowed >> dst & 1):
        return False
    if src == dst:
        return True
    seen = frontier = 1 << src
    target = 1 << dst
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        if frontier & target:
            return True
        seen |= frontier
    return False


# --- steps F and G ----------------------------------------------------------


def _imperfect_ancestors_idx(c: AncestorClosure, imperfect) -> set[tuple[int, int]]:
    by_ends: dict[tuple[int, int], set[int]] = defaultdict(set)
    for a, w, f in imperfect:
        by_ends[(a, f)].add(w)
    out = set()
    for middles in by_ends.values():
        for w in middles:
            for v in middles:
                if c.reaches(v, w):
                    out.add((w, v))
    return out


def _me_imperfect_ancestors_idx(c: AncestorClosure, imperfect, me_idx) -> set[tuple[int, int]]:
    by_ends: dict[tuple[int, int], set[int]] = defaultdict(set)
    for a, v, _c, _d, _e, f in me_idx:
        by_ends[(a, f)].add(v)
    out = set()
    for a, w, f in imperfect:
        for v in by_ends.get((a, f), ()):
            if c.reaches(v, w):
                out.add((w, v))
    return out


# --- public API -------------------------------------------------------------


def _closure_for(g, c):
    return build_closure(g) if c is None else c


def _hadj_for(g, c, h):
    return _hadj_masks(g, c) if h is None else list(h.masks)


def _name_triples(g: DirectedGraph, ts: Iterable[tuple[int, int, int]]) -> frozenset[Triple]:
    names = g.vertices
    return frozenset(Triple(*(names[i] for i in t)).canonical() for t in ts)


def _name_sextuples(g: DirectedGraph, ss) -> frozenset[Sextuple]:
    names = g.vertices
    return frozenset(Sextuple(*(names[i] for i in s)).canonical() for s in ss)


def _name_pairs(g: DirectedGraph, ps) -> frozenset[tuple[str, str]]:
    names = g.vertices
    return frozenset((names[w], names[v]) for w, v in ps)


def _ordered(g: DirectedGraph, triples: Iterable[Triple]) -> set[tuple[int, int, int]]:
    out = set()
    for a, b, cc in triples:
        t = (g.idx(a), g.idx(b), g.idx(cc))
        out.add(t)
        out.add(t[::-1])
    return out


def unshielded_conductors(g, c=None, h=None) -> frozenset[Triple]:
    c = _closure_for(g, c)
    return _name_triples(g, _classify_triples(g, c, _hadj_for(g, c, h)).conductors)


def unshielded_perfect_non_conductors(g, c=None, h=None) -> frozenset[Triple]:
    c = _closure_for(g, c)
    return _name_triples(g, _classify_triples(g, c, _hadj_for(g, c, h)).perfect)


def unshielded_imperfect_non_conductors(g, c=None, h=None) -> frozenset[Triple]:
    c = _closure_for(g, c)
    return _name_triples(g, _classify_triples(g, c, _hadj_for(g, c, h)).imperfect)


def me_conductors(g, c=None, h=None, conductors=None, literal: bool = False) -> frozenset[Sextuple]:
    """m.e. unshielded conductor pairs in canonical form.

    ``literal=True`` selects the word-for-word pruned-subgraph test, which
    can report sextuples that no uncovered itinerary supports.
    """
    c = _closure_for(g, c)
    hadj = _hadj_for(g, c, h)
    if conductors is None:
        ordered = _classify_triples(g, c, hadj).conductors
    else:
        ordered = _ordered(g, conductors)
    find = _me_conductors_literal_idx if literal else _me_conductors_idx
    return _name_sextuples(g, find(c, hadj, ordered))


def imperfect_ancestors(g, c=None, h=None) -> frozenset[tuple[str, str]]:
    """Pairs ``(W, V)``: some ``A, F`` make both ``<A,W,F>`` and ``<A,V,F>``
    unshielded imperfect non-conductors, and a directed path runs from V to W."""
    c = _closure_for(g, c)
    triples = _classify_triples(g, c, _hadj_for(g, c, h))
    return _name_pairs(g, _imperfect_ancestors_idx(c, triples.imperfect))


def me_imperfect_ancestors(g, c=None, h=None) -> frozenset[tuple[str, str]]:
    c = _closure_for(g, c)
    hadj = _hadj_for(g, c, h)
    triples = _classify_triples(g, c, hadj)
    me_idx = _me_conductors_idx(c, hadj, triples.conductors)
    return _name_pairs(g, _me_imperfect_ancestors_idx(c, triples.imperfect, me_idx))


@dataclass(frozen=True)
class Analysis:
    """Every intermediate of ``classify``, in name space, for reporting."""

    closure: AncestorClosure
    adjacency: AdjacencyStructure
    features: FeatureSet
    imperfect_non_conductors: frozenset[Triple]


def analyze(g: DirectedGraph) -> Analysis:
    c = build_closure(g)
    h = build_hadj(g, c)
    hadj = list(h.masks)
    triples = _classify_triples(g, c, hadj)
    me_idx = _me_conductors_idx(c, hadj, triples.conductors)
    features = FeatureSet(
        vertices=g.vertices,
        hadj=h.graph,
        conductors=_name_triples(g, triples.conductors),
        perfect_non_conductors=_name_triples(g, triples.perfect),
        me_conductors=_name_sextuples(g, me_idx),
        imperfect_ancestors=_name_pairs(g, _imperfect_ancestors_idx(c, triples.imperfect)),
        me_imperfect_ancestors=_name_pairs(
            g, _me_imperfect_ancestors_idx(c, triples.imperfect, me_idx)
        ),
        virtual_edges=h.virtual_edges(),
    )
    return Analysis(c, h, features, _name_triples(g, triples.imperfect))


def classify(g: DirectedGraph) -> FeatureSet:
    return analyze(g).features


# --- definitional oracle for step E -------------------------------------------


def itinerary_oracle(g, c=None, h=None, max_n: int = DEFAULT_MAX_ITINERARY_N) -> frozenset[Sextuple]:
    """m.e. conductor pairs found by enumerating uncovered itineraries.

    Walks every induced path ``X0, X1, ..., X(n+1)`` of the adjacency graph
    and keeps its first and last three vertices when each interior triple is
    an unshielded conductor, each interior vertex has both path neighbours
    as ancestors, ``X1`` does not reach ``X0`` and ``Xn`` does not reach
    ``X(n+1)``. Exponential; refuses graphs above ``max_n`` vertices.
    """
    n = len(g.vertices)
    if n > max_n:
        raise OracleCapError(f"itinerary enumeration capped at {max_n} vertices, got {n}")
    c = _closure_for(g, c)
    adj = _hadj_for(g, c, h)

    def anc(u, v):
        return u != v and c.reaches(u, v)

    def interior_ok(prev, mid, nxt):
        conductor = (
            adj[prev] >> mid & 1
            and adj[mid] >> nxt & 1
            and not adj[prev] >> nxt & 1
            and (anc(mid, prev) or anc(mid, nxt))
        )
        return conductor and anc(prev, mid) and anc(nxt, mid)

    out = set()
    path: list[int] = []

    def grow(used: int, covered: int):
        # covered: vertices adjacent to some path vertex other than the last
        last = path[-1]
        for w in iter_bits(adj[last] & ~used & ~covered):
            if len(path) >= 2 and not interior_ok(path[-2], last, w):
                continue
            path.append(w)
            if len(path) >= 4 and not anc(path[-2], path[-1]):
                out.add(tuple(path[:3] + path[-3:]))
            grow(used | 1 << w, covered | adj[last])
            path.pop()

    for x0 in range(n):
        for x1 in iter_bits(adj[x0]):
            if anc(x1, x0):
                continue
            path[:] = [x0, x1]
            grow(1 << x0 | 1 << x1, adj[x0])
    names = g.vertices
    return frozenset(Sextuple(*(names[i] for i in s)).canonical() for s in out)
