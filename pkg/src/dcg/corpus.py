"""Exhaustive cross-validation over every directed graph on n labelled vertices."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from dcg.dsep import all_separations
from dcg.equivalence import acyclic_equivalent_exists
from dcg.errors import OracleCapError
from dcg.features import classify
from dcg.generate import all_graphs
from dcg.graph import DirectedGraph, is_acyclic

MAX_CORPUS_N = 4


@dataclass
class CorpusReport:
    n: int
    graph_count: int
    # one entry per d-separation class, largest first
    class_sizes: list[int]
    partitions_match: bool
    # d-separation classes that the features split, and feature classes mixing
    # graphs with different d-separations (a few representatives each)
    split: list[list[DirectedGraph]] = field(default_factory=list)
    merged: list[list[DirectedGraph]] = field(default_factory=list)
    classes_without_dag: int = 0
    acyclic_check_mismatches: list[DirectedGraph] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.partitions_match and not self.acyclic_check_mismatches

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "graphs": self.graph_count,
            "classes": len(self.class_sizes),
            "class_sizes": self.class_sizes,
            "partitions_match": self.partitions_match,
            "split_classes": [[repr(g) for g in c] for c in self.split],
            "merged_classes": [[repr(g) for g in c] for c in self.merged],
            "classes_without_dag": self.classes_without_dag,
            "acyclic_check_mismatches": [repr(g) for g in self.acyclic_check_mismatches],
            "ok": self.ok,
        }


def partition(graphs, key) -> dict:
    classes = defaultdict(list)
    for g in graphs:
        classes[key(g)].append(g)
    return classes


def run_corpus(n: int, max_n: int = MAX_CORPUS_N) -> CorpusReport:
    """Partition all graphs on ``n`` vertices two ways and compare.

    One partition groups graphs with identical feature sets, the other groups
    graphs with identical d-separation sets from the path oracle. Classes
    with no acyclic member are checked against ``acyclic_equivalent_exists``.
    """
    if n > max_n:
        raise OracleCapError(f"corpus enumerates 2^(n(n-1)) graphs; n={n} exceeds cap {max_n}")
    if n < 1:
        raise ValueError("n must be positive")
    graphs = list(all_graphs(n))
    by_seps = partition(graphs, all_separations)
    by_features = partition(graphs, classify)
    seps_groups = {frozenset(c) for c in by_seps.values()}
    feature_groups = {frozenset(c) for c in by_features.values()}
    match = seps_groups == feature_groups

    split, merged = [], []
    if not match:
        split = [c[:4] for c in by_seps.values() if frozenset(c) not in feature_groups]
        merged = [c[:4] for c in by_features.values() if frozenset(c) not in seps_groups]

    without_dag = 0
    mismatches = []
    for members in by_seps.values():
        has_dag = any(is_acyclic(g) for g in members)
        without_dag += not has_dag
        mismatches += [g for g in members if acyclic_equivalent_exists(g) != has_dag]

    sizes = sorted((len(c) for c in by_seps.values()), reverse=True)
    return CorpusReport(n, len(graphs), sizes, match, split, merged, without_dag, mismatches)
