"""Markov equivalence of directed cyclic graphs."""

from dcg.closure import AncestorClosure, build_closure, descendants, is_ancestor
from dcg.dsep import (
    DConnectingWitness,
    SeparationStatement,
    all_separations,
    is_d_connected_fast,
    is_d_connected_oracle,
)
from dcg.equivalence import (
    EquivalenceVerdict,
    acyclic_equivalent_exists,
    markov_equivalent,
    oracle_equivalent,
    verma_pearl_equivalent,
)
from dcg.errors import GraphError, OracleCapError
from dcg.features import FeatureSet, classify
from dcg.graph import DirectedGraph, UndirectedGraph, children, is_acyclic, parents

__all__ = [
    "AncestorClosure",
    "DConnectingWitness",
    "DirectedGraph",
    "EquivalenceVerdict",
    "FeatureSet",
    "GraphError",
    "OracleCapError",
    "SeparationStatement",
    "UndirectedGraph",
    "acyclic_equivalent_exists",
    "all_separations",
    "build_closure",
    "children",
    "classify",
    "descendants",
    "is_acyclic",
    "is_ancestor",
    "is_d_connected_fast",
    "is_d_connected_oracle",
    "markov_equivalent",
    "oracle_equivalent",
    "parents",
    "verma_pearl_equivalent",
]
