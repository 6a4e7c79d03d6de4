import random

import pytest
from hypothesis import given, strategies as st

from dcg.errors import GraphError
from dcg.generate import (
    GeneratorConfig,
    all_dags,
    all_graphs,
    generate_random,
    ordered_pairs,
    random_dag,
    vertex_names,
)
from dcg.graph import is_acyclic


def test_vertex_names():
    assert vertex_names(3) == ["A", "B", "C"]
    assert vertex_names(30)[:2] == ["V00", "V01"]
    assert vertex_names(30)[-1] == "V29"


def test_p_zero_is_empty():
    assert generate_random(GeneratorConfig(3, 0.0, seed=9)).edges == frozenset()


def test_p_one_is_complete():
    g = generate_random(GeneratorConfig(3, 1.0, seed=9))
    assert set(g.edges) == set(ordered_pairs("ABC"))
    assert len(g.edges) == 6


def test_seed_determinism():
    cfg = GeneratorConfig(5, 0.3, seed=42)
    assert generate_random(cfg) == generate_random(cfg)
    others = {generate_random(GeneratorConfig(5, 0.3, seed=s)) for s in range(20)}
    assert len(others) > 1


@given(st.integers(2, 8), st.floats(0, 1), st.integers(0, 2**64 - 1))
def test_no_two_cycles(n, p, seed):
    g = generate_random(GeneratorConfig(n, p, seed, allow_two_cycles=False))
    assert not any((b, a) in g.edges for a, b in g.edges)


def test_no_two_cycles_keeps_one_orientation():
    g = generate_random(GeneratorConfig(4, 1.0, seed=1, allow_two_cycles=False))
    assert len(g.edges) == 6


@pytest.mark.parametrize(
    "kwargs",
    [dict(n=0, p=0.5), dict(n=3, p=-0.1), dict(n=3, p=1.5), dict(n=3, p=0.5, seed=-1), dict(n=3, p=0.5, seed=2**64)],
)
def test_invalid_config(kwargs):
    with pytest.raises(GraphError):
        GeneratorConfig(**kwargs)


def test_edge_frequency():
    total = sum(len(generate_random(GeneratorConfig(6, 0.25, seed=s)).edges) for s in range(400))
    # 30 ordered pairs per graph
    assert abs(total / (400 * 30) - 0.25) < 0.02


def test_enumeration_counts():
    assert sum(1 for _ in all_graphs(3)) == 64
    assert sum(1 for _ in all_dags(3)) == 25
    assert len(set(all_graphs(2))) == 4


def test_random_dag_is_acyclic():
    rng = random.Random(0)
    assert all(is_acyclic(random_dag(rng, 7, 0.6)) for _ in range(50))
