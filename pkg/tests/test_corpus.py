import pytest

from dcg.corpus import partition, run_corpus
from dcg.errors import OracleCapError
from graphs import G


def test_single_vertex():
    r = run_corpus(1)
    assert r.graph_count == 1 and r.class_sizes == [1] and r.ok


def test_two_vertices():
    r = run_corpus(2)
    assert r.graph_count == 4
    assert r.class_sizes == [3, 1]
    assert r.partitions_match and r.classes_without_dag == 0


def test_three_vertices():
    r = run_corpus(3)
    assert r.graph_count == 64
    assert r.partitions_match and r.ok
    assert sum(r.class_sizes) == 64
    d = r.to_dict()
    assert d["classes"] == len(r.class_sizes) and d["ok"] is True


def test_cap():
    with pytest.raises(OracleCapError):
        run_corpus(5)


def test_partition():
    graphs = [G("A B", "A>B"), G("A B"), G("A B", "B>A")]
    groups = partition(graphs, lambda g: len(g.edges))
    assert sorted(len(v) for v in groups.values()) == [1, 2]


@pytest.mark.slow
def test_four_vertices():
    r = run_corpus(4)
    assert r.graph_count == 4096
    assert r.partitions_match, r.to_dict()
    assert not r.acyclic_check_mismatches
    assert len(r.class_sizes) == 194
