import random
import threading

import numpy as np
import pytest
from hypothesis import given, settings

from allmincuts.graph import (MAX_WEIGHT, DynamicGraph, GraphError, UnionFind,
                              WeightOverflowError, build_static, connected_components,
                              contract_bulk, contract_labels, induced_subgraph, min_weighted_degree)
from conftest import connected_graphs, cycle, path


def test_parallel_edges_merge_and_self_loops_drop():
    g = build_static([(0, 1, 2), (1, 0, 3), (1, 1, 5), (1, 2, 1)], 3)
    assert g.m == 2
    assert sorted(g.edges()) == [(0, 1, 5), (1, 2, 1)]
    assert g.weighted_degrees().tolist() == [5, 6, 1]


def test_invalid_input_rejected():
    with pytest.raises(GraphError):
        build_static([(0, 3, 1)], 3)
    with pytest.raises(GraphError):
        build_static([(0, 1, 0)], 2)
    with pytest.raises(GraphError):
        build_static([(0, 1, -4)], 2)


def test_weight_overflow_detected():
    with pytest.raises(WeightOverflowError):
        build_static([(0, 1, MAX_WEIGHT), (1, 0, 1)], 2)
    # a legal maximum weight on its own is fine
    assert build_static([(0, 1, MAX_WEIGHT)], 2).total_weight() == MAX_WEIGHT


def test_cut_weight_and_connectivity():
    g = cycle(6)
    assert g.cut_weight({0, 1, 2}) == 2
    assert g.is_connected()
    h = build_static([(0, 1, 1), (2, 3, 1)], 4)
    assert not h.is_connected()
    labels, comps = connected_components(h)
    assert sorted(map(sorted, comps)) == [[0, 1], [2, 3]]


def test_induced_subgraph():
    g = cycle(5)
    h = induced_subgraph(g, [1, 2, 3])
    assert sorted(h.edges()) == [(0, 1, 1), (1, 2, 1)]


def test_contract_bulk_sums_parallel_edges():
    g = cycle(4)
    uf = UnionFind(4)
    uf.union(0, 1)
    uf.union(2, 3)
    h, mapping = contract_bulk(g, uf)
    assert h.n == 2 and h.edges() == [(0, 1, 2)]
    assert mapping.labels.tolist() == [0, 0, 1, 1]
    assert mapping.preimage([1]).tolist() == [2, 3]


def test_union_find_threads_agree_with_sequential():
    rng = random.Random(4)
    pairs = [(rng.randrange(500), rng.randrange(500)) for _ in range(2000)]
    seq = UnionFind(500)
    for a, b in pairs:
        seq.union(a, b)
    par = UnionFind(500)
    chunks = [pairs[i::4] for i in range(4)]
    threads = [threading.Thread(target=lambda c=c: [par.union(a, b) for a, b in c]) for c in chunks]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert seq.labels()[0].tolist() == par.labels()[0].tolist()


def test_dynamic_merge_keeps_invariants():
    dg = DynamicGraph.from_static(cycle(5))
    survivor = dg.merge(0, 1)
    dg.check()
    assert dg.n == 4
    assert sorted(dg.members[survivor]) == [0, 1]
    assert dg.weighted_degree(survivor) == 2


def test_dynamic_merge_of_triangle_sums_weights():
    dg = DynamicGraph.from_edges(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    s = dg.merge(0, 1)
    dg.check()
    assert dg.n == 2
    assert dg.edge_weight(s, 1 - s) == 5


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=12))
def test_random_contractions_match_bulk(g):
    rng = random.Random(g.n * 31 + g.m)
    dg = DynamicGraph.from_static(g)
    while dg.n > 1:
        u = rng.randrange(dg.n)
        if not dg.adj[u]:
            break
        dg.contract_edge((u, rng.randrange(len(dg.adj[u]))))
        dg.check()
        labels = np.array(dg.current_of)
        expected = contract_labels(g, labels, dg.n)
        assert sorted(dg.edges()) == sorted(expected.edges())


def test_min_weighted_degree_ties_lowest_id():
    assert min_weighted_degree(path(4)) == (0, 1)
    assert min_weighted_degree(DynamicGraph.from_static(path(4))) == (0, 1)
