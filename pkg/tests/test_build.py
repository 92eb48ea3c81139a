import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from allmincuts.balance import enumerate_min_cuts
from allmincuts.build import (DegreeTwoRecord, degree_two_contract, find_all_mincuts, merge_cacti,
                              recursive_cactus, reinsert_degree_one, reinsert_degree_two,
                              select_edge)
from allmincuts.cactus import Cactus, structural_violations
from allmincuts.config import STRATEGIES, VARIANTS, PipelineConfig
from allmincuts.generate import random_corpus, random_tree
from allmincuts.graph import DynamicGraph, GraphError, build_static
from allmincuts.kernel import DegreeOneRecord
from allmincuts.mincut import DisconnectedGraphError
from allmincuts.oracle import brute_force_min_cuts, verify_cactus, verify_sound
from conftest import canon, complete, connected_graphs, cycle, path, star, two_triangles


def _cuts(g, **kw):
    cactus, lam = find_all_mincuts(g, PipelineConfig(**kw))
    return cactus, lam, set(enumerate_min_cuts(cactus))


# ---- edge selection

def test_heavy_on_star_picks_first_leaf():
    dg = DynamicGraph.from_static(star(4))
    u, i = select_edge(dg, "heavy")
    assert (u, dg.adj[u][i][0]) == (0, 1)


def test_central_on_path_picks_middle_edge():
    dg = DynamicGraph.from_static(path(5))
    for seed in range(5):
        u, i = select_edge(dg, "central", random.Random(seed))
        assert {u, dg.adj[u][i][0]} == {2, 3}


def test_every_strategy_on_k2():
    dg = DynamicGraph.from_static(build_static([(0, 1, 4)], 2))
    for s in STRATEGIES:
        u, i = select_edge(dg, s, random.Random(1))
        assert {u, dg.adj[u][i][0]} == {0, 1}


def test_edgeless_graph_rejected():
    with pytest.raises(GraphError):
        select_edge(DynamicGraph(1), "heavy")


def test_random_strategy_is_reproducible():
    dg = DynamicGraph.from_static(complete(7))
    a = [select_edge(dg, "random", random.Random(5)) for _ in range(3)]
    b = [select_edge(dg, "random", random.Random(5)) for _ in range(3)]
    assert a == b


# ---- degree-two reduction

def _vertex_with(weights_a, weights_b, lam):
    # vertex 0 joined to 1 and 2; the others form a heavy K_4 so only vertex 0 has degree two
    heavy = [(a, b, 50) for a in range(1, 5) for b in range(a + 1, 5)]
    g = build_static([(0, 1, weights_a), (0, 2, weights_b)] + heavy, 5)
    dg = DynamicGraph.from_static(g)
    return dg, degree_two_contract(dg, lam)


def test_degree_two_unequal_heavier_cut():
    dg, (count, records) = _vertex_with(3, 2, 4)
    assert count == 1 and records == []
    assert any(sorted(m) == [0, 1] for m in dg.members)


def test_degree_two_unequal_tight_cut_records_leaf():
    dg, (count, records) = _vertex_with(3, 2, 5)
    assert count == 1
    assert records == [DegreeTwoRecord("leaf", (0,), 1, 2, 3, 2)]


def test_degree_two_equal_loose_cut_untouched():
    dg, (count, records) = _vertex_with(3, 3, 5)
    assert count == 0 and dg.n == 5


def test_c4_rebuilt_from_degree_two_records():
    g = cycle(4)
    cactus, lam, cuts = _cuts(g)
    assert lam == 2 and len(cactus.cycles) == 1 and len(cactus.cycles[0]) == 4
    assert cuts == brute_force_min_cuts(g).cuts


def test_c3_is_a_three_cycle():
    cactus, lam, cuts = _cuts(cycle(3))
    assert lam == 2 and cactus.n_nodes == 3 and cactus.num_cuts == 3


def test_degree_two_then_reinsert_in_isolation():
    for g in random_corpus(80, seed=21):
        lam = brute_force_min_cuts(g).lam
        dg = DynamicGraph.from_static(g)
        _, records = degree_two_contract(dg, lam)
        cactus = recursive_cactus(dg, lam, config=PipelineConfig(variant="basic"))
        full = reinsert_degree_two(cactus, records)
        assert set(enumerate_min_cuts(full)) == brute_force_min_cuts(g).cuts


# ---- recursion

def test_c5_cycle_cactus():
    cactus, lam, cuts = _cuts(cycle(5))
    assert lam == 2 and cactus.n_nodes == 5 and len(cuts) == 10


def test_k4_star_with_empty_center():
    cactus, lam, cuts = _cuts(complete(4))
    assert lam == 3 and cactus.n_nodes == 5 and len(cactus.tree_edges) == 4
    assert sum(1 for p in cactus.nodes if not p) == 1
    assert cuts == brute_force_min_cuts(complete(4)).cuts


def test_two_triangles_with_bridge():
    cactus, lam, cuts = _cuts(two_triangles(), variant="basic")
    assert lam == 1 and cactus.n_nodes == 2 and cactus.tree_edges == [(0, 1)]
    assert sorted(map(len, cactus.nodes)) == [3, 3]


@pytest.mark.parametrize("variant", list(VARIANTS))
def test_recursive_core_alone(variant):
    for g in random_corpus(40, seed=3):
        lam = brute_force_min_cuts(g).lam
        cactus = recursive_cactus(DynamicGraph.from_static(g), lam, "central",
                                  config=PipelineConfig(variant=variant))
        assert verify_cactus(g, cactus).ok


# ---- merging and reinsertion

def test_merge_single_component_is_identity():
    sub = Cactus([frozenset({0, 9}), frozenset({1})], [(0, 1)], [], 4)
    comp = Cactus([frozenset()], [], [], 4)
    merged = merge_cacti(comp, {0: (sub, 9)})
    assert merged.nodes == [frozenset({0}), frozenset({1})] and merged.tree_edges == [(0, 1)]


def test_merge_two_single_node_components():
    comp = Cactus([frozenset({0}), frozenset({1})], [(0, 1)], [], 2)
    merged = merge_cacti(comp, {})
    assert merged.n_nodes == 2 and merged.tree_edges == [(0, 1)]


def test_merge_attaches_at_the_attachment_vertex():
    # component cactus: node 0 = {0}, node 1 = placeholder for vertices {1, 2}
    comp = Cactus([frozenset({0}), frozenset()], [(0, 1)], [], 1)
    # sub-cactus over {1, 2} plus the stand-in vertex 9 for everything else
    sub = Cactus([frozenset({1, 9}), frozenset({2})], [(0, 1)], [], 1)
    merged = merge_cacti(comp, {1: (sub, 9)})
    assert structural_violations(merged, 3) == []
    assert merged.tree_edges == [(0, 1), (1, 2)]


def test_c6_via_full_pipeline():
    g = cycle(6)
    cactus, _, cuts = _cuts(g, variant="basic")
    assert cactus.n_nodes == 6 and cuts == brute_force_min_cuts(g).cuts


def test_tree_reinsertion_rebuilds_tree():
    g = random_tree(40, random.Random(2))
    cactus, lam = find_all_mincuts(g)
    assert lam == 1 and cactus.n_nodes == 40 and len(cactus.tree_edges) == 39
    expected = {canon(side, g.n) for side in _tree_sides(g)}
    assert set(enumerate_min_cuts(cactus)) == expected


def _tree_sides(g):
    for u, v, _ in g.edges():
        seen, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for y, _ in g.neighbors(x):
                if y not in seen and {x, y} != {u, v}:
                    seen.add(y)
                    stack.append(y)
        yield seen


def test_stale_degree_one_records_dropped():
    base = Cactus([frozenset({0, 1, 2})], [], [], 2)
    stale = [DegreeOneRecord((2,), 0, 3)]
    assert reinsert_degree_one(base, stale, 2).n_nodes == 1
    fresh = [DegreeOneRecord((2,), 0, 2)]
    assert reinsert_degree_one(base, fresh, 2).tree_edges == [(0, 1)]


def test_star_degree_one_reinsertion():
    cactus, lam, cuts = _cuts(star(4))
    assert lam == 1 and len(cuts) == 4 and cactus.n_nodes == 5


def test_cycle_record_with_merged_neighbours_becomes_leaf():
    base = Cactus([frozenset({0, 1, 2})], [], [], 2)
    rec = DegreeTwoRecord("cycle", (2,), 0, 1, 1, 1)
    out = reinsert_degree_two(base, [rec])
    assert out.n_nodes == 2 and out.tree_edges == [(0, 1)]


# ---- driver

def test_c100():
    cactus, lam = find_all_mincuts(cycle(100))
    assert lam == 2 and cactus.n_nodes == 100 and cactus.num_cuts == 4950


def test_unit_tree_seven():
    g = random_tree(7, random.Random(0))
    cactus, lam = find_all_mincuts(g)
    assert lam == 1 and cactus.num_cuts == 6


def test_single_vertex_and_disconnected():
    cactus, lam = find_all_mincuts(build_static([], 1))
    assert lam == 0 and cactus.n_nodes == 1 and cactus.num_cuts == 0
    with pytest.raises(DisconnectedGraphError):
        find_all_mincuts(build_static([(0, 1, 1), (2, 3, 1)], 4))
    with pytest.raises(GraphError):
        find_all_mincuts(build_static([], 0))


@settings(max_examples=150, deadline=None)
@given(connected_graphs(min_n=2, max_n=11), st.sampled_from(STRATEGIES),
       st.sampled_from(list(VARIANTS)), st.integers(0, 100))
def test_matches_brute_force(g, strategy, variant, seed):
    cactus, lam = find_all_mincuts(g, PipelineConfig(strategy=strategy, variant=variant, seed=seed))
    rep = verify_cactus(g, cactus)
    assert rep.ok, rep


def test_strategies_agree_on_larger_graphs():
    rng = random.Random(8)
    from allmincuts.generate import random_connected_graph
    for _ in range(15):
        g = random_connected_graph(rng.randint(30, 60), rng, density=0.05)
        sets = []
        for s in STRATEGIES:
            cactus, _ = find_all_mincuts(g, PipelineConfig(strategy=s))
            assert verify_sound(g, cactus).ok
            assert cactus.n_nodes <= 2 * g.n
            sets.append(set(enumerate_min_cuts(cactus)))
        assert all(x == sets[0] for x in sets)


def test_identical_config_gives_identical_cactus():
    g = random_corpus(1, seed=4, n_range=(12, 12))[0]
    a, _ = find_all_mincuts(g, PipelineConfig(strategy="random", seed=9))
    b, _ = find_all_mincuts(g, PipelineConfig(strategy="random", seed=9))
    assert a == b


def test_number_of_cuts_formula():
    cactus, _ = find_all_mincuts(cycle(12))
    assert cactus.num_cuts == comb(12, 2)
