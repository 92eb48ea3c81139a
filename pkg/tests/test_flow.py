import itertools

import pytest
from hypothesis import given, settings

from allmincuts.flow import max_flow, residual_sccs
from allmincuts.graph import DynamicGraph, GraphError, build_static
from allmincuts.oracle import brute_force_st_cut
from conftest import complete, connected_graphs, cycle


def test_path_bottleneck():
    g = build_static([(0, 1, 3), (1, 2, 2)], 3)
    assert max_flow(g, 0, 2).value == 2


def test_complete_graph_pairs():
    g = complete(4)
    for s, t in itertools.permutations(range(4), 2):
        assert max_flow(g, s, t).value == 3 == brute_force_st_cut(g, s, t)


def test_cycle_pairs():
    g = cycle(6)
    for t in range(1, 6):
        assert max_flow(g, 0, t).value == 2


def test_same_endpoints_rejected():
    with pytest.raises(GraphError):
        max_flow(cycle(3), 1, 1)


def test_path_components():
    g = build_static([(0, 1, 3), (1, 2, 2)], 3)
    fr = max_flow(g, 0, 2)
    scc = residual_sccs(g, fr)
    assert scc.count == 2
    assert scc.comp[0] == scc.comp[1] != scc.comp[2]


def test_c4_diamond():
    g = cycle(4)
    fr = max_flow(g, 0, 2)
    scc = residual_sccs(g, fr)
    assert scc.count == 4


def _closed_sets(scc, fr):
    """s-sides of the closed sets of the residual component DAG."""
    succ = {c: set() for c in range(scc.count)}
    for v in range(fr.n):
        for a in range(fr.offsets[v], fr.offsets[v + 1]):
            if fr.residual(a) > 0 and scc.comp[v] != scc.comp[fr.targets[a]]:
                succ[scc.comp[v]].add(scc.comp[fr.targets[a]])
    members = scc.members()
    out = set()
    others = [c for c in range(scc.count) if c not in (scc.s_comp, scc.t_comp)]
    for r in range(len(others) + 1):
        for pick in itertools.combinations(others, r):
            chosen = set(pick) | {scc.s_comp}
            if all(succ[c] <= chosen for c in chosen):
                out.add(frozenset(v for c in chosen for v in members[c]))
    return out


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=8))
def test_flow_and_closed_sets_match_brute_force(g):
    s, t = 0, g.n - 1
    fr = max_flow(g, s, t)
    assert fr.value == brute_force_st_cut(g, s, t)
    # conservation
    for v in range(g.n):
        net = sum(fr.flow[a] for a in range(fr.offsets[v], fr.offsets[v + 1]))
        assert net == (fr.value if v == s else -fr.value if v == t else 0)
    assert g.cut_weight(fr.source_side()) == fr.value
    scc = residual_sccs(g, fr)
    assert scc.s_comp != scc.t_comp
    expected = set()
    for mask in range(1 << g.n):
        side = frozenset(v for v in range(g.n) if mask >> v & 1)
        if s in side and t not in side and g.cut_weight(side) == fr.value:
            expected.add(side)
    assert _closed_sets(scc, fr) == expected


def test_dynamic_graph_flow_matches_static():
    g = complete(5, 2)
    dg = DynamicGraph.from_static(g)
    assert max_flow(dg, 0, 4).value == max_flow(g, 0, 4).value == 8
