import pytest
from hypothesis import given, settings

from allmincuts.graph import GraphError, build_static
from allmincuts.mincut import DisconnectedGraphError, exact_min_cut
from allmincuts.oracle import brute_force_min_cuts
from conftest import complete, connected_graphs, cycle


def test_small_examples():
    assert exact_min_cut(cycle(9)).lam == 2
    assert exact_min_cut(complete(4)).lam == 3
    tri = build_static([(0, 1, 5), (1, 2, 1), (0, 2, 1)], 3)
    r = exact_min_cut(tri)
    assert r.lam == 2 and tri.cut_weight(r.witness_side) == 2


def test_errors():
    with pytest.raises(DisconnectedGraphError):
        exact_min_cut(build_static([(0, 1, 1), (2, 3, 1)], 4))
    with pytest.raises(GraphError):
        exact_min_cut(build_static([], 1))


@settings(max_examples=250, deadline=None)
@given(connected_graphs(max_n=12))
def test_matches_brute_force(g):
    r = exact_min_cut(g)
    assert r.lam == brute_force_min_cuts(g).lam
    assert 0 < len(r.witness_side) < g.n
    assert g.cut_weight(r.witness_side) == r.lam
    assert r.lam <= int(g.weighted_degrees().min())
