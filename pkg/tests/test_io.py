import random

import pytest
from hypothesis import given, settings

from allmincuts.build import find_all_mincuts
from allmincuts.cactus import Cactus
from allmincuts.graph import build_static
from allmincuts.io import (ParseError, format_cactus, format_metis, parse_cactus, parse_dimacs,
                           parse_edgelist, parse_metis, read_graph, write_cactus, write_metis)
from conftest import connected_graphs, cycle


def _write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_metis_unweighted_triangle(tmp_path):
    g = parse_metis(_write(tmp_path, "% comment\n3 3\n2 3\n1 3\n1 2\n"))
    assert g.n == 3 and sorted(g.edges()) == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]


def test_metis_weighted_k2(tmp_path):
    g = parse_metis(_write(tmp_path, "2 1 1\n2 7\n1 7\n"))
    assert g.edges() == [(0, 1, 7)]


def test_metis_vertex_weights_skipped(tmp_path):
    g = parse_metis(_write(tmp_path, "2 1 11\n5 2 4\n6 1 4\n"))
    assert g.edges() == [(0, 1, 4)]


def test_metis_isolated_vertex_line(tmp_path):
    g = parse_metis(_write(tmp_path, "3 1\n2\n1\n\n"))
    assert g.n == 3 and g.m == 1


@pytest.mark.parametrize("text, line", [
    ("2 1 1\n2 7\n1 6\n", 2),       # weights disagree
    ("3 1\n2\n\n\n", 2),            # missing reverse arc
    ("2 1\n3\n1\n", 2),             # neighbour out of range
    ("2 1\n1\n2\n", 2),             # self-loop
    ("2 1 1\n2 0\n1 0\n", 2),       # zero weight
    ("2 x\n", 1),                   # bad header
])
def test_metis_errors_carry_line(tmp_path, text, line):
    with pytest.raises(ParseError) as exc:
        parse_metis(_write(tmp_path, text))
    assert exc.value.line == line


def test_metis_wrong_edge_count(tmp_path):
    with pytest.raises(ParseError):
        parse_metis(_write(tmp_path, "2 2\n2\n1\n"))
    with pytest.raises(ParseError):
        parse_metis(_write(tmp_path, "3 1\n2\n1\n"))


def test_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ParseError):
        read_graph(tmp_path / "nope.graph")


def test_dimacs_and_edgelist(tmp_path):
    g = parse_dimacs(_write(tmp_path, "c hi\np edge 4 2\ne 1 2 3\ne 3 4\n"))
    assert g.n == 4 and sorted(g.edges()) == [(0, 1, 3), (2, 3, 1)]
    h = parse_edgelist(_write(tmp_path, "# x\n0 1\n1 2 5\n", "e.txt"))
    assert sorted(h.edges()) == [(0, 1, 1), (1, 2, 5)]
    with pytest.raises(ParseError) as exc:
        parse_edgelist(_write(tmp_path, "0 1\n0 -1\n", "bad.txt"))
    assert exc.value.line == 2


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=15))
def test_metis_round_trip(g):
    import tempfile, os
    with tempfile.TemporaryDirectory() as d:
        p = os.path.join(d, "g.graph")
        write_metis(g, p)
        h = parse_metis(p)
        assert sorted(h.edges()) == sorted(g.edges())
        write_metis(h, p)
        assert format_metis(parse_metis(p)) == format_metis(g)


def test_cactus_formats():
    k2 = find_all_mincuts(build_static([(0, 1, 7)], 2))[0]
    assert format_cactus(k2).splitlines()[0] == "2 1 7 1"
    c3 = find_all_mincuts(cycle(3))[0]
    assert format_cactus(c3).splitlines()[0] == "3 3 2 3"
    single = Cactus([frozenset({0})], [], [], 0)
    assert format_cactus(single) == "1 0 0 0\n0: 0\n"


def test_cactus_round_trip(tmp_path):
    rng = random.Random(3)
    from allmincuts.generate import random_connected_graph
    for _ in range(20):
        c, _ = find_all_mincuts(random_connected_graph(rng.randint(3, 15), rng))
        p = tmp_path / "c.txt"
        write_cactus(c, p)
        back = parse_cactus(p)
        assert format_cactus(back) == format_cactus(c)
