import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treepack.degseq import DegreeMatrix
from treepack.egraph import (
    ColoredGraph,
    RainbowMatching,
    color_subgraph,
    emit_adjacency_color_matrix,
    emit_edge_list,
    is_spanning_tree,
    parse_adjacency_color_matrix,
    parse_edge_list,
    parse_graph,
    verify_realization,
)
from treepack.errors import DimensionError, ParseError
from treepack.generate import random_tree


def _squash(text):
    return "".join(text.split())


def test_simple_across_colors():
    g = ColoredGraph(3, 2, [(0, 1, 0)])
    with pytest.raises(ValueError):
        g.add_edge(1, 0, 1)
    with pytest.raises(ValueError):
        g.add_edge(2, 2, 0)
    with pytest.raises(ValueError):
        g.add_edge(0, 2, 2)


def test_degree_counters_track_removal():
    g = ColoredGraph(4, 2, [(0, 1, 0), (1, 2, 0), (2, 3, 1)])
    assert g.degrees(0) == [1, 2, 1, 0]
    assert g.remove_edge(2, 1) == 0
    assert g.degrees(0) == [1, 1, 0, 0]
    assert g.degree(3, 1) == 1


def test_rainbow_matching_invariants():
    RainbowMatching((((0, 1), 0), ((2, 3), 1)))
    with pytest.raises(ValueError):
        RainbowMatching((((0, 1), 0), ((1, 3), 1)))
    with pytest.raises(ValueError):
        RainbowMatching((((0, 1), 0), ((2, 3), 0)))


def test_color_subgraph_case1(fixtures):
    g = fixtures[0].graph
    sub = color_subgraph(g, 0)
    assert len(sub) == 7
    assert list(sub.edges_of_color(0)) == list(g.edges_of_color(0))
    assert len(color_subgraph(ColoredGraph(5, 2), 1)) == 0


def test_color_subgraph_case3(fixtures):
    sub = color_subgraph(fixtures[2].graph, 3)
    assert len(sub) == 8 and sub.n == 9
    assert is_spanning_tree(sub)


def test_spanning_tree_small():
    assert is_spanning_tree(ColoredGraph(3, 1, [(0, 1, 0), (1, 2, 0)]))
    assert not is_spanning_tree(ColoredGraph(3, 1, [(0, 1, 0), (1, 2, 0), (0, 2, 0)]))
    assert not is_spanning_tree(ColoredGraph(4, 1, [(0, 1, 0), (2, 3, 0)]))


def test_spanning_tree_case5_color2(fixtures):
    assert is_spanning_tree(fixtures[4].graph, 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2**32 - 1), st.booleans())
def test_spanning_tree_formulations_agree(n, seed, perturb):
    rng = random.Random(seed)
    g = random_tree(n, rng)
    if perturb:
        u, v = rng.sample(range(n), 2)
        if g.has_edge(u, v):
            g.remove_edge(u, v)
        else:
            g.add_edge(u, v, 0)
    edges = list(g.edges_of_color(0))
    # acyclic and connected, checked by hand with a visited set
    adj = {x: set() for x in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    connected = len(seen) == n
    assert is_spanning_tree(g) == (connected and len(edges) == n - 1)
    assert is_spanning_tree(g) != perturb


def test_verify_case9(fixtures):
    assert verify_realization(fixtures[8].graph, fixtures[8].matrix).ok


def test_verify_cross_pair(fixtures):
    rep = verify_realization(fixtures[8].graph, fixtures[7].matrix)
    assert not rep.ok
    assert any(f.kind == "degree" for f in rep.failures)


def test_verify_missing_edge(fixtures):
    f = fixtures[0]
    g = f.graph
    u, v = next(g.edges_of_color(0))
    g.remove_edge(u, v)
    rep = verify_realization(g, f.matrix)
    kinds = [x.kind for x in rep.failures]
    assert kinds.count("not_spanning_tree") == 1
    assert kinds.count("degree") == 2
    assert {x.vertex for x in rep.failures if x.kind == "degree"} == {u, v}


def test_verify_dimension_mismatch(fixtures):
    with pytest.raises(DimensionError):
        verify_realization(fixtures[0].graph, fixtures[1].matrix)


def test_parse_case1_counts(fixtures):
    g = parse_adjacency_color_matrix(fixtures[0].adjacency_text)
    assert len(g) == 28
    assert [g.degrees(c) for c in range(4)] == [list(r) for r in fixtures[0].matrix.rows]
    assert all(sum(1 for _ in g.edges_of_color(c)) == 7 for c in range(4))


def test_parse_zero_matrix():
    g = parse_adjacency_color_matrix("0 0 0\n0 0 0\n0 0 0\n")
    assert g.n == 3 and len(g) == 0


def test_parse_case14_verifies(fixtures):
    f = fixtures[13]
    assert verify_realization(parse_adjacency_color_matrix(f.adjacency_text), f.matrix).ok


def test_every_fixture_round_trips(fixtures):
    for f in fixtures:
        g = parse_adjacency_color_matrix(f.adjacency_text)
        assert _squash(emit_adjacency_color_matrix(g)) == _squash(f.adjacency_text), f.case
        assert parse_edge_list(emit_edge_list(g)) == g
        assert parse_graph(emit_edge_list(g)) == g
        assert parse_graph(f.adjacency_text) == g


def test_ampersand_separators(fixtures):
    text = fixtures[0].adjacency_text.replace(" ", " & ")
    assert parse_adjacency_color_matrix(text) == fixtures[0].graph


@pytest.mark.parametrize(
    "text, line",
    [
        ("0 1\n2 0\n", 1),
        ("1 0\n0 0\n", 1),
        ("0 1 0\n1 0\n0 0 0\n", 2),
        ("0 x\n1 0\n", 1),
    ],
)
def test_adjacency_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_adjacency_color_matrix(text)
    assert info.value.line == line


def test_edge_list_rejects_duplicate_pair():
    with pytest.raises(ParseError) as info:
        parse_edge_list("3 2\n1 2 1\n2 1 2\n")
    assert info.value.line == 3


def test_relabel_preserves_verification(fixtures):
    f = fixtures[5]
    rng = random.Random(7)
    perm = list(range(f.matrix.n))
    rng.shuffle(perm)
    inv = [0] * len(perm)
    for x, y in enumerate(perm):
        inv[y] = x
    g = f.graph.relabeled(perm)
    m = DegreeMatrix.from_rows([[row[inv[y]] for y in range(len(row))] for row in f.matrix.rows])
    assert verify_realization(g, m).ok
