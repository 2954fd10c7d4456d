import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pauliforge.arch import (
    CouplingGraph,
    DisconnectedGraphError,
    bfs_layout,
    complete_graph,
    cycle_graph,
    heavy_hex,
    induced_subgraph,
    load_graph,
    non_cut_nodes,
    parse_arch,
    path_graph,
    star_graph,
    steiner_tree,
)


def to_nx(g: CouplingGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.nodes)
    h.add_edges_from(g.edges)
    return h


@st.composite
def connected_graphs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    edges = set()
    for v in range(1, n):
        edges.add((draw(st.integers(0, v - 1)), v))
    for u, v in itertools.combinations(range(n), 2):
        if draw(st.integers(0, 4)) == 0:
            edges.add((u, v))
    return CouplingGraph(n, frozenset(edges))


def optimal_steiner_size(g: CouplingGraph, terminals) -> int:
    """Fewest nodes of a connected subgraph containing the terminals."""
    others = sorted(g.nodes - set(terminals))
    h = to_nx(g)
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            sub = h.subgraph(set(terminals) | set(extra))
            if nx.is_connected(sub):
                return sub.number_of_nodes()
    raise AssertionError


def test_path_graph():
    assert len(path_graph(1).edges) == 0
    g = path_graph(5)
    assert len(g.edges) == 4 and g.diameter() == 4
    with pytest.raises(ValueError):
        path_graph(0)


def test_disconnected_rejected():
    g = CouplingGraph(3, frozenset({(0, 1)}))
    assert not g.is_connected
    with pytest.raises(DisconnectedGraphError):
        steiner_tree(g, {0, 2})


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_heavy_hex(d):
    g = heavy_hex(d)
    assert g.is_connected
    assert max(g.degree(v) for v in g.nodes) <= 3
    assert nx.is_bipartite(to_nx(g))


def test_heavy_hex_eagle():
    g = heavy_hex(6)
    assert g.n_phys == 127
    assert len(g.edges) == 144


def test_steiner_examples():
    r = steiner_tree(path_graph(4), {0, 3})
    assert r.nodes == {0, 1, 2, 3} and len(r.tree_edges) == 3
    r = steiner_tree(path_graph(4), {2})
    assert r.nodes == {2} and not r.tree_edges
    r = steiner_tree(star_graph(3), {1, 2, 3})
    assert r.nodes == {0, 1, 2, 3} and len(r.tree_edges) == 3
    with pytest.raises(ValueError):
        steiner_tree(path_graph(3), set())


@given(connected_graphs(), st.data())
def test_steiner_is_tree_within_two_opt(g, data):
    ts = data.draw(st.sets(st.sampled_from(sorted(g.nodes)), min_size=1, max_size=g.n_phys))
    r = steiner_tree(g, ts)
    assert ts <= r.nodes
    t = nx.Graph()
    t.add_nodes_from(r.nodes)
    t.add_edges_from(r.tree_edges)
    assert nx.is_tree(t)
    assert all(g.has_edge(*e) for e in r.tree_edges)
    assert len(r.tree_edges) <= 2 * (optimal_steiner_size(g, ts) - 1)
    # leaves are terminals
    assert all(v in ts for v in r.nodes if t.degree(v) <= 1)
    assert steiner_tree(g, ts) == r


def test_induced_subgraph():
    g = path_graph(6)
    s = induced_subgraph(g, {1, 2, 3})
    assert s.edges == {(1, 2), (2, 3)}
    tri = complete_graph(3)
    assert len(induced_subgraph(tri, {0, 1, 2}).edges) == 3
    assert induced_subgraph(g, set()).nodes == frozenset()


def test_non_cut_examples():
    assert non_cut_nodes(path_graph(3)) == {0, 2}
    assert non_cut_nodes(cycle_graph(5)) == set(range(5))
    assert 0 not in non_cut_nodes(star_graph(4))


@given(connected_graphs())
def test_non_cut_matches_networkx(g):
    cut = set(nx.articulation_points(to_nx(g)))
    assert non_cut_nodes(g) == g.nodes - cut


def test_bfs_layout_and_parse(tmp_path):
    assert bfs_layout(path_graph(5), 3) == [2, 1, 3]
    p = tmp_path / "g.txt"
    p.write_text("n 3\n0 1\n1 2  # tail\n")
    assert load_graph(p).edges == path_graph(3).edges
    assert parse_arch(f"file:{p}").n_phys == 3
    assert parse_arch("path:4").n_phys == 4
    assert parse_arch("heavyhex:2").is_connected
    with pytest.raises(ValueError):
        parse_arch("grid:3")
