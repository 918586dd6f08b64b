import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from minorlab.domination import RandomSource
from minorlab.enumeration import all_graphs
from minorlab.errors import DegenerateInputError, InvalidArgumentError, PreconditionError
from minorlab.generators import random_k_tree
from minorlab.graph import complete_graph, cycle_graph, path_graph, petersen_graph, star_graph
from minorlab.minors import find_minor
from minorlab.series_parallel import (
    complete_to_two_tree,
    embed_two_tree,
    force_sp_minor,
    is_series_parallel,
    k_tree_order,
    two_tree_order,
)


def test_recognition_examples():
    assert not is_series_parallel(complete_graph(4))
    assert is_series_parallel(cycle_graph(5))
    assert not is_series_parallel(petersen_graph())


@given(graphs(max_n=8))
def test_recognition_matches_k4_minor(g):
    assert is_series_parallel(g) == (not find_minor(g, complete_graph(4)).found)


def test_k_tree_orders_replay():
    for k, n in ((1, 6), (2, 10), (3, 8)):
        g = random_k_tree(k, n, RandomSource(k))
        order = k_tree_order(g, k)
        assert order is not None and order.replay() == g
    assert two_tree_order(cycle_graph(4)) is None
    assert two_tree_order(complete_graph(3)) is not None


def test_two_trees_are_chordal_with_expected_size():
    g = random_k_tree(2, 15, RandomSource(3))
    assert g.m == 2 * 15 - 3
    ref = nx.Graph(g.edges())
    assert nx.is_chordal(ref)
    assert max(len(c) for c in nx.find_cliques(ref)) == 3


def test_completion_contains_every_series_parallel_graph():
    for h in all_graphs(6, n_min=3):
        if not is_series_parallel(h):
            with pytest.raises(InvalidArgumentError):
                complete_to_two_tree(h)
            continue
        t_graph, order = complete_to_two_tree(h)
        assert order.replay() == t_graph
        assert all(t_graph.has_edge(u, v) for u, v in h.edges())
        assert two_tree_order(t_graph) is not None


def test_completion_rejects_tiny():
    with pytest.raises(DegenerateInputError):
        complete_to_two_tree(path_graph(2))


def test_embedding_precondition():
    t_graph, _ = complete_to_two_tree(cycle_graph(5))
    with pytest.raises(PreconditionError):
        embed_two_tree(cycle_graph(6), t_graph, 5)  # edges lie in no triangle
    phi = embed_two_tree(complete_graph(6), t_graph, 5)
    assert len(set(phi.values())) == 5


def test_force_examples():
    r = force_sp_minor(complete_graph(5), cycle_graph(4))
    assert r.found and r.model.verify()
    r = force_sp_minor(cycle_graph(5), complete_graph(3))
    assert r.found and r.model.verify()
    r = force_sp_minor(cycle_graph(6), path_graph(4))
    assert r.status == "not_forced"
    with pytest.raises(InvalidArgumentError):
        force_sp_minor(complete_graph(6), complete_graph(4))


def test_force_small_patterns_direct():
    assert force_sp_minor(path_graph(3), path_graph(2)).found
    assert force_sp_minor(path_graph(3), star_graph(1)).found
