from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs, to_nx
from minorlab.errors import DegenerateInputError, InvalidArgumentError
from minorlab.graph import (
    ContractionHistory,
    Graph,
    MinorModel,
    Step,
    complete_bipartite_graph,
    complete_graph,
    contract_edge,
    cycle_graph,
    edge_triangle_count,
    path_graph,
    petersen_graph,
    verify_model,
)


def test_named_graphs_shapes():
    assert complete_graph(5).m == 10
    assert cycle_graph(6).degrees() == [2] * 6
    assert path_graph(4).m == 3
    k23 = complete_bipartite_graph(2, 3)
    assert k23.m == 6 and k23.average_degree() == Fraction(12, 5)
    p = petersen_graph()
    assert (p.n, p.m, p.min_degree(), p.max_degree()) == (10, 15, 3, 3)


def test_average_degree_is_exact():
    g = Graph.from_edges(3, [(0, 1)])
    assert g.average_degree() == Fraction(2, 3)
    with pytest.raises(DegenerateInputError):
        Graph.empty(0).average_degree()


def test_from_edges_rejects_bad_input():
    with pytest.raises(InvalidArgumentError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(InvalidArgumentError):
        Graph.from_edges(3, [(0, 3)])


def test_triangle_count_on_edges_only():
    k4 = complete_graph(4)
    assert edge_triangle_count(k4, 0, 1) == 2
    with pytest.raises(InvalidArgumentError):
        edge_triangle_count(cycle_graph(4), 0, 2)


def test_contraction_merges_neighbourhoods():
    g = path_graph(4)  # 0-1-2-3
    h, step = contract_edge(g, 1, 2)
    assert step == Step("contract_edge", 1, 2)
    assert h == path_graph(3)
    c, _ = contract_edge(cycle_graph(3), 0, 1)
    assert c.m == 1  # parallel edge collapses


@given(graphs(min_n=2), st.data())
def test_contraction_matches_networkx(g, data):
    edges = g.edges()
    if not edges:
        return
    u, v = data.draw(st.sampled_from(edges))
    ours, _ = contract_edge(g, u, v)
    theirs = nx.contracted_nodes(to_nx(g), u, v, self_loops=False)
    assert ours.m == theirs.number_of_edges()
    assert sorted(ours.degrees()) == sorted(d for _, d in theirs.degree())


@given(graphs())
def test_structure_matches_networkx(g):
    ref = to_nx(g)
    assert g.m == ref.number_of_edges()
    assert len(g.components()) == nx.number_connected_components(ref)
    if g.n:
        assert g.is_connected() == nx.is_connected(ref)


@given(graphs(min_n=1), st.data())
def test_history_lifts_models(g, data):
    steps = []
    cur = g
    for _ in range(data.draw(st.integers(0, 4))):
        choices = [Step("delete_vertex", v) for v in range(cur.n) if cur.n > 1]
        choices += [Step("contract_edge", u, v) for u, v in cur.edges()]
        choices += [Step("delete_edge", u, v) for u, v in cur.edges()]
        if not choices:
            break
        step = data.draw(st.sampled_from(choices))
        steps.append(step)
        cur = step.apply(cur)
    hist = ContractionHistory.record(g, steps)
    assert hist.replay() == hist.final == cur
    # the final graph is a minor of g via the identity model
    model = hist.lift(MinorModel(cur, cur, {x: frozenset([x]) for x in range(cur.n)}))
    assert model.verify()


def test_verify_model_reports_violations():
    g = path_graph(4)
    k2 = complete_graph(2)
    assert verify_model(MinorModel(g, k2, {0: frozenset([0, 1]), 1: frozenset([2])}))
    assert verify_model(MinorModel(g, k2, {0: frozenset(), 1: frozenset([2])})).kind == "empty"
    assert verify_model(MinorModel(g, k2, {0: frozenset([0, 1]), 1: frozenset([1])})).kind == "overlap"
    assert verify_model(MinorModel(g, k2, {0: frozenset([0, 2]), 1: frozenset([1])})).kind == "disconnected"
    assert verify_model(MinorModel(g, k2, {0: frozenset([0]), 1: frozenset([3])})).kind == "uncovered_edge"
    with pytest.raises(InvalidArgumentError):
        verify_model(MinorModel(g, k2, {0: frozenset([0])}))
    with pytest.raises(InvalidArgumentError):
        verify_model(MinorModel(g, k2, {0: frozenset([0]), 1: frozenset([9])}))


def test_induced_subgraph_keeps_original_labels():
    g = cycle_graph(5)
    sub = g.induced_subgraph([1, 2, 4])
    assert sub.n == 3 and sub.m == 1
    assert sub.label_list() == [1, 2, 4]


def test_graphs_are_hashable_values():
    assert len({complete_graph(3), cycle_graph(3)}) == 1
