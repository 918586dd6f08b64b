"""Small worked examples, each checked against an independent oracle where one applies."""

import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from conftest import to_nx
from minorlab.densify import is_single_step_minimal, minor_minimal_reduce, single_step_minors
from minorlab.domination import RandomSource, check_peeling, connected_dominating_set, is_connected_dominating, peel
from minorlab.enumeration import graphs_of_order
from minorlab.errors import AverageDegreeError, MinDegreeError, PreconditionError
from minorlab.generators import random_k_tree, random_min_degree
from minorlab.graph import (
    Graph,
    MinorModel,
    complete_bipartite_graph,
    complete_graph,
    contract_edge,
    cycle_graph,
    path_graph,
    star_graph,
)
from minorlab.minors import Verdict, brute_force_minor_oracle, find_minor
from minorlab.series_parallel import complete_to_two_tree, embed_two_tree, is_series_parallel, two_tree_order


def fan(n):
    # path 1..n-1 plus a hub 0 joined to all
    return Graph.from_edges(n, [(0, i) for i in range(1, n)] + [(i, i + 1) for i in range(1, n - 1)])


def test_average_degrees():
    assert complete_graph(5).average_degree() == 4
    assert complete_bipartite_graph(2, 3).average_degree() == Fraction(12, 5)
    assert random_k_tree(2, 10, RandomSource(0)).average_degree() == Fraction(17, 5)


def test_contractions_and_triangles():
    assert contract_edge(cycle_graph(4), 0, 1)[0] == cycle_graph(3)
    assert contract_edge(complete_graph(4), 2, 3)[0] == complete_graph(3)
    assert contract_edge(path_graph(3), 1, 2)[0] == path_graph(2)
    for g, want in ((complete_graph(4), 2), (cycle_graph(4), 0), (complete_graph(5), 3)):
        assert {g.triangle_count(u, v) for u, v in g.edges()} == {want}


def test_k33_branch_sets():
    host = complete_bipartite_graph(3, 3)  # a_i = i, b_i = 3 + i
    ok = MinorModel(host, complete_graph(4), {0: frozenset([0]), 1: frozenset([3]),
                                              2: frozenset([1, 4]), 3: frozenset([2, 5])})
    assert ok.verify()
    assert brute_force_minor_oracle(host, complete_graph(4)).verdict is Verdict.FOUND
    bad = MinorModel(host, complete_graph(4), {0: frozenset([0]), 1: frozenset([3]),
                                               2: frozenset([1, 2]), 3: frozenset([4, 5])})
    assert bad.verify().kind == "disconnected"


@pytest.mark.parametrize("host, pattern", [
    (cycle_graph(4), complete_graph(3)),
    (random_k_tree(2, 6, RandomSource(6)), complete_graph(4)),
    (complete_graph(4), complete_graph(4)),
    (star_graph(4), complete_graph(3)),
    (complete_bipartite_graph(3, 3), complete_graph(4)),
])
def test_minor_examples_against_oracle(host, pattern):
    ours = find_minor(host, pattern)
    assert ours.verdict == brute_force_minor_oracle(host, pattern).verdict
    if ours.found:
        assert ours.model.verify()


def _min_cds_size(g):
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            if is_connected_dominating(g, combo):
                return size


def test_cds_examples():
    k6 = complete_graph(6)
    a = connected_dominating_set(k6, RandomSource(0))
    assert len(a) <= 3 and is_connected_dominating(k6, a)
    for g in (complete_bipartite_graph(4, 4), cycle_graph(4)):
        a = connected_dominating_set(g, RandomSource(0))
        assert is_connected_dominating(g, a)
        assert _min_cds_size(g) == 2 <= len(a)


def test_peel_examples():
    g = random_min_degree(20, 12, RandomSource(1))
    res = peel(g, 0, Fraction(1, 2), RandomSource(0))
    assert res.sets == () and res.residuals[0] == g
    res = peel(complete_graph(64), 1, Fraction(1, 2), RandomSource(2))
    a = len(res.sets[0])
    assert a < 12 and res.residuals[1].min_degree() >= 63 - a and res.residuals[1].n >= 64 - 12
    rho = Fraction(6517, 10000)
    # 0.66n alone is below rho*n + 6*log2(n) at n = 256, so peeling must refuse it
    g = random_min_degree(256, math.ceil(0.66 * 256), RandomSource(3))
    with pytest.raises(MinDegreeError):
        peel(g, 3, rho, RandomSource(4))
    need = math.ceil(rho * 256 + 6 * 8)
    g = random_min_degree(256, need, RandomSource(3))
    assert check_peeling(peel(g, 3, rho, RandomSource(4))).ok


def test_minor_minimal_examples():
    for g, D in ((complete_graph(4), 3), (complete_graph(5), 4)):
        gm, hist = minor_minimal_reduce(g, D)
        assert gm == g and not hist.steps
        assert all(h.average_degree() < D for h in single_step_minors(g))
        assert is_single_step_minimal(g, D)
    pendant = Graph.from_edges(6, complete_graph(5).edges() + [(4, 5)])
    assert pendant.average_degree() == Fraction(11, 3)
    with pytest.raises(AverageDegreeError):
        minor_minimal_reduce(pendant, 4)


def test_series_parallel_examples():
    assert not is_series_parallel(complete_graph(4))
    assert is_series_parallel(random_k_tree(2, 9, RandomSource(2)))
    t, _ = complete_to_two_tree(cycle_graph(4))
    assert t.m == 5 and all(t.has_edge(u, v) for u, v in cycle_graph(4).edges())
    k = random_k_tree(2, 7, RandomSource(5))
    assert complete_to_two_tree(k)[0] == k
    assert complete_to_two_tree(path_graph(3))[0] == complete_graph(3)
    assert two_tree_order(complete_graph(3)).steps == ()
    assert two_tree_order(complete_graph(4)) is None
    assert len(two_tree_order(fan(5)).steps) == 2


def test_embedding_examples():
    phi = embed_two_tree(complete_graph(4), complete_graph(3), 4)
    assert len(set(phi.values())) == 3
    diamond = fan(4)
    phi = embed_two_tree(complete_graph(5), diamond, 4)
    assert all(complete_graph(5).has_edge(phi[u], phi[v]) for u, v in diamond.edges())
    matcher = isomorphism.GraphMatcher(to_nx(complete_graph(5)), to_nx(diamond))
    assert matcher.subgraph_is_monomorphic()
    with pytest.raises(PreconditionError):
        embed_two_tree(complete_graph(6), fan(5), 4)


def test_two_tree_is_chordal_treewidth_two():
    g = random_k_tree(2, 12, RandomSource(9))
    width, _ = nx.algorithms.approximation.treewidth_min_degree(to_nx(g))
    assert width == 2


def test_order_eight_class_count():
    # known count of unlabelled graphs on 8 vertices
    assert len(graphs_of_order(8)) == 12346
