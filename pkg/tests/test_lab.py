import json
from fractions import Fraction

import pytest

from minorlab.domination import RandomSource
from minorlab.errors import InvalidArgumentError
from minorlab.formats import from_graph6
from minorlab.generators import generate, random_k_tree
from minorlab.graph import complete_graph, star_graph
from minorlab.lab import FalsifyReport, falsify, verify_witness
from minorlab.minors import SearchBudget, find_minor


def test_triangle_threshold_exhaustive():
    rep = falsify(complete_graph(3), 2, 6)
    assert rep.counterexamples == [] and rep.complete
    assert rep.graphs_read == 1 + 2 + 4 + 11 + 34 + 156


def test_below_threshold_counterexamples_are_real():
    rep = falsify(complete_graph(4), Fraction(5, 2), 6)
    assert rep.counterexamples
    for cx in rep.counterexamples:
        g = from_graph6(cx["graph6"])
        assert g.average_degree() >= Fraction(5, 2)
        assert not find_minor(g, complete_graph(4)).found
        assert cx["oracle_verified"] is True


def test_two_tree_stream_counterexample():
    src = generate("two_tree", {"n": 20}, RandomSource(1), count=2)
    rep = falsify(complete_graph(4), 3.5, src, description="two_tree n=20")
    assert len(rep.counterexamples) == 2
    assert rep.counterexamples[0]["average_degree"] == "37/10"


def test_strict_comparison():
    # K_3 has d = 2 exactly, so it is excluded under d > 2
    rep = falsify(complete_graph(4), 2, [complete_graph(3)], strict=True)
    assert rep.graphs_examined == 0
    rep = falsify(complete_graph(4), 2, [complete_graph(3)])
    assert rep.graphs_examined == 1 and len(rep.counterexamples) == 1


def test_parallel_matches_serial():
    serial = falsify(complete_graph(4), 3, 6, batch_size=16)
    parallel = falsify(complete_graph(4), 3, 6, jobs=2, batch_size=16)
    assert serial.as_dict() == parallel.as_dict()


def test_merge_is_order_independent():
    a = falsify(complete_graph(4), 3, [random_k_tree(2, 8, RandomSource(1))])
    b = falsify(complete_graph(4), 3, [random_k_tree(2, 9, RandomSource(2))])
    assert a.merge(b).as_dict() == b.merge(a).as_dict()


def test_budget_exhaustion_is_indeterminate():
    rep = falsify(complete_graph(5), 4, [complete_graph(6)], budget=SearchBudget(node_limit=0))
    assert rep.indeterminates and not rep.counterexamples


def test_enumeration_cap():
    with pytest.raises(InvalidArgumentError):
        falsify(complete_graph(3), 2, 9)


def test_witnesses():
    for t in (3, 4, 5, 6):
        w = verify_witness(complete_graph(t), star_graph(t))
        assert w.minor_free and w.average_degree == t - 1
        assert w.bound.kind == "lower" and w.bound.value == t - 1
    w = verify_witness(random_k_tree(2, 12, RandomSource(0)), complete_graph(4))
    assert w.minor_free and w.average_degree == Fraction(7, 2)
    w = verify_witness(complete_graph(5), complete_graph(5))
    assert w.minor_free is False and w.bound is None
    w = verify_witness(complete_graph(6), complete_graph(6), SearchBudget(node_limit=0))
    assert w.minor_free is None and w.bound is None


def test_report_json_round_trip():
    rep = FalsifyReport("Bw", Fraction(2), False, "x")
    assert json.loads(rep.to_json())["threshold"] == "2"
