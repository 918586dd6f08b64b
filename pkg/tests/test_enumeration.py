import itertools
import random

import networkx as nx
import pytest
from hypothesis import given

from conftest import from_nx, graphs, to_nx
from minorlab.enumeration import all_graphs, canonical_form, graphs_of_order
from minorlab.errors import InvalidArgumentError

# number of unlabelled simple graphs on n vertices
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


@pytest.mark.parametrize("n", sorted(KNOWN_COUNTS))
def test_class_counts(n):
    assert len(graphs_of_order(n)) == KNOWN_COUNTS[n]


def test_matches_graph_atlas_up_to_six():
    # the atlas lists every graph on at most 7 vertices once
    atlas = [from_nx(h) for h in nx.graph_atlas_g() if 1 <= h.number_of_nodes() <= 6]
    ours = list(all_graphs(6))
    assert len(atlas) == len(ours)
    assert {canonical_form(g) for g in atlas} == {canonical_form(g) for g in ours}


def test_representatives_pairwise_non_isomorphic():
    reps = graphs_of_order(5)
    for a, b in itertools.combinations(reps, 2):
        assert not nx.is_isomorphic(to_nx(a), to_nx(b))


@given(graphs(max_n=7))
def test_canonical_form_is_invariant(g):
    perm = list(range(g.n))
    random.Random(g.m).shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_form_separates(a, b):
    same = a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (canonical_form(a) == canonical_form(b)) == same


def test_order_bounds():
    with pytest.raises(InvalidArgumentError):
        graphs_of_order(0)
    with pytest.raises(InvalidArgumentError):
        graphs_of_order(9)
