"""Acceptance criteria 1-7; each test prints a PASS/FAIL line in the terminal summary."""

import math
from collections import Counter
from fractions import Fraction

import pytest

from minorlab.domination import RandomSource, check_peeling, connected_dominating_set, is_connected_dominating, peel
from minorlab.enumeration import all_graphs, graphs_of_order
from minorlab.forcing import force_minor
from minorlab.generators import random_k_tree, random_min_degree
from minorlab.graph import complete_bipartite_graph, complete_graph, star_graph
from minorlab.lab import falsify, verify_witness
from minorlab.minors import SearchBudget, Verdict, brute_force_minor_oracle, find_minor
from minorlab.series_parallel import force_sp_minor, is_series_parallel
from minorlab.thresholds import ineq2, threshold_genfh, threshold_larged, threshold_total

N_MAX = 7


def _no_counterexamples(pattern, threshold, strict=False):
    rep = falsify(pattern, threshold, N_MAX, strict=strict)
    assert rep.complete and not rep.indeterminates
    assert rep.counterexamples == [], rep.counterexamples
    assert rep.graphs_examined > 0
    return rep


@pytest.mark.criterion(1, "exhaustive forcing checks on <= 7 vertices")
def test_criterion_1_exhaustive_forcing():
    # K_3 at D = 2; trees sit just below
    _no_counterexamples(complete_graph(3), 2)
    for g in all_graphs(N_MAX):
        if g.is_connected() and g.m == g.n - 1:
            assert g.average_degree() < 2
            assert not find_minor(g, complete_graph(3)).found

    # K_4 at D = 4; a 2-tree on 20 vertices has d = 37/10 and no K_4 minor
    _no_counterexamples(complete_graph(4), 4)
    w = verify_witness(random_k_tree(2, 20, RandomSource(20)), complete_graph(4))
    assert w.minor_free is True and w.average_degree == Fraction(37, 10)

    # K_{1,t} with d > t - 1; K_t is the witness at d = t - 1
    for t in (3, 4):
        _no_counterexamples(star_graph(t), t - 1, strict=True)
        w = verify_witness(complete_graph(t), star_graph(t))
        assert w.minor_free is True and w.average_degree == t - 1

    # K_{2,3} at D = 4
    _no_counterexamples(complete_bipartite_graph(2, 3), 4)


@pytest.mark.criterion(2, "series-parallel forcing, every SP pattern on 3..5 vertices")
def test_criterion_2_series_parallel_completeness():
    patterns = [h for h in all_graphs(5, n_min=3) if is_series_parallel(h)]
    hosts = list(all_graphs(N_MAX))
    counts = Counter()
    for h in patterns:
        threshold = 2 * h.n - 4
        for g in hosts:
            if g.average_degree() < threshold:
                continue
            res = force_sp_minor(g, h)
            assert res.found, (h, g, res.reason)
            assert res.model.verify()
            assert [s["stage"] for s in res.stages][-1] == "verify"
            counts[h.n] += 1
    assert all(counts[t] > 0 for t in (3, 4, 5))


@pytest.mark.criterion(3, "connected dominating sets on 200 seeded graphs")
def test_criterion_3_cds():
    checked = 0
    for n in (16, 64, 256, 512):
        for i in range(50):
            g = random_min_degree(n, (n + 1) // 2, RandomSource(3, (n, i)), p=0.25 if i % 2 else 0.0)
            assert 2 * g.min_degree() >= n
            a = connected_dominating_set(g, RandomSource(3, (n, i, 1)))
            assert is_connected_dominating(g, a)
            assert (1 << len(a)) < n * n  # |A| < 2 log2 n, exactly
            checked += 1
    assert checked == 200


@pytest.mark.criterion(4, "peeling invariants on 100 seeded instances")
def test_criterion_4_peeling():
    rhos = (Fraction(1, 2), Fraction(6517, 10000))
    for i in range(100):
        rho = rhos[i % 2]
        s = 1 + (i // 2) % 3
        n = (128, 256)[(i // 6) % 2]
        delta = math.ceil(rho * n + 2 * s * math.log2(n)) + 1
        assert delta < n
        g = random_min_degree(n, delta, RandomSource(4, (i,)))
        res = peel(g, s, rho, RandomSource(4, (i, 1)))
        check = check_peeling(res)
        assert check.ok, (i, check.as_dict())


@pytest.mark.criterion(5, "engine agrees with brute force on all |G| <= 6, |H| <= 4")
def test_criterion_5_oracle_equivalence():
    assert [len(graphs_of_order(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]
    hosts = list(all_graphs(6))
    patterns = list(all_graphs(4))
    pairs = 0
    for g in hosts:
        for h in patterns:
            a = find_minor(g, h)
            b = brute_force_minor_oracle(g, h)
            assert a.verdict == b.verdict, (g, h)
            if a.found:
                assert a.model.verify()
            pairs += 1
    assert pairs == 208 * 18


@pytest.mark.criterion(6, "relaxed forcing pipeline soundness on 50 instances")
def test_criterion_6_pipeline_soundness(record_property):
    patterns = [h for h in all_graphs(6, n_min=3) if h.m > 0]
    outcomes = Counter()
    for i in range(50):
        src = RandomSource(6, (i,))
        rng = src.rng()
        n = rng.randint(5, 10) if i % 2 == 0 else rng.randint(11, 40)
        g = random_min_degree(n, rng.randint(n // 3, n - 1), src.split(0), p=rng.random() * 0.3)
        h = rng.choice(patterns)
        special = sorted(rng.sample(range(h.n), rng.randint(0, min(2, h.n - 1))))
        res = force_minor(g, h, special, mode="relaxed", source=src.split(1),
                          budget=SearchBudget(node_limit=200_000))
        outcomes[res.status] += 1
        if res.found:
            assert res.model.verify()
            assert res.model.host == g and res.model.pattern == h
            if n <= 10:
                assert brute_force_minor_oracle(g, h).verdict is Verdict.FOUND
    assert sum(outcomes.values()) == 50
    record_property("outcomes", dict(sorted(outcomes.items())))


@pytest.mark.criterion(7, "threshold calculator values")
def test_criterion_7_calculators():
    rel = 1e-12
    assert threshold_larged(100, 0, math.e ** 4, d0=1) == pytest.approx(779.0, rel=rel)
    assert threshold_larged(100, 0, math.e, d0=2) == pytest.approx(389.5, rel=rel)
    assert threshold_genfh(10, 1) == 80
    assert threshold_genfh(10, 0.5) == 60
    assert threshold_genfh(7.2, 0.1) == 32
    assert threshold_total(100, 0, 0, epsilon=Fraction(1, 1000)).value == 404
    assert ineq2(10 ** 6, 4).extra["lower"] == pytest.approx(10 ** 6 + 2, rel=rel)
