"""Graph families used by the falsifier and the property suites."""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .domination import RandomSource
from .errors import InvalidArgumentError
from .graph import (
    Graph,
    bits,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
)
from .series_parallel import k_tree_order

FAMILIES = ("complete", "complete_bipartite", "k_tree", "two_tree", "random_min_degree", "cycle", "path")


def random_k_tree(k: int, n: int, source: RandomSource) -> Graph:
    """k-tree on ``n`` vertices; each new vertex attaches to a uniformly chosen k-clique."""
    if k < 1 or n < k + 1:
        raise InvalidArgumentError(f"a {k}-tree needs at least {k + 1} vertices")
    rng = source.rng()
    adj = list(complete_graph(k + 1).adj) + [0] * (n - k - 1)
    cliques = list(combinations(range(k + 1), k))
    for v in range(k + 1, n):
        clique = cliques[rng.randrange(len(cliques))]
        for a in clique:
            adj[a] |= 1 << v
            adj[v] |= 1 << a
        cliques.extend(tuple(sorted(c + (v,))) for c in combinations(clique, k - 1))
    return Graph(n, adj)


def random_min_degree(n: int, delta: int, source: RandomSource, p: float = 0.0) -> Graph:
    """Random graph with minimum degree at least ``delta``.

    Starts from ``G(n, p)`` and then gives every deficient vertex random new
    neighbours until its degree reaches ``delta``.
    """
    if not 0 <= delta < n:
        raise InvalidArgumentError(f"need 0 <= delta < n, got delta={delta}, n={n}")
    rng = source.rng()
    adj = [0] * n
    if p > 0:
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
    full = (1 << n) - 1
    for v in rng.sample(range(n), n):
        missing = delta - adj[v].bit_count()
        if missing <= 0:
            continue
        pool = list(bits(full & ~adj[v] & ~(1 << v)))
        for w in rng.sample(pool, missing):
            adj[v] |= 1 << w
            adj[w] |= 1 << v
    return Graph(n, adj)


def family_predicate(family: str, params: dict, g: Graph) -> bool:
    if family == "complete":
        return g.n == params["t"] and g.is_complete()
    if family == "complete_bipartite":
        return g == complete_bipartite_graph(params["s"], params["t"])
    if family == "k_tree":
        return g.n == params["n"] and k_tree_order(g, params["k"]) is not None
    if family == "two_tree":
        return g.n == params["n"] and k_tree_order(g, 2) is not None
    if family == "random_min_degree":
        return g.n == params["n"] and g.min_degree() >= params["delta"]
    if family == "cycle":
        return g == cycle_graph(params["n"])
    if family == "path":
        return g == path_graph(params["n"])
    raise InvalidArgumentError(f"unknown family {family!r}")


def _build(family: str, params: dict, source: RandomSource) -> Graph:
    if family == "complete":
        return complete_graph(params["t"])
    if family == "complete_bipartite":
        return complete_bipartite_graph(params["s"], params["t"])
    if family == "k_tree":
        return random_k_tree(params["k"], params["n"], source)
    if family == "two_tree":
        return random_k_tree(2, params["n"], source)
    if family == "random_min_degree":
        return random_min_degree(params["n"], params["delta"], source, params.get("p", 0.0))
    if family == "cycle":
        return cycle_graph(params["n"])
    if family == "path":
        return path_graph(params["n"])
    raise InvalidArgumentError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def generate(family: str, params: dict, source: RandomSource, count: int = 1) -> Iterator[Graph]:
    """Yield ``count`` graphs of ``family``; graph ``i`` draws from ``source.split(i)``."""
    for i in range(count):
        g = _build(family, params, source.split(i))
        if not family_predicate(family, params, g):
            raise AssertionError(f"generated graph violates the {family} predicate")
        yield g
