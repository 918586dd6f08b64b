"""Isomorph-free enumeration of small graphs by canonical-form deduplication."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import InvalidArgumentError
from .graph import Graph, bits

MAX_ENUMERATION_ORDER = 8


def _refine(adj, cells):
    """Equitable refinement; new cells are ordered by neighbour-count signature."""
    while True:
        cell_masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            cell_masks.append(m)
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple((adj[v] & cm).bit_count() for cm in cell_masks) for v in cell}
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
            for key in sorted(groups):
                out.append(groups[key])
        cells = out
        if not changed:
            return cells


def _code(adj, order) -> int:
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism invariant ``(n, code)``; equal iff the graphs are isomorphic.

    Individualization-refinement without automorphism pruning: every leaf of
    the search tree is a candidate labelling and the largest adjacency code wins.
    """
    adj = g.adj
    best = -1

    def search(cells):
        nonlocal best
        cells = _refine(adj, cells)
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            best = max(best, _code(adj, [c[0] for c in cells]))
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if g.n:
        search([list(range(g.n))])
    return g.n, max(best, 0)


def canonical_graph(g: Graph) -> Graph:
    """A fixed representative of the isomorphism class of ``g``."""
    n, code = canonical_form(g)
    return _from_code(n, code)


def _from_code(n: int, code: int) -> Graph:
    adj = [0] * n
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if code >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, adj)


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, [0]),)
    seen: dict[tuple, tuple[int, int]] = {}
    for base in _classes(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = list(base.adj) + [nbrs]
            for v in bits(nbrs):
                adj[v] |= 1 << (n - 1)
            g = Graph(n, adj)
            key = (tuple(sorted(g.degrees())), canonical_form(g))
            seen.setdefault(key, key[1])
    return tuple(_from_code(n, code) for _, code in sorted(seen.values()))


def graphs_of_order(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of graphs on ``n`` vertices."""
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise InvalidArgumentError(f"internal enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}")
    return _classes(n)


def all_graphs(n_max: int, n_min: int = 1) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from graphs_of_order(n)
