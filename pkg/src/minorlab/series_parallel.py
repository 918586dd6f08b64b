"""Series-parallel graphs, 2-trees, and forcing a series-parallel minor.

A graph of average degree at least ``2t - 4`` has a minor in which every
edge lies in at least ``t - 2`` triangles (see
:func:`minorlab.densify.minor_minimal_reduce`). Any 2-tree on at most ``t``
vertices embeds in such a graph as a subgraph by following its construction
order, and every series-parallel graph on ``t`` vertices is a spanning
subgraph of some 2-tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .densify import minor_minimal_reduce
from .errors import DegenerateInputError, InternalError, InvalidArgumentError, PreconditionError
from .graph import Graph, MinorModel, bits, lowest, mask_of
from .outcomes import ForceResult


@dataclass(frozen=True)
class KTreeOrder:
    """Construction of a k-tree: a base clique, then ``(vertex, attachment clique)`` steps."""

    k: int
    n: int
    base: tuple[int, ...]
    steps: tuple[tuple[int, tuple[int, ...]], ...]

    def replay(self) -> Graph:
        """Rebuild the graph, checking every attachment clique exists when used."""
        adj = [0] * self.n
        present = 0
        for i, u in enumerate(self.base):
            present |= 1 << u
            for v in self.base[i + 1:]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        for v, clique in self.steps:
            if present >> v & 1:
                raise InvalidArgumentError(f"vertex {v} added twice")
            for i, a in enumerate(clique):
                if not present >> a & 1:
                    raise InvalidArgumentError(f"attachment vertex {a} not yet present")
                for b in clique[i + 1:]:
                    if not adj[a] >> b & 1:
                        raise InvalidArgumentError(f"attachment {clique} is not a clique")
            for a in clique:
                adj[a] |= 1 << v
                adj[v] |= 1 << a
            present |= 1 << v
        if present != (1 << self.n) - 1:
            raise InvalidArgumentError("order does not cover every vertex")
        return Graph(self.n, adj)


TwoTreeOrder = KTreeOrder


def _is_clique(adj, mask: int) -> bool:
    return all((adj[v] & mask) == mask & ~(1 << v) for v in bits(mask))


def k_tree_order(g: Graph, k: int) -> KTreeOrder | None:
    """Construction order of ``g`` as a k-tree, or ``None`` if it is not one.

    Peels simplicial degree-``k`` vertices until a ``(k+1)``-clique remains.
    """
    n = g.n
    if n < k + 1 or g.m != k * n - k * (k + 1) // 2:
        return None
    alive = g.all_vertices
    removed = []
    while alive.bit_count() > k + 1:
        for v in bits(alive):
            nb = g.adj[v] & alive
            if nb.bit_count() == k and _is_clique(g.adj, nb):
                removed.append((v, tuple(bits(nb))))
                alive &= ~(1 << v)
                break
        else:
            return None
    if not _is_clique(g.adj, alive):
        return None
    order = KTreeOrder(k, n, tuple(bits(alive)), tuple(reversed(removed)))
    if order.replay() != g:
        return None
    return order


def two_tree_order(t_graph: Graph) -> KTreeOrder | None:
    """Construction order from ``K_3`` by attaching vertices to edges, or ``None``."""
    return k_tree_order(t_graph, 2)


def _eliminate(h: Graph, stop_at: int):
    """Repeatedly remove a vertex of degree <= 2, joining its two neighbours.

    Returns ``(sequence, remaining_mask)`` where ``sequence`` holds
    ``(vertex, neighbour_mask_at_removal)``; ``remaining_mask`` is nonzero
    above ``stop_at`` only when no vertex of degree <= 2 was left.
    """
    adj = list(h.adj)
    alive = h.all_vertices
    seq = []
    while alive.bit_count() > stop_at:
        for v in bits(alive):
            nb = adj[v] & alive
            if nb.bit_count() <= 2:
                break
        else:
            return seq, alive
        if nb.bit_count() == 2:
            a, b = bits(nb)
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        seq.append((v, nb))
        alive &= ~(1 << v)
    return seq, alive


def is_series_parallel(h: Graph) -> bool:
    """True iff ``h`` has no ``K_4`` minor.

    Reduction rules: drop vertices of degree at most 1, and replace a
    degree-2 vertex by an edge between its neighbours (merging duplicates).
    The graph is series-parallel iff this empties it.
    """
    _, left = _eliminate(h, 0)
    return left == 0


def complete_to_two_tree(h: Graph) -> tuple[Graph, KTreeOrder]:
    """A 2-tree ``T`` on the vertices of ``h`` with ``E(h)`` contained in ``E(T)``."""
    if h.n < 3:
        raise DegenerateInputError("a 2-tree needs at least 3 vertices")
    seq, left = _eliminate(h, 3)
    if left.bit_count() > 3 or not is_series_parallel(h):
        raise InvalidArgumentError("graph has a K_4 minor, so it is not series-parallel")
    base = tuple(bits(left))
    adj = [0] * h.n
    for i, u in enumerate(base):
        for v in base[i + 1:]:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    steps = []
    for v, nb in reversed(seq):
        nbrs = list(bits(nb))
        if len(nbrs) == 2:
            edge = (nbrs[0], nbrs[1])
        elif len(nbrs) == 1:
            a = nbrs[0]
            edge = tuple(sorted((a, lowest(adj[a]))))
        else:
            edge = (base[0], base[1])
        for a in edge:
            adj[a] |= 1 << v
            adj[v] |= 1 << a
        steps.append((v, edge))
    order = KTreeOrder(2, h.n, base, tuple(steps))
    t_graph = order.replay()
    if any(not t_graph.has_edge(u, v) for u, v in h.edges()):
        raise InternalError("completion dropped an edge")
    if two_tree_order(t_graph) is None:
        raise InternalError("completion is not a 2-tree")
    return t_graph, order


def embed_two_tree(gmin: Graph, h0: Graph, t: int) -> dict[int, int]:
    """Injective map ``V(h0) -> V(gmin)`` that is a subgraph embedding.

    ``h0`` must be a 2-tree on at most ``t`` vertices and every edge of
    ``gmin`` must lie in at least ``t - 2`` triangles. Each new vertex goes to
    the lowest unused common neighbour of the images of its attachment edge;
    the triangle count guarantees one exists.
    """
    order = two_tree_order(h0)
    if order is None:
        raise PreconditionError("pattern is not a 2-tree")
    if h0.n > t:
        raise PreconditionError(f"pattern has {h0.n} vertices, more than t = {t}")
    if t < 3:
        raise PreconditionError("t must be at least 3")
    edges = gmin.edges()
    if not edges:
        raise PreconditionError("host has no edges")
    for u, v in edges:
        if (gmin.adj[u] & gmin.adj[v]).bit_count() < t - 2:
            raise PreconditionError(f"host edge {u}{v} lies in fewer than t - 2 = {t - 2} triangles")
    u, v = edges[0]
    w = lowest(gmin.adj[u] & gmin.adj[v])
    phi = dict(zip(order.base, (u, v, w)))
    used = mask_of(phi.values())
    for x, (a, b) in order.steps:
        cand = gmin.adj[phi[a]] & gmin.adj[phi[b]] & ~used
        if not cand:
            raise InternalError(
                f"no free common neighbour for edge {phi[a]}{phi[b]}: the triangle count argument failed")
        phi[x] = lowest(cand)
        used |= 1 << phi[x]
    for a, b in h0.edges():
        if not gmin.has_edge(phi[a], phi[b]):
            raise InternalError("embedding lost an edge")
    return phi


def force_sp_minor(g: Graph, h: Graph) -> ForceResult:
    """Find ``h`` as a minor of ``g`` when ``d(g) >= 2t - 4``.

    Reduces ``g`` to a single-step minor-minimal graph, completes ``h`` to a
    2-tree, embeds the 2-tree greedily and lifts the embedding back through
    the reduction history. Below the threshold the result is ``not_forced``,
    which says nothing about whether ``h`` is a minor.
    """
    t = h.n
    if t < 1:
        raise DegenerateInputError("pattern must have a vertex")
    if not is_series_parallel(h):
        raise InvalidArgumentError("pattern is not series-parallel")
    threshold = Fraction(2 * t - 4)
    d = g.average_degree() if g.n else Fraction(0)
    stages = [{"stage": "threshold", "average_degree": str(d), "threshold": str(threshold)}]
    if t <= 2:
        # below the base triangle: place the pattern directly
        if h.m:
            sets = {0: g.edges()[0][0], 1: g.edges()[0][1]} if g.m else None
        else:
            sets = {x: x for x in range(t)} if g.n >= t else None
        if sets is None:
            return ForceResult("not_forced", None, stages, reason="host too small for a direct embedding")
        model = MinorModel(g, h, {x: frozenset([v]) for x, v in sets.items()})
        if not model.verify():
            raise InternalError("direct embedding failed verification")
        return ForceResult("found", model, stages + [{"stage": "direct", "verdict": "found"}])
    if g.n == 0 or d < threshold:
        return ForceResult("not_forced", None, stages,
                           reason=f"average degree {d} is below 2t - 4 = {threshold}")
    gmin, history = minor_minimal_reduce(g, threshold)
    stages.append({"stage": "reduce", "order": gmin.n, "size": gmin.m, "steps": len(history.steps)})
    t_graph, _ = complete_to_two_tree(h)
    stages.append({"stage": "complete", "added_edges": t_graph.m - h.m})
    phi = embed_two_tree(gmin, t_graph, t)
    stages.append({"stage": "embed", "map": {str(x): phi[x] for x in sorted(phi)}})
    reduced = MinorModel(gmin, h, {x: frozenset([phi[x]]) for x in range(t)})
    model = history.lift(reduced)
    report = model.verify()
    if not report:
        raise InternalError(f"lifted certificate failed verification: {report.message}")
    stages.append({"stage": "verify", "ok": True})
    return ForceResult("found", model, stages)
