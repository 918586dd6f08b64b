"""Simple undirected graphs on dense integer ids, stored as bitset rows.

Every mutation returns a fresh :class:`Graph`; instances are never modified
after construction, so they can be shared freely between worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import DegenerateInputError, InvalidArgumentError


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _drop_bit(mask: int, v: int) -> int:
    """Remove position ``v`` and shift higher positions down by one."""
    low = mask & ((1 << v) - 1)
    return low | ((mask >> (v + 1)) << v)


def component_of(adj: Sequence[int], start: int, within: int) -> int:
    """Vertices reachable from ``start`` inside the vertex mask ``within``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected_mask(adj: Sequence[int], mask: int) -> bool:
    if not mask:
        return False
    return component_of(adj, lowest(mask), mask) == mask


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge.
    ``labels`` optionally carries external names that survive deletions and
    contractions (the surviving vertex of a contraction keeps its label).
    Equality and hashing are structural and ignore labels.
    """

    __slots__ = ("n", "adj", "labels", "_m")

    def __init__(self, n: int, adj: Sequence[int], labels: Sequence[Hashable] | None = None):
        if len(adj) != n:
            raise InvalidArgumentError(f"adjacency has {len(adj)} rows, expected {n}")
        self.n = n
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise InvalidArgumentError("label map must name every vertex")
        self._m = sum(row.bit_count() for row in self.adj) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgumentError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidArgumentError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    def check(self) -> None:
        """Raise if the rows are not a symmetric irreflexive relation."""
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise InvalidArgumentError(f"row {v} names a vertex >= n")
            if row >> v & 1:
                raise InvalidArgumentError(f"self-loop at {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise InvalidArgumentError(f"asymmetric adjacency {v}->{u}")

    # -- queries -----------------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        if self.n == 0:
            raise DegenerateInputError("minimum degree of the empty graph")
        return min(self.degrees())

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def average_degree(self) -> Fraction:
        if self.n == 0:
            raise DegenerateInputError("average degree of the empty graph")
        return Fraction(2 * self._m, self.n)

    def common_neighbors(self, u: int, v: int) -> int:
        return self.adj[u] & self.adj[v]

    def triangle_count(self, u: int, v: int) -> int:
        if not self.has_edge(u, v):
            raise InvalidArgumentError(f"{u}{v} is not an edge")
        return (self.adj[u] & self.adj[v]).bit_count()

    def neighborhood(self, mask: int) -> int:
        """Open neighbourhood of a vertex set."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def is_connected(self) -> bool:
        return self.n > 0 and is_connected_mask(self.adj, self.all_vertices)

    def components(self) -> list[int]:
        left = self.all_vertices
        out = []
        while left:
            comp = component_of(self.adj, lowest(left), left)
            out.append(comp)
            left &= ~comp
        return out

    def label(self, v: int) -> Hashable:
        return v if self.labels is None else self.labels[v]

    def label_list(self) -> list[Hashable]:
        return list(range(self.n)) if self.labels is None else list(self.labels)

    def is_complete(self) -> bool:
        return self._m == self.n * (self.n - 1) // 2

    # -- mutations (all return new graphs) ----------------------------------

    def with_labels(self, labels: Sequence[Hashable] | None) -> "Graph":
        return Graph(self.n, self.adj, labels)

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise InvalidArgumentError("self-loops are not allowed")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, adj, self.labels)

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise InvalidArgumentError(f"{u}{v} is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj, self.labels)

    def delete_vertex(self, v: int) -> "Graph":
        if not 0 <= v < self.n:
            raise InvalidArgumentError(f"no vertex {v}")
        adj = [_drop_bit(row, v) for i, row in enumerate(self.adj) if i != v]
        labels = None if self.labels is None else self.labels[:v] + self.labels[v + 1:]
        return Graph(self.n - 1, adj, labels)

    def contract_edge(self, u: int, v: int) -> "Graph":
        """Merge ``v`` into ``u``; ``v`` disappears and higher ids shift down."""
        if not self.has_edge(u, v):
            raise InvalidArgumentError(f"cannot contract non-edge {u}{v}")
        adj = list(self.adj)
        merged = (adj[u] | adj[v]) & ~((1 << u) | (1 << v))
        for w in bits(adj[v]):
            adj[w] |= 1 << u
        adj[u] = merged
        for w in bits(merged):
            adj[w] |= 1 << u
        g = Graph(self.n, adj, self.labels)
        return g.delete_vertex(v)

    def induced_subgraph(self, keep: Iterable[int] | int) -> "Graph":
        """Subgraph induced on ``keep`` (a mask or iterable), ids renumbered in order."""
        keep_mask = keep if isinstance(keep, int) else mask_of(keep)
        order = list(bits(keep_mask))
        index = {v: i for i, v in enumerate(order)}
        adj = []
        for v in order:
            row = 0
            for w in bits(self.adj[v] & keep_mask):
                row |= 1 << index[w]
            adj.append(row)
        labels = [self.label(v) for v in order]
        return Graph(len(order), adj, labels)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for w in bits(row):
                new |= 1 << perm[w]
            adj[perm[v]] = new
        return Graph(self.n, adj)

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"

    def __getstate__(self):
        return (self.n, self.adj, self.labels)

    def __setstate__(self, state):
        n, adj, labels = state
        self.n, self.adj, self.labels = n, adj, labels
        self._m = sum(row.bit_count() for row in adj) // 2


# -- named graphs --------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidArgumentError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(s: int, t: int) -> Graph:
    """K_{s,t}: vertices ``0..s-1`` form the first part."""
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def star_graph(t: int) -> Graph:
    """K_{1,t} with centre 0."""
    return complete_bipartite_graph(1, t)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, adj)


# -- free-function forms -------------------------------------------------------


def average_degree(g: Graph) -> Fraction:
    """Exact ``2|E|/n``."""
    return g.average_degree()


def edge_triangle_count(g: Graph, u: int, v: int) -> int:
    """Number of triangles through the edge ``uv``, i.e. ``|N(u) & N(v)|``."""
    return g.triangle_count(u, v)


@dataclass(frozen=True)
class Step:
    """One minor operation. ``kind`` is delete_vertex, delete_edge or contract_edge.

    For contractions ``v`` is merged into ``u``.
    """

    kind: str
    u: int
    v: int | None = None

    def apply(self, g: Graph) -> Graph:
        if self.kind == "delete_vertex":
            return g.delete_vertex(self.u)
        if self.kind == "delete_edge":
            return g.delete_edge(self.u, self.v)
        if self.kind == "contract_edge":
            return g.contract_edge(self.u, self.v)
        raise InvalidArgumentError(f"unknown step kind {self.kind!r}")

    def surviving_id(self) -> int | None:
        if self.kind != "contract_edge":
            return None
        return self.u if self.u < self.v else self.u - 1


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, Step]:
    step = Step("contract_edge", u, v)
    return step.apply(g), step


@dataclass(frozen=True)
class ContractionHistory:
    """Steps taking ``initial`` to ``final``; used to lift minors back to the host."""

    initial: Graph
    steps: tuple[Step, ...]
    final: Graph

    @classmethod
    def identity(cls, g: Graph) -> "ContractionHistory":
        return cls(g, (), g)

    @classmethod
    def record(cls, g: Graph, steps: Iterable[Step]) -> "ContractionHistory":
        steps = tuple(steps)
        cur = g
        for step in steps:
            cur = step.apply(cur)
        return cls(g, steps, cur)

    def replay(self) -> Graph:
        cur = self.initial
        for step in self.steps:
            cur = step.apply(cur)
        return cur

    def then(self, other: "ContractionHistory") -> "ContractionHistory":
        if other.initial != self.final:
            raise InvalidArgumentError("histories do not compose")
        return ContractionHistory(self.initial, self.steps + other.steps, other.final)

    def bags(self) -> list[frozenset[int]]:
        """For each final vertex, the set of initial vertices contracted into it."""
        bags = [frozenset([v]) for v in range(self.initial.n)]
        for step in self.steps:
            if step.kind == "delete_vertex":
                del bags[step.u]
            elif step.kind == "contract_edge":
                bags[step.u] = bags[step.u] | bags[step.v]
                del bags[step.v]
        return bags

    def lift_sets(self, sets: Mapping[int, Iterable[int]]) -> dict[int, frozenset[int]]:
        bags = self.bags()
        return {x: frozenset().union(*(bags[b] for b in bs)) for x, bs in sets.items()}

    def lift(self, model: "MinorModel") -> "MinorModel":
        if model.host != self.final:
            raise InvalidArgumentError("model host is not the final graph of this history")
        return MinorModel(self.initial, model.pattern, self.lift_sets(model.branch_sets))


def deletion_steps(g: Graph, keep: int) -> list[Step]:
    """Steps deleting every vertex outside ``keep``, highest id first."""
    drop = g.all_vertices & ~keep
    return [Step("delete_vertex", v) for v in sorted(bits(drop), reverse=True)]


# -- minor models --------------------------------------------------------------


@dataclass(frozen=True)
class MinorModel:
    """Branch-set certificate that ``pattern`` is a minor of ``host``."""

    host: Graph
    pattern: Graph
    branch_sets: Mapping[int, frozenset[int]]

    def verify(self) -> "ModelReport":
        return verify_model(self)

    def as_json(self) -> dict:
        return {str(x): sorted(self.branch_sets[x]) for x in sorted(self.branch_sets)}


@dataclass(frozen=True)
class ModelReport:
    ok: bool
    kind: str | None = None
    vertices: tuple = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_model(model: MinorModel) -> ModelReport:
    """Check the three branch-set conditions; report the first violation found."""
    host, pattern, sets = model.host, model.pattern, model.branch_sets
    if set(sets) != set(range(pattern.n)):
        missing = sorted(set(range(pattern.n)) - set(sets))
        extra = sorted(set(sets) - set(range(pattern.n)))
        raise InvalidArgumentError(f"branch sets malformed: missing {missing}, unknown {extra}")
    masks = {}
    for x in range(pattern.n):
        bs = sets[x]
        for v in bs:
            if not (isinstance(v, int) and 0 <= v < host.n):
                raise InvalidArgumentError(f"branch set of {x} cites non-vertex {v!r}")
        if not bs:
            return ModelReport(False, "empty", (x,), f"branch set of {x} is empty")
        masks[x] = mask_of(bs)
    used = 0
    owner = {}
    for x in range(pattern.n):
        clash = used & masks[x]
        if clash:
            v = lowest(clash)
            return ModelReport(False, "overlap", (owner[v], x, v),
                               f"branch sets of {owner[v]} and {x} share host vertex {v}")
        used |= masks[x]
        for v in bits(masks[x]):
            owner[v] = x
    for x in range(pattern.n):
        if not is_connected_mask(host.adj, masks[x]):
            return ModelReport(False, "disconnected", (x,),
                               f"branch set of {x} induces a disconnected subgraph")
    for x, y in pattern.edges():
        if not (host.neighborhood(masks[x]) & masks[y]):
            return ModelReport(False, "uncovered_edge", (x, y),
                               f"no host edge joins the branch sets of {x} and {y}")
    return ModelReport(True)
