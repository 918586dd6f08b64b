"""Exact minor containment.

:func:`find_minor` is a branch-and-bound search over branch-set assignments
with host reductions that are safe for the pattern's minimum degree.
:func:`brute_force_minor_oracle` is a deliberately naive cross-check.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from .errors import HostTooLargeError, InvalidArgumentError
from .graph import (
    ContractionHistory,
    Graph,
    MinorModel,
    Step,
    bits,
    component_of,
    is_connected_mask,
    lowest,
)

ORACLE_MAX_HOST = 10


class Verdict(enum.Enum):
    FOUND = "found"
    NOT_MINOR = "not_minor"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SearchBudget:
    """Limits on a single search. ``None`` means unlimited."""

    node_limit: int | None = None
    time_limit: float | None = None


@dataclass
class MinorSearch:
    verdict: Verdict
    model: MinorModel | None = None
    nodes: int = 0
    note: str = ""

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND


class _OutOfBudget(Exception):
    pass


# -- connected subset enumeration ------------------------------------------------


def connected_subsets(adj, free: int, size: int):
    """Yield each connected subset of ``free`` with exactly ``size`` vertices once.

    ESU enumeration: every subset is generated from its lowest vertex, and a
    vertex joins the extension set only through its first discoverer.
    """
    for r in bits(free):
        allowed = free & ~((2 << r) - 1)
        closed = adj[r] | (1 << r)
        yield from _esu(adj, 1 << r, adj[r] & allowed, closed, size - 1, allowed)


def _esu(adj, sub, ext, closed, left, allowed):
    if left == 0:
        yield sub
        return
    while ext:
        low = ext & -ext
        ext ^= low
        w = low.bit_length() - 1
        new_ext = ext | (adj[w] & allowed & ~closed)
        yield from _esu(adj, sub | low, new_ext, closed | adj[w] | low, left - 1, allowed)


# -- host reductions -------------------------------------------------------------


def reduce_host(g: Graph, pattern_min_degree: int) -> ContractionHistory:
    """Shrink ``g`` without changing whether a pattern of the given minimum degree is a minor.

    Degree-0 vertices go when the pattern has no isolated vertex, degree-1
    vertices when its minimum degree is at least 2, and degree-2 vertices are
    suppressed (contracted into a neighbour) when it is at least 3.
    """
    steps: list[Step] = []
    cur = g
    while True:
        step = None
        for v in range(cur.n):
            d = cur.degree(v)
            if d < pattern_min_degree and d <= 1:
                step = Step("delete_vertex", v)
                break
            if d == 2 and pattern_min_degree >= 3:
                step = Step("contract_edge", lowest(cur.adj[v]), v)
                break
        if step is None:
            break
        steps.append(step)
        cur = step.apply(cur)
    return ContractionHistory(g, tuple(steps), cur)


# -- the search ------------------------------------------------------------------


def _pattern_order(h: Graph, core: list[int]) -> list[int]:
    """Connectivity-first order: next is the vertex with most placed neighbours, then highest degree."""
    left = set(core)
    order: list[int] = []
    placed = 0
    while left:
        x = max(left, key=lambda v: ((h.adj[v] & placed).bit_count(), h.degree(v), -v))
        order.append(x)
        placed |= 1 << x
        left.remove(x)
    return order


class _Search:
    def __init__(self, adj, universe, pattern: Graph, order, iso, budget, counter):
        self.adj = adj
        self.universe = universe
        self.order = order
        self.h = len(order)
        self.iso = iso
        pos = {x: i for i, x in enumerate(order)}
        self.earlier = [[pos[y] for y in pattern.neighbors(x) if pos[y] < i] for i, x in enumerate(order)]
        self.deg = [pattern.degree(x) for x in order]
        # later[i][j]: neighbours of position j that sit after position i
        self.later = [[sum(1 for y in pattern.neighbors(order[j]) if pos[y] > i) for j in range(i + 1)]
                      for i in range(self.h)]
        self.budget = budget
        self.counter = counter
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
        self.sets = [0] * self.h
        self.nbhd = [0] * self.h

    def _tick(self):
        self.counter[0] += 1
        n = self.counter[0]
        if self.budget.node_limit is not None and n > self.budget.node_limit:
            raise _OutOfBudget
        if self.deadline is not None and n & 255 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def run(self):
        return self._place(0, 0)

    def _neighborhood(self, mask):
        adj = self.adj
        out = 0
        for v in bits(mask):
            out |= adj[v]
        return out & ~mask

    def _place(self, i, used):
        if i == self.h:
            return True
        free = self.universe & ~used
        max_size = free.bit_count() - (self.h - i - 1) - self.iso
        if max_size < 1:
            return False
        required = [self.nbhd[j] & free for j in self.earlier[i]]
        if not all(required):
            return False
        earlier_sets = 0
        for j in self.earlier[i]:
            earlier_sets |= self.sets[j]
        deg = self.deg[i]
        later_i = self.later[i]
        for size in range(1, max_size + 1):
            for b in connected_subsets(self.adj, free, size):
                self._tick()
                if not all(b & r for r in required):
                    continue
                nb = self._neighborhood(b)
                rest = free & ~b
                if (nb & (rest | earlier_sets)).bit_count() < deg:
                    continue
                self.sets[i] = b
                self.nbhd[i] = nb
                if not self._feasible(i, rest, later_i):
                    continue
                if self._place(i + 1, used | b):
                    return True
        self.sets[i] = 0
        self.nbhd[i] = 0
        return False

    def _feasible(self, i, rest, later_i):
        for j in range(i + 1):
            need = later_i[j]
            if need and (self.nbhd[j] & rest).bit_count() < need:
                return False
        if i + 1 == self.h:
            return True
        # every unplaced vertex must fit in one component of the free region
        comps = None
        for p in range(i + 1, self.h):
            targets = [self.nbhd[j] & rest for j in self.earlier[p] if j <= i]
            if len(targets) < 2:
                continue
            if comps is None:
                comps = []
                left = rest
                while left:
                    c = component_of(self.adj, lowest(left), left)
                    comps.append(c)
                    left &= ~c
            if not any(all(c & t for t in targets) for c in comps):
                return False
        return True


def find_minor(g: Graph, h: Graph, budget: SearchBudget | None = None) -> MinorSearch:
    """Decide whether ``h`` is a minor of ``g``.

    Returns FOUND with a branch-set model of ``h`` in ``g``, NOT_MINOR when the
    whole search space was exhausted, or INDETERMINATE when the budget ran out.
    The search is deterministic.
    """
    if h.n < 1:
        raise InvalidArgumentError("pattern must have at least one vertex")
    budget = budget or SearchBudget()
    if h.n > g.n or h.m > g.m:
        return MinorSearch(Verdict.NOT_MINOR, note="pattern larger than host")
    degrees = h.degrees()
    iso_vertices = [x for x in range(h.n) if degrees[x] == 0]
    core = [x for x in range(h.n) if degrees[x] > 0]
    if not core:
        model = MinorModel(g, h, {x: frozenset([x]) for x in range(h.n)})
        return MinorSearch(Verdict.FOUND, model)

    if iso_vertices:
        history = ContractionHistory.identity(g)
    else:
        history = reduce_host(g, min(degrees))
    host = history.final
    if h.n > host.n or h.m > host.m:
        return MinorSearch(Verdict.NOT_MINOR, note="host reduced below pattern size")

    if len(core) == h.n and h.is_connected():
        universes = [c for c in host.components()
                     if c.bit_count() >= h.n
                     and sum((host.adj[v] & c).bit_count() for v in bits(c)) // 2 >= h.m]
    else:
        universes = [host.all_vertices]

    order = _pattern_order(h, core)
    counter = [0]
    for universe in universes:
        search = _Search(host.adj, universe, h, order, len(iso_vertices), budget, counter)
        try:
            ok = search.run()
        except _OutOfBudget:
            return MinorSearch(Verdict.INDETERMINATE, nodes=counter[0], note="budget exhausted")
        if ok:
            sets = {x: search.sets[i] for i, x in enumerate(order)}
            used = 0
            for m in sets.values():
                used |= m
            spare = universe & ~used
            for x in iso_vertices:
                v = lowest(spare)
                sets[x] = 1 << v
                spare &= ~(1 << v)
            reduced = MinorModel(host, h, {x: frozenset(bits(m)) for x, m in sets.items()})
            return MinorSearch(Verdict.FOUND, history.lift(reduced), nodes=counter[0])
    return MinorSearch(Verdict.NOT_MINOR, nodes=counter[0])


def has_minor(g: Graph, h: Graph, budget: SearchBudget | None = None) -> bool | None:
    """``True``/``False``, or ``None`` if the budget ran out."""
    res = find_minor(g, h, budget)
    if res.verdict is Verdict.INDETERMINATE:
        return None
    return res.found


def brute_force_minor_oracle(g: Graph, h: Graph) -> MinorSearch:
    """Try every tuple of disjoint connected vertex sets, one per pattern vertex.

    Connected sets come from scanning all ``2^n`` subsets, and pattern vertices
    are taken in plain index order, so nothing is shared with :func:`find_minor`.
    """
    if g.n > ORACLE_MAX_HOST:
        raise HostTooLargeError(f"oracle refuses hosts with more than {ORACLE_MAX_HOST} vertices")
    if h.n < 1:
        raise InvalidArgumentError("pattern must have at least one vertex")
    connected = [m for m in range(1, 1 << g.n) if is_connected_mask(g.adj, m)]
    nbhd = {m: g.neighborhood(m) for m in connected}
    back = [[y for y in h.neighbors(x) if y < x] for x in range(h.n)]
    chosen = [0] * h.n

    def assign(x: int, used: int) -> bool:
        if x == h.n:
            return True
        for m in connected:
            if m & used:
                continue
            if all(nbhd[m] & chosen[y] for y in back[x]):
                chosen[x] = m
                if assign(x + 1, used | m):
                    return True
        return False

    if assign(0, 0):
        model = MinorModel(g, h, {x: frozenset(bits(chosen[x])) for x in range(h.n)})
        return MinorSearch(Verdict.FOUND, model)
    return MinorSearch(Verdict.NOT_MINOR)
