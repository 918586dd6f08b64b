"""Connected dominating sets in dense graphs, and iterated peeling.

A graph with minimum degree at least n/2 has a connected dominating set of
fewer than 2*log2(n) vertices: a random sample of floor(log2 n) vertices
dominates with positive probability, and consecutive sample vertices are
joined through a common neighbour. :func:`peel` removes such sets one after
another while the minimum degree stays high enough.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MinDegreeError, MinorLabError
from .graph import Graph, bits, is_connected_mask, lowest, mask_of
from .numeric import as_fraction, cmp_log2, lt_two_log2

log = logging.getLogger(__name__)

MAX_SAMPLE_ATTEMPTS = 64


class DominationFailure(MinorLabError):
    pass


@dataclass(frozen=True)
class RandomSource:
    """Seeded, splittable randomness: equal ``(seed, stream)`` give equal draws."""

    seed: int
    stream: tuple[int, ...] = ()

    def split(self, index: int) -> "RandomSource":
        return RandomSource(self.seed, self.stream + (index,))

    def rng(self) -> random.Random:
        key = "/".join(str(part) for part in (self.seed,) + self.stream)
        return random.Random(f"minorlab:{key}")


def dominates(g: Graph, mask: int) -> bool:
    covered = mask
    for v in bits(mask):
        covered |= g.adj[v]
    return covered == g.all_vertices


def is_connected_dominating(g: Graph, vertices) -> bool:
    mask = vertices if isinstance(vertices, int) else mask_of(vertices)
    return dominates(g, mask) and is_connected_mask(g.adj, mask)


@dataclass(frozen=True)
class CDSRun:
    vertices: frozenset[int]
    sample: tuple[int, ...]
    connectors: tuple[int, ...]
    attempts: int
    method: str


def _connect_chain(g: Graph, chain: list[int]) -> list[int]:
    """Connector for each consecutive pair: the next vertex if adjacent, else a common neighbour."""
    connectors = []
    for a, b in zip(chain, chain[1:]):
        if g.has_edge(a, b):
            connectors.append(b)
            continue
        common = g.common_neighbors(a, b)
        if not common:
            raise DominationFailure(f"{a} and {b} have no common neighbour")
        connectors.append(lowest(common))
    return connectors


def _greedy_dominating(g: Graph) -> list[int]:
    chosen: list[int] = []
    covered = 0
    full = g.all_vertices
    while covered != full:
        best = max(range(g.n), key=lambda v: ((((g.adj[v] | 1 << v) & ~covered)).bit_count(), -v))
        chosen.append(best)
        covered |= g.adj[best] | 1 << best
    return chosen


def sample_connected_dominating_set(g: Graph, source: RandomSource,
                                    max_attempts: int = MAX_SAMPLE_ATTEMPTS) -> CDSRun:
    """Run the sampling construction and report how the set was obtained."""
    n = g.n
    if n < 2:
        raise MinDegreeError("need at least two vertices")
    delta = g.min_degree()
    if 2 * delta < n:
        raise MinDegreeError(f"minimum degree {delta} is below n/2 = {n / 2}",
                             deficit=Fraction(n, 2) - delta)
    r = n.bit_length() - 1  # floor(log2 n)
    rng = source.rng()
    for attempt in range(1, max_attempts + 1):
        sample = rng.sample(range(n), r)
        if dominates(g, mask_of(sample)):
            method = "sampled"
            break
    else:
        attempt = max_attempts
        sample = _greedy_dominating(g)
        method = "greedy"
        log.info("sampling failed %d times; greedy fallback", max_attempts)
    connectors = _connect_chain(g, sample)
    vertices = frozenset(sample) | frozenset(connectors)
    if not lt_two_log2(len(vertices), n):
        raise DominationFailure(
            f"{method} set has {len(vertices)} vertices, not below 2*log2({n})")
    if not is_connected_dominating(g, vertices):
        raise DominationFailure("constructed set is not a connected dominating set")
    return CDSRun(vertices, tuple(sample), tuple(connectors), attempt, method)


def connected_dominating_set(g: Graph, source: RandomSource) -> frozenset[int]:
    """Connected dominating set of fewer than ``2*log2(n)`` vertices.

    Requires minimum degree at least ``n/2``.
    """
    return sample_connected_dominating_set(g, source).vertices


def spanning_tree_cds(g: Graph) -> frozenset[int]:
    """Internal vertices of a BFS tree; any connected graph, no size guarantee."""
    if not g.is_connected():
        raise DominationFailure("graph is disconnected, so it has no connected dominating set")
    if g.n <= 2:
        return frozenset([0])
    parent = {0: None}
    queue = [0]
    for v in queue:
        for w in bits(g.adj[v]):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return frozenset(p for p in parent.values() if p is not None)


# -- peeling -----------------------------------------------------------------------


def _degree_margin_sign(delta: int, rho: Fraction, n: int, rounds_left: int) -> int:
    """Sign of ``delta - (rho*n + 2*rounds_left*log2 n)``."""
    slack = delta - rho * n
    if rounds_left == 0:
        return (slack > 0) - (slack < 0)
    return cmp_log2(slack / (2 * rounds_left), n)


def peel_requirement(n: int, s: int, rho) -> float:
    """``rho*n + 2*s*log2(n)`` as a float, for reports."""
    return float(as_fraction(rho)) * n + 2 * s * math.log2(n)


@dataclass(frozen=True)
class PeelingResult:
    """Sets ``A_1..A_s`` (ids of the input graph) and residual graphs ``G_0..G_s``.

    Residual graphs carry the input ids as labels.
    """

    rho: Fraction
    s: int
    n: int
    sets: tuple[frozenset[int], ...]
    residuals: tuple[Graph, ...]
    methods: tuple[str, ...] = field(default=())

    def check(self) -> "PeelingCheck":
        return check_peeling(self)


@dataclass(frozen=True)
class PeelingCheck:
    connected_dominating: tuple[bool, ...]
    size_bound: tuple[bool, ...]
    min_degree: tuple[bool, ...]
    min_degree_weak: tuple[bool, ...]
    order: tuple[bool, ...]
    cross_adjacency: bool

    @property
    def ok(self) -> bool:
        return (all(self.connected_dominating) and all(self.size_bound)
                and all(self.min_degree) and all(self.order) and self.cross_adjacency)

    def as_dict(self) -> dict:
        return {
            "a_connected_dominating": list(self.connected_dominating),
            "b_size_below_2log2n": list(self.size_bound),
            "c_min_degree": list(self.min_degree),
            "c_min_degree_minus_form": list(self.min_degree_weak),
            "d_order": list(self.order),
            "cross_peel_adjacency": self.cross_adjacency,
            "ok": self.ok,
        }


def check_peeling(res: PeelingResult) -> PeelingCheck:
    """Evaluate items (a)-(d) and cross-peel adjacency with exact arithmetic.

    Item (c) is checked in its stated ``+`` form and also in the weaker
    ``rho*n - 2(s-i)log2 n`` form that appears in the inductive step.
    """
    n, s, rho = res.n, res.s, res.rho
    g0 = res.residuals[0]
    a, b, c, c_weak, d = [], [], [], [], []
    for i in range(1, s + 1):
        prev = res.residuals[i - 1]
        index = {lab: k for k, lab in enumerate(prev.label_list())}
        local = [index.get(v) for v in res.sets[i - 1]]
        a.append(None not in local and is_connected_dominating(prev, local))
        b.append(lt_two_log2(len(res.sets[i - 1]), n))
    for i in range(0, s + 1):
        gi = res.residuals[i]
        delta = gi.min_degree() if gi.n else 0
        c.append(_degree_margin_sign(delta, rho, n, s - i) >= 0)
        slack = delta - rho * n
        if s - i == 0:
            c_weak.append(slack >= 0)
        else:
            # delta >= rho n - 2(s-i) log2 n  <=>  -slack/(2(s-i)) <= log2 n
            c_weak.append(cmp_log2(-slack / (2 * (s - i)), n) <= 0)
        missing = n - gi.n
        if i == 0:
            d.append(missing <= 0)
        else:
            d.append(cmp_log2(Fraction(missing, 2 * i), n) <= 0)
    cross = True
    for i in range(s):
        ai = mask_of(res.sets[i])
        reach = ai | g0.neighborhood(ai)
        for j in range(i + 1, s):
            if mask_of(res.sets[j]) & ~reach:
                cross = False
    return PeelingCheck(tuple(a), tuple(b), tuple(c), tuple(c_weak), tuple(d), cross)


def peel(g: Graph, s: int, rho, source: RandomSource, *, enforce: bool = True) -> PeelingResult:
    """Remove ``s`` successive connected dominating sets.

    With ``enforce`` the input must have minimum degree at least
    ``rho*n + 2*s*log2(n)`` and every round uses the sampling construction.
    Without it the precondition is skipped and rounds whose residual graph is
    too sparse for sampling fall back to :func:`spanning_tree_cds`; the
    returned result then has to be judged by :func:`check_peeling`.
    """
    rho = as_fraction(rho)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if rho < Fraction(1, 2):
        raise ValueError(f"rho must be at least 1/2, got {rho}")
    n = g.n
    base = g.with_labels(None)
    if enforce and n:
        delta = g.min_degree()
        if _degree_margin_sign(delta, rho, n, s) < 0:
            need = peel_requirement(n, s, rho)
            raise MinDegreeError(
                f"minimum degree {delta} is below rho*n + 2*s*log2(n) = {need:.4f}",
                deficit=need - delta)
    residuals = [base.induced_subgraph(base.all_vertices)]
    sets: list[frozenset[int]] = []
    methods: list[str] = []
    removed = 0
    for i in range(1, s + 1):
        prev = residuals[-1]
        if prev.n >= 2 and 2 * prev.min_degree() >= prev.n:
            run = sample_connected_dominating_set(prev, source.split(i))
            local, method = run.vertices, run.method
        elif enforce:
            raise MinDegreeError(f"round {i}: residual graph lost the n/2 minimum degree")
        elif prev.n == 0:
            raise DominationFailure(f"round {i}: nothing left to peel")
        else:
            local, method = spanning_tree_cds(prev), "spanning_tree"
        chosen = frozenset(prev.label(v) for v in local)
        sets.append(chosen)
        methods.append(method)
        removed |= mask_of(chosen)
        residuals.append(base.induced_subgraph(base.all_vertices & ~removed))
    return PeelingResult(rho, s, n, tuple(sets), tuple(residuals), tuple(methods))
