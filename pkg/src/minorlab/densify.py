"""Minor-minimal reduction and the complete-minor-or-dense-minor dichotomy."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import AverageDegreeError, InvalidArgumentError
from .graph import (
    ContractionHistory,
    Graph,
    MinorModel,
    Step,
    bits,
    complete_graph,
    deletion_steps,
)
from .minors import SearchBudget, find_minor
from .numeric import as_fraction

DENSE_RATIO = Fraction(6518, 10000)
DEFAULT_ORDER = ("vertex", "contract", "edge")
COMPLETE_SEARCH_LIMIT = 14


def _keeps(m: int, n: int, D: Fraction) -> bool:
    return n >= 1 and 2 * m >= D * n


def _best_vertex(g: Graph) -> int:
    degs = g.degrees()
    return min(range(g.n), key=lambda v: (degs[v], v))


def _best_contraction(g: Graph) -> tuple[int, int, int]:
    # fewest triangles: the contraction that loses the fewest edges
    best = None
    for u, v in g.edges():
        tri = (g.adj[u] & g.adj[v]).bit_count()
        if best is None or tri < best[0]:
            best = (tri, u, v)
    return best


def reduction_step(g: Graph, D: Fraction, order: Sequence[str] = DEFAULT_ORDER) -> Step | None:
    """First single-step minor in ``order`` keeping average degree at least ``D``."""
    n, m = g.n, g.m
    for kind in order:
        if kind == "vertex" and n > 1:
            v = _best_vertex(g)
            if _keeps(m - g.degree(v), n - 1, D):
                return Step("delete_vertex", v)
        elif kind == "contract" and m:
            tri, u, v = _best_contraction(g)
            if _keeps(m - 1 - tri, n - 1, D):
                return Step("contract_edge", u, v)
        elif kind == "edge" and m:
            u, v = g.edges()[0]
            if _keeps(m - 1, n, D):
                return Step("delete_edge", u, v)
        elif kind not in DEFAULT_ORDER:
            raise InvalidArgumentError(f"unknown reduction kind {kind!r}")
    return None


def minor_minimal_reduce(g: Graph, D, order: Sequence[str] = DEFAULT_ORDER
                         ) -> tuple[Graph, ContractionHistory]:
    """Greedily pass to single-step minors while the average degree stays at least ``D``.

    The result has average degree at least ``D`` and no single vertex
    deletion, edge deletion or edge contraction keeps it there. With
    ``D = 2t - 4`` every edge of the result lies in at least ``t - 2`` triangles.
    """
    D = as_fraction(D)
    if g.n == 0:
        raise AverageDegreeError("empty graph has no average degree")
    if g.average_degree() < D:
        raise AverageDegreeError(f"average degree {g.average_degree()} is below {D}",
                                 deficit=D - g.average_degree())
    steps = []
    cur = g
    while True:
        step = reduction_step(cur, D, order)
        if step is None:
            break
        steps.append(step)
        cur = step.apply(cur)
    return cur, ContractionHistory(g, tuple(steps), cur)


def single_step_minors(g: Graph):
    """Every graph obtained from ``g`` by one deletion or contraction."""
    for v in range(g.n):
        if g.n > 1:
            yield g.delete_vertex(v)
    for u, v in g.edges():
        yield g.delete_edge(u, v)
        yield g.contract_edge(u, v)


def is_single_step_minimal(g: Graph, D) -> bool:
    D = as_fraction(D)
    if g.average_degree() < D:
        return False
    return all(h.average_degree() < D for h in single_step_minors(g))


# -- dichotomy -----------------------------------------------------------------------


@dataclass(frozen=True)
class DensifyOutcome:
    """``kind`` is ``complete``, ``dense`` or ``failure``."""

    kind: str
    k: int
    model: MinorModel | None = None
    minor: Graph | None = None
    history: ContractionHistory | None = None
    report: dict = field(default_factory=dict)

    @property
    def n(self) -> int | None:
        return None if self.minor is None else self.minor.n

    @property
    def delta(self) -> int | None:
        return None if self.minor is None else self.minor.min_degree()


def dense_clauses(g: Graph, k: int) -> dict[str, bool]:
    """The dense-minor conditions, each evaluated exactly."""
    if g.n == 0:
        return {"delta_ratio": False, "k_le_delta": False, "delta_lt_n": False, "n_le_4k": False}
    delta = g.min_degree()
    return {
        "delta_ratio": delta >= DENSE_RATIO * g.n,
        "k_le_delta": k <= delta,
        "delta_lt_n": delta < g.n,
        "n_le_4k": g.n <= 4 * k,
    }


def _greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    degs = g.degrees()
    for start in sorted(range(g.n), key=lambda v: (-degs[v], v)):
        clique = [start]
        cand = g.adj[start]
        while cand:
            w = max(bits(cand), key=lambda x: ((g.adj[x] & cand).bit_count(), -x))
            clique.append(w)
            cand &= g.adj[w]
        if len(clique) > len(best):
            best = clique
    return best


def _complete_model(host: Graph, k: int, vertices: Sequence[int]) -> MinorModel:
    return MinorModel(host, complete_graph(k), {i: frozenset([v]) for i, v in enumerate(vertices[:k])})


def _candidates(gm: Graph):
    """Dense subgraph candidates: neighbourhoods of low-degree vertices, thinned greedily.

    Yields ``(steps, graph)`` where ``steps`` takes ``gm`` to ``graph`` by deletions.
    """
    yield [], gm
    degs = gm.degrees()
    seen = set()
    for v in sorted(range(gm.n), key=lambda x: (degs[x], x)):
        for keep in (gm.adj[v], gm.adj[v] | 1 << v):
            if keep in seen or not keep:
                continue
            seen.add(keep)
            steps = deletion_steps(gm, keep)
            cur = gm.induced_subgraph(keep).with_labels(None)
            yield list(steps), cur
            while cur.n > 1:
                w = _best_vertex(cur)
                steps.append(Step("delete_vertex", w))
                cur = cur.delete_vertex(w)
                yield list(steps), cur


def dense_or_complete(g: Graph, k: int, budget: SearchBudget | None = None,
                      complete_search_limit: int = COMPLETE_SEARCH_LIMIT) -> DensifyOutcome:
    """Find a ``K_k`` minor or a dense minor with ``n <= 4k`` vertices.

    Best effort: reduce to a minor-minimal graph for average degree ``4k``,
    then scan neighbourhood subgraphs (thinned by repeatedly dropping a
    minimum-degree vertex) for either a ``k``-clique or a minor whose minimum
    degree is at least ``0.6518 n`` with ``k <= delta < n <= 4k``. Small
    reduced graphs are also searched exactly for ``K_k``. Every returned
    certificate is verified; when nothing qualifies the outcome is a failure
    naming the clauses that the closest candidate missed.
    """
    if k < 1:
        raise InvalidArgumentError("k must be at least 1")
    if g.n == 0:
        raise AverageDegreeError("empty graph")
    if g.average_degree() < 4 * k:
        raise AverageDegreeError(f"average degree {g.average_degree()} is below 4k = {4 * k}",
                                 deficit=4 * k - g.average_degree())
    gm, to_gm = minor_minimal_reduce(g, 4 * k)
    best_miss = None
    examined = 0
    for steps, cand in _candidates(gm):
        examined += 1
        clauses = dense_clauses(cand, k)
        if all(clauses.values()):
            history = to_gm.then(ContractionHistory.record(gm, steps))
            if history.final != cand or history.replay() != cand:
                raise AssertionError("dense minor history does not replay")
            return DensifyOutcome("dense", k, minor=cand, history=history,
                                  report={"candidates_examined": examined, "clauses": clauses})
        clique = _greedy_clique(cand)
        if len(clique) >= k:
            history = to_gm.then(ContractionHistory.record(gm, steps))
            model = history.lift(_complete_model(cand, k, clique))
            if not model.verify():
                raise AssertionError("complete minor certificate failed verification")
            return DensifyOutcome("complete", k, model=model,
                                  report={"candidates_examined": examined, "via": "clique"})
        misses = [name for name, ok in clauses.items() if not ok]
        if best_miss is None or len(misses) < len(best_miss[0]):
            best_miss = (misses, cand.n, cand.min_degree() if cand.n else 0)
    if gm.n <= complete_search_limit:
        res = find_minor(gm, complete_graph(k), budget)
        if res.found:
            model = to_gm.lift(res.model)
            if not model.verify():
                raise AssertionError("complete minor certificate failed verification")
            return DensifyOutcome("complete", k, model=model,
                                  report={"candidates_examined": examined, "via": "exact_search"})
    misses, n_best, d_best = best_miss
    return DensifyOutcome("failure", k, report={
        "candidates_examined": examined,
        "reduced_order": gm.n,
        "closest_candidate": {"n": n_best, "delta": d_best, "failed_clauses": misses},
    })
