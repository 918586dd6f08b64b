"""Bounded falsification of forcing claims and lower-bound witnesses.

A claim "every graph with average degree at least D has an H minor" is
tested against every graph of a finite source. Counterexamples are
re-verified (with the brute-force oracle on small hosts) before they are
reported.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Iterable, Iterator

from .enumeration import MAX_ENUMERATION_ORDER, all_graphs
from .errors import InternalError, InvalidArgumentError
from .formats import to_graph6
from .graph import Graph
from .minors import (
    ORACLE_MAX_HOST,
    SearchBudget,
    Verdict,
    brute_force_minor_oracle,
    find_minor,
)
from .numeric import as_fraction
from .thresholds import FBound

log = logging.getLogger(__name__)

DEFAULT_BATCH = 64


@dataclass
class FalsifyReport:
    pattern: str
    threshold: Fraction
    strict: bool
    source: str
    graphs_read: int = 0
    graphs_examined: int = 0
    minors_found: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    indeterminates: list[str] = field(default_factory=list)
    complete: bool = True

    def merge(self, other: "FalsifyReport") -> "FalsifyReport":
        """Combine two partial reports over disjoint parts of the same source."""
        return FalsifyReport(
            self.pattern, self.threshold, self.strict, self.source,
            self.graphs_read + other.graphs_read,
            self.graphs_examined + other.graphs_examined,
            self.minors_found + other.minors_found,
            sorted(self.counterexamples + other.counterexamples, key=_cx_key),
            sorted(self.indeterminates + other.indeterminates),
            self.complete and other.complete,
        )

    def as_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "threshold": str(self.threshold),
            "comparison": "d(G) > D" if self.strict else "d(G) >= D",
            "source": self.source,
            "graphs_read": self.graphs_read,
            "graphs_examined": self.graphs_examined,
            "minors_found": self.minors_found,
            "counterexamples": self.counterexamples,
            "indeterminates": self.indeterminates,
            "complete": self.complete,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _cx_key(cx: dict):
    return (cx["n"], cx["graph6"])


def meets_threshold(g: Graph, threshold: Fraction, strict: bool) -> bool:
    if g.n == 0:
        return False
    d = g.average_degree()
    return d > threshold if strict else d >= threshold


def _examine(args) -> FalsifyReport:
    pattern, threshold, strict, budget, source, graphs = args
    rep = FalsifyReport(to_graph6(pattern), threshold, strict, source)
    for g in graphs:
        rep.graphs_read += 1
        if not meets_threshold(g, threshold, strict):
            continue
        rep.graphs_examined += 1
        res = find_minor(g, pattern, budget)
        if res.verdict is Verdict.FOUND:
            if not res.model.verify():
                raise InternalError(f"engine returned an invalid certificate for {to_graph6(g)}")
            rep.minors_found += 1
        elif res.verdict is Verdict.INDETERMINATE:
            rep.indeterminates.append(to_graph6(g))
        else:
            oracle = None
            if g.n <= ORACLE_MAX_HOST:
                oracle = brute_force_minor_oracle(g, pattern).verdict is Verdict.NOT_MINOR
                if not oracle:
                    raise InternalError(f"engine and oracle disagree on {to_graph6(g)}")
            rep.counterexamples.append({
                "graph6": to_graph6(g), "n": g.n, "m": g.m,
                "average_degree": str(g.average_degree()),
                "oracle_verified": oracle,
            })
    rep.counterexamples.sort(key=_cx_key)
    rep.indeterminates.sort()
    return rep


def _batches(graphs: Iterable[Graph], size: int) -> Iterator[list[Graph]]:
    it = iter(graphs)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def falsify(pattern: Graph, threshold, source: int | Iterable[Graph], *,
            budget: SearchBudget | None = None, strict: bool = False, jobs: int = 1,
            batch_size: int = DEFAULT_BATCH, description: str | None = None) -> FalsifyReport:
    """Look for graphs meeting the threshold that do not contain ``pattern`` as a minor.

    ``source`` is either ``n_max`` (all isomorphism classes on ``1..n_max``
    vertices) or any iterable of graphs, such as a graph6 stream. With
    ``strict`` the comparison is ``d(G) > threshold``. Work is split into
    fixed-size batches; ``jobs > 1`` spreads them over worker processes and the
    merged report does not depend on completion order. An interrupt returns
    the partial report with ``complete`` set to false.
    """
    threshold = as_fraction(threshold)
    budget = budget or SearchBudget()
    if isinstance(source, int):
        if not 1 <= source <= MAX_ENUMERATION_ORDER:
            raise InvalidArgumentError(
                f"internal enumeration covers n_max <= {MAX_ENUMERATION_ORDER}; supply a graph6 stream beyond that")
        graphs: Iterable[Graph] = all_graphs(source)
        description = description or f"exhaustive: all graphs on 1..{source} vertices"
    else:
        graphs = source
        description = description or "external stream"
    total = FalsifyReport(to_graph6(pattern), threshold, strict, description)
    tasks = ((pattern, threshold, strict, budget, description, chunk)
             for chunk in _batches(graphs, batch_size))
    try:
        if jobs <= 1:
            for task in tasks:
                total = total.merge(_examine(task))
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                pending = set()
                for task in tasks:
                    pending.add(pool.submit(_examine, task))
                    if len(pending) >= 4 * jobs:
                        done, pending = wait(pending, return_when=FIRST_COMPLETED)
                        for fut in done:
                            total = total.merge(fut.result())
                for fut in pending:
                    total = total.merge(fut.result())
    except KeyboardInterrupt:
        log.warning("interrupted; report is partial")
        total.complete = False
    return total


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


@dataclass(frozen=True)
class Witness:
    """Outcome of checking a candidate extremal graph."""

    minor_free: bool | None
    average_degree: Fraction
    verdict: Verdict
    bound: FBound | None = None


def verify_witness(g: Graph, pattern: Graph, budget: SearchBudget | None = None) -> Witness:
    """Decide whether ``g`` avoids ``pattern`` as a minor.

    A minor-free ``g`` certifies that average degree ``d(g)`` does not force
    the pattern, so ``f(pattern) >= d(g)``; that lower bound is returned.
    """
    d = g.average_degree()
    res = find_minor(g, pattern, budget)
    if res.verdict is Verdict.INDETERMINATE:
        return Witness(None, d, res.verdict)
    if res.found:
        return Witness(False, d, res.verdict)
    bound = FBound(pattern, frozenset(), "lower", d, f"witness {to_graph6(g)}", witness=g)
    return Witness(True, d, res.verdict, bound)
