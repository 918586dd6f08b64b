"""Forcing pipeline: densify, peel, embed ``H - S``, contract the peeled sets into ``S``.

Strict mode refuses to run unless the theorem hypotheses hold at the
supplied parameters. Relaxed mode runs the same stages at desk scale with
the asymptotic guards switched off; there a ``found`` result is still fully
verified, but ``not_forced`` and ``failure`` say nothing about ``G``.
"""

from __future__ import annotations

import hashlib
import logging
import math
from fractions import Fraction
from typing import Iterable

from .densify import dense_or_complete
from .domination import DominationFailure, RandomSource, check_peeling, peel
from .errors import InternalError, InvalidArgumentError, MinDegreeError
from .formats import to_graph6
from .graph import ContractionHistory, Graph, MinorModel
from .minors import SearchBudget, Verdict, find_minor
from .outcomes import ForceResult
from .thresholds import (
    DEFAULT_D0,
    GENFH_RHO,
    LARGED_RHO,
    LARGED_S_FACTOR,
    Check,
    ThresholdParams,
    ineq1,
    ineq2,
    ineq3,
    ineq4,
    ineq5,
    ineq6,
    sparse_bound,
    threshold_genfh,
    threshold_larged,
    threshold_total,
)

log = logging.getLogger(__name__)

MODES = ("strict", "relaxed")

__all__ = [
    "DEFAULT_D0", "ThresholdParams", "force_minor", "ineq1", "ineq2", "ineq3", "ineq4", "ineq5",
    "ineq6", "sparse_bound", "strict_checks", "threshold_genfh", "threshold_larged", "threshold_total",
]


def _digest(g: Graph) -> str:
    return hashlib.sha256(to_graph6(g).encode()).hexdigest()[:16]


def strict_checks(g: Graph, params: ThresholdParams) -> list[Check]:
    """Hypotheses of the selected theorem, each quoting its inequality."""
    t, s = params.t, params.s
    d_g = g.average_degree() if g.n else Fraction(0)
    checks = [Check("t >= 3", t >= 3)]
    if params.theorem == "larged":
        lim = float(LARGED_S_FACTOR) * t / math.log(t) if t >= 3 else 0.0
        checks.append(Check("s <= 1e-5 * t / ln t", s <= lim, f"limit {lim:.6g}"))
        checks.append(Check("d(H-S) >= d0", params.d >= params.d0, f"d = {float(params.d):.6g}"))
        need = params.larged_threshold
        checks.append(Check("d(G) >= 3.895 t sqrt(ln d(H-S))", d_g >= need,
                            f"d(G) = {d_g}, need {need:.6g}"))
    else:
        lim = float(params.epsilon) / 100 * t / math.log(t) if t >= 3 else 0.0
        checks.append(Check("s <= (epsilon/100) * t / ln t", s <= lim, f"limit {lim:.6g}"))
        need = params.genfh_threshold
        checks.append(Check("d(G) >= 4 ceil((1 + epsilon) f(H-S))", d_g >= need,
                            f"d(G) = {d_g}, need {need}"))
    return checks


def _proof_k(params: ThresholdParams) -> int:
    return params.k_larged if params.theorem == "larged" else params.k_genfh


def force_minor(g: Graph, h: Graph, special: Iterable[int] = (), params: ThresholdParams | None = None,
                mode: str = "relaxed", source: RandomSource | None = None,
                budget: SearchBudget | None = None) -> ForceResult:
    """Build an ``h`` minor in ``g`` along the densify / peel / embed / contract route.

    ``special`` is the high-degree set ``S``; its ``i``-th vertex (in sorted
    order) becomes the contracted ``i``-th peeled set. Every ``found``
    certificate is checked with :func:`minorlab.graph.verify_model` before it
    is returned.
    """
    if mode not in MODES:
        raise InvalidArgumentError(f"mode must be one of {MODES}")
    if h.n == 0:
        raise InvalidArgumentError("pattern must have a vertex")
    S = sorted(set(special))
    if any(not 0 <= x < h.n for x in S):
        raise InvalidArgumentError(f"special set {S} is not a subset of the pattern's vertices")
    params = params or ThresholdParams.for_pattern(h, S)
    if (params.t, params.s) != (h.n - len(S), len(S)):
        raise InvalidArgumentError("params do not match the pattern and special set")
    source = source or RandomSource(0)
    strict = mode == "strict"
    rho = LARGED_RHO if params.theorem == "larged" else GENFH_RHO
    k_proof = _proof_k(params)
    stages: list[dict] = [{
        "stage": "setup", "mode": mode, "theorem": params.theorem, "t": params.t, "s": params.s,
        "d_H_minus_S": str(params.d), "rho": str(rho), "k_proof": k_proof, "host": _digest(g),
        "pattern": to_graph6(h), "special": S,
    }]
    if not strict:
        stages[0]["note"] = "relaxed: asymptotic guards skipped, completeness not claimed"

    if strict:
        checks = strict_checks(g, params)
        stages.append({"stage": "hypotheses", "checks": [c.as_dict() for c in checks]})
        failed = [c.inequality for c in checks if not c.holds]
        if failed:
            return ForceResult("not_forced", None, stages, reason="hypothesis fails: " + "; ".join(failed))

    # stage 1: complete minor or dense minor
    d_g = g.average_degree() if g.n else Fraction(0)
    k = k_proof if strict else max(1, min(k_proof, math.floor(d_g / 4)))
    work, history = g, ContractionHistory.identity(g)
    if d_g >= 4 * k and g.n:
        outcome = dense_or_complete(g, k, budget)
        rec = {"stage": "densify", "k": k, "input": _digest(g), "verdict": outcome.kind,
               "report": outcome.report}
        stages.append(rec)
        if outcome.kind == "complete" and k >= h.n:
            sets = {x: outcome.model.branch_sets[x] for x in range(h.n)}
            model = MinorModel(g, h, sets)
            return _finish(model, stages, "restricted complete minor")
        if outcome.kind == "dense":
            work, history = outcome.minor, outcome.history
            rec["minor"] = {"n": work.n, "delta": work.min_degree()}
        elif strict:
            return ForceResult("failure", None, stages, reason=f"densify gave {outcome.kind} for k = {k}")
        else:
            rec["fallback"] = "continuing on the host itself"
    elif strict:
        stages.append({"stage": "densify", "k": k, "verdict": "skipped"})
        return ForceResult("failure", None, stages, reason="host average degree below 4k")
    else:
        stages.append({"stage": "densify", "k": k, "verdict": "skipped",
                       "fallback": "average degree below 4k; continuing on the host itself"})

    # stage 2: peel one connected dominating set per special vertex
    s = len(S)
    if s:
        try:
            peeled = peel(work, s, rho, source, enforce=strict)
        except (MinDegreeError, DominationFailure) as exc:
            stages.append({"stage": "peel", "input": _digest(work), "verdict": "failure", "error": str(exc)})
            return ForceResult("failure", None, stages, reason=f"peel: {exc}")
        check = check_peeling(peeled)
        stages.append({"stage": "peel", "input": _digest(work), "verdict": "ok",
                       "sets": [sorted(a) for a in peeled.sets], "methods": list(peeled.methods),
                       "checks": check.as_dict()})
        residual = peeled.residuals[-1]
        sets_a = peeled.sets
    else:
        stages.append({"stage": "peel", "verdict": "skipped", "reason": "S is empty"})
        residual = work.induced_subgraph(work.all_vertices)
        sets_a = ()

    # stage 3: H - S in the last residual graph
    rest = [x for x in range(h.n) if x not in set(S)]
    branch: dict[int, frozenset[int]] = {}
    if rest:
        sub = h.induced_subgraph(rest)
        res = find_minor(residual.with_labels(None), sub.with_labels(None), budget)
        stages.append({"stage": "embed", "input": _digest(residual), "verdict": res.verdict.value,
                       "nodes": res.nodes})
        if res.verdict is Verdict.NOT_MINOR:
            return ForceResult("not_forced", None, stages, reason="H - S is not a minor of the peeled graph")
        if res.verdict is Verdict.INDETERMINATE:
            return ForceResult("failure", None, stages, reason="embed: search budget exhausted")
        for i, x in enumerate(rest):
            branch[x] = frozenset(residual.label(v) for v in res.model.branch_sets[i])
    else:
        stages.append({"stage": "embed", "verdict": "skipped", "reason": "H - S is empty"})

    # stage 4: contract A_i onto the i-th special vertex
    for x, a in zip(S, sets_a):
        branch[x] = a
    missing = []
    for u, v in h.edges():
        if (u in S or v in S) and not any(work.adj[p] & (1 << q) for p in branch[u] for q in branch[v]):
            missing.append([u, v])
    stages.append({"stage": "contract", "verdict": "ok" if not missing else "failure", "uncovered": missing})
    if missing:
        if strict:
            raise InternalError(f"domination failed to cover pattern edges {missing}")
        return ForceResult("failure", None, stages, reason=f"S-edges not covered: {missing}")

    # stage 5: lift to the host
    model = history.lift(MinorModel(work, h, branch))
    return _finish(model, stages, "pipeline")


def _finish(model: MinorModel, stages: list[dict], route: str) -> ForceResult:
    report = model.verify()
    if not report:
        raise InternalError(f"certificate failed verification: {report.message}")
    stages.append({"stage": "verify", "ok": True, "route": route})
    return ForceResult("found", model, stages)
