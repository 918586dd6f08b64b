"""Average-degree thresholds that force a minor, and their hypothesis checks.

Integer-valued bounds (the ``4*ceil((1+eps) f)`` family) are computed with
exact rationals; bounds involving logarithms or square roots are floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HypothesisViolation, InvalidArgumentError, OutOfRegimeError
from .graph import Graph
from .numeric import as_fraction

DEFAULT_D0 = 2 ** 16
LARGED_CONSTANT = 3.895
SPARSE_CONSTANT = Fraction("3.146")
LARGED_S_FACTOR = Fraction(1, 10 ** 5)
LARGED_RHO = Fraction(6517, 10000)
GENFH_RHO = Fraction(1, 2)
TOTAL_EPSILON = Fraction(1, 1000)


@dataclass(frozen=True)
class Check:
    """One hypothesis: the inequality as text and whether it holds."""

    inequality: str
    holds: bool
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"inequality": self.inequality, "holds": self.holds}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class Bound:
    value: float | int | Fraction
    kind: str  # "upper" or "lower"
    checks: tuple[Check, ...] = ()
    branch: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(c.holds for c in self.checks)


def _s_limit(t: int, factor) -> float:
    return float(factor) * t / math.log(t)


def larged_checks(t: int, s: int, d, d0=DEFAULT_D0) -> list[Check]:
    checks = [Check("t >= 3", t >= 3)]
    if t >= 3:
        lim = _s_limit(t, LARGED_S_FACTOR)
        checks.append(Check("s <= 1e-5 * t / ln t", s <= lim, f"limit {lim:.6g}"))
    checks.append(Check("d(H-S) >= d0", float(d) >= float(d0), f"d = {float(d):.6g}, d0 = {d0}"))
    return checks


def threshold_larged(t: int, s: int, d, d0=DEFAULT_D0) -> float:
    """``3.895 * t * sqrt(ln d)`` where ``d`` is the average degree of ``H - S``."""
    for c in larged_checks(t, s, d, d0):
        if not c.holds:
            if c.inequality.startswith("d(H-S)"):
                raise OutOfRegimeError(f"out of regime: {c.inequality} fails ({c.detail})")
            raise HypothesisViolation(f"hypothesis fails: {c.inequality} ({c.detail})",
                                      inequality=c.inequality)
    return LARGED_CONSTANT * t * math.sqrt(math.log(float(d)))


def _check_epsilon(epsilon) -> Fraction:
    eps = as_fraction(epsilon)
    if not 0 < eps <= 1:
        raise InvalidArgumentError(f"epsilon must lie in (0, 1], got {epsilon}")
    return eps


def threshold_genfh(f_upper, epsilon) -> int:
    """``4 * ceil((1 + epsilon) * f_upper)`` computed exactly."""
    eps = _check_epsilon(epsilon)
    f = as_fraction(f_upper)
    if f < 0:
        raise InvalidArgumentError("f_upper must be nonnegative")
    return 4 * math.ceil((1 + eps) * f)


def genfh_checks(t: int, s: int, epsilon) -> list[Check]:
    eps = _check_epsilon(epsilon)
    checks = [Check("t >= 3", t >= 3)]
    if t >= 3:
        lim = _s_limit(t, eps / 100)
        checks.append(Check("s <= (epsilon/100) * t / ln t", s <= lim, f"limit {lim:.6g}"))
    return checks


def sparse_bound(t: int, d) -> Fraction:
    """``(1 + 3.146 d) t``, valid for every pattern on ``t`` vertices with average degree ``d``."""
    return (1 + SPARSE_CONSTANT * as_fraction(d)) * t


def threshold_total(t: int, s: int, d, c=None, d0=DEFAULT_D0, epsilon=TOTAL_EPSILON) -> Bound:
    """Bound for any ``H`` with a small high-degree set ``S``.

    Dispatches to :func:`threshold_larged` when ``d >= d0``; otherwise bounds
    ``f(H - S)`` by :func:`sparse_bound` and applies :func:`threshold_genfh`.
    If ``c`` is given the closed form ``c * t * sqrt(ln(d + 2))`` is reported too.
    """
    if t < 3:
        raise HypothesisViolation("hypothesis fails: t >= 3", inequality="t >= 3")
    lim = _s_limit(t, LARGED_S_FACTOR)
    if s > lim:
        raise HypothesisViolation(f"hypothesis fails: s <= 1e-5 * t / ln t (limit {lim:.6g})",
                                  inequality="s <= 1e-5 * t / ln t")
    checks = (Check("t >= 3", True), Check("s <= 1e-5 * t / ln t", True, f"limit {lim:.6g}"))
    extra = {}
    if c is not None:
        extra["closed_form"] = float(c) * t * math.sqrt(math.log(float(d) + 2))
    if float(d) >= float(d0):
        value = threshold_larged(t, s, d, d0)
        return Bound(value, "upper", checks, branch="larged", extra=extra)
    f_sub = sparse_bound(t, d)
    value = threshold_genfh(f_sub, epsilon)
    extra["f_upper_of_H_minus_S"] = f_sub
    return Bound(value, "upper", checks, branch="genfh", extra=extra)


# -- reference inequalities for complete bipartite and general patterns -------------


def ineq1(t: int, s: int, epsilon) -> Bound:
    """``f(K_{s,t}) <= (1 + eps) t`` for ``eps < 1e-16``, ``s <= eps^6 t / ln t`` and large ``t``."""
    eps = as_fraction(epsilon)
    checks = (
        Check("0 < epsilon < 1e-16", 0 < eps < Fraction(1, 10 ** 16)),
        Check("s <= epsilon^6 * t / ln t", t > 1 and s <= float(eps) ** 6 * t / math.log(t)),
        Check("t sufficiently large (unquantified)", True, "not checkable"),
    )
    return Bound((1 + eps) * t, "upper", checks)


def ineq2(t: int, s: int) -> Bound:
    """``t + 3s - 5 sqrt(s) <= f(K_{s,t}) <= t + 3s`` for ``t > (180 s log2 s)^(1 + 6 s log2 s)``."""
    if s < 1:
        raise InvalidArgumentError("s must be positive")
    sl = s * math.log2(s)
    if sl == 0:
        holds = t > 0
    else:
        holds = math.log(t) > (1 + 6 * sl) * math.log(180 * sl)
    checks = (Check("t > (180 s log2 s)^(1 + 6 s log2 s)", holds),)
    return Bound(t + 3 * s, "upper", checks, extra={"lower": t + 3 * s - 5 * math.sqrt(s)})


def ineq3(t: int, s: int) -> Bound:
    """``f(K_{s,t}) <= t + 8 s log2 s`` for ``s <= t / (1000 log2 t)``."""
    checks = (Check("s <= t / (1000 log2 t)", t > 1 and s <= t / (1000 * math.log2(t))),)
    value = t + 8 * s * math.log2(s) if s >= 1 else t
    return Bound(value, "upper", checks)


def ineq4(t: int, d, d0=DEFAULT_D0) -> Bound:
    """``f(H) <= 3.895 t sqrt(ln d(H))`` for ``d(H) >= d0``."""
    checks = (Check("d(H) >= d0", float(d) >= float(d0)),)
    value = LARGED_CONSTANT * t * math.sqrt(math.log(float(d))) if float(d) >= 1 else math.nan
    return Bound(value, "upper", checks)


def ineq5(t: int, d) -> Bound:
    """``f(H) <= (1 + 3.146 d(H)) t`` for every ``H``."""
    return Bound(sparse_bound(t, d), "upper", ())


def ineq6(t: int, d, c) -> Bound:
    """``f(H) <= c t sqrt(ln(d(H) + 2))`` for a suitable absolute constant ``c``."""
    checks = (Check("c is a valid absolute constant (unquantified)", True, "not checkable"),)
    return Bound(float(c) * t * math.sqrt(math.log(float(d) + 2)), "upper", checks)


def rw2_order_requirement(t: int, d, lam, epsilon) -> float:
    """Order ``(1 + eps) * ceil(sqrt(log_b d)) * t`` with ``b = 1/(1 - lam + eps)``.

    A graph with at least this many vertices and minimum degree at least
    ``lam * n`` contains every ``t``-vertex graph of average degree ``d``
    (for ``d`` beyond an unspecified constant).
    """
    lam, eps = as_fraction(lam), as_fraction(epsilon)
    if not Fraction(1, 2) < lam < 1:
        raise InvalidArgumentError("lambda must lie in (1/2, 1)")
    if not 0 < eps < lam:
        raise InvalidArgumentError("epsilon must lie in (0, lambda)")
    b = 1 / (1 - lam + eps)
    return float(1 + eps) * math.ceil(math.sqrt(math.log(float(d)) / math.log(float(b)))) * t


# -- parameters and recorded bounds ----------------------------------------------------


@dataclass(frozen=True)
class ThresholdParams:
    """Inputs of the forcing theorems; derived quantities are properties."""

    t: int
    s: int
    d: Fraction
    epsilon: Fraction = TOTAL_EPSILON
    lam: Fraction = LARGED_RHO
    d0: int = DEFAULT_D0
    f_upper: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "d", as_fraction(self.d))
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        object.__setattr__(self, "lam", as_fraction(self.lam))
        if self.f_upper is not None:
            object.__setattr__(self, "f_upper", as_fraction(self.f_upper))
        if not self.b > 1:
            raise InvalidArgumentError("derived b must exceed 1")

    @classmethod
    def for_pattern(cls, h: Graph, special, **kw) -> "ThresholdParams":
        special = set(special)
        rest = [v for v in range(h.n) if v not in special]
        if rest:
            sub = h.induced_subgraph(rest)
            d = sub.average_degree()
        else:
            d = Fraction(0)
        return cls(t=len(rest), s=len(special), d=d, **kw)

    @property
    def b(self) -> Fraction:
        return 1 / (1 - self.lam + self.epsilon)

    @property
    def theorem(self) -> str:
        return "larged" if self.d >= self.d0 else "genfh"

    @property
    def larged_threshold(self) -> float:
        if self.d <= 1:
            return 0.0
        return LARGED_CONSTANT * self.t * math.sqrt(math.log(float(self.d)))

    @property
    def k_larged(self) -> int:
        return math.floor(self.larged_threshold / 4)

    @property
    def f_upper_used(self) -> Fraction:
        return self.f_upper if self.f_upper is not None else sparse_bound(self.t, self.d)

    @property
    def k_genfh(self) -> int:
        return math.ceil((1 + self.epsilon) * self.f_upper_used)

    @property
    def genfh_threshold(self) -> int:
        return threshold_genfh(self.f_upper_used, self.epsilon)


@dataclass(frozen=True)
class FBound:
    """A recorded bound on ``f(pattern)`` and where it came from."""

    pattern: Graph
    special: frozenset[int]
    kind: str
    value: Fraction | float
    provenance: str
    witness: Graph | None = None
