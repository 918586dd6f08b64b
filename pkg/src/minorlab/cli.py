"""Command-line entry point.

Every command prints one JSON record on stdout; logs go to stderr. The
record holds the run configuration, the result, and a separate
``timestamp`` field, so two runs with the same configuration differ only
there. ``gen`` is the exception: it writes a graph6 stream.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import INTERFACE_REVISION, __version__
from .densify import dense_or_complete
from .domination import RandomSource, check_peeling, peel, sample_connected_dominating_set
from .errors import FormatError, InternalError, MinorLabError, PreconditionError
from .formats import iter_graph6, load_graph, to_graph6
from .forcing import force_minor
from .generators import FAMILIES, generate
from .lab import default_jobs, falsify
from .minors import SearchBudget, Verdict, find_minor
from .numeric import as_fraction
from .series_parallel import force_sp_minor
from .thresholds import (
    DEFAULT_D0,
    TOTAL_EPSILON,
    ThresholdParams,
    ineq1,
    ineq2,
    ineq3,
    ineq4,
    ineq5,
    ineq6,
    threshold_genfh,
    threshold_larged,
    threshold_total,
)

log = logging.getLogger("minorlab")

EXIT_INPUT = 3
EXIT_PRECONDITION = 4
EXIT_INTERNAL = 5
SEED_ENV = "MINORLAB_SEED"
THEOREMS = ("larged", "genfh", "total", "ineq1", "ineq2", "ineq3", "ineq4", "ineq5", "ineq6")
STATUS_EXIT = {"found": 0, "not_forced": 1, "failure": 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _config(args) -> dict:
    skip = {"func", "verbose", "command", "action", "command_name"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, result: dict) -> None:
    record = {
        "command": args.command_name,
        "config": _config(args),
        "result": result,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
    }
    json.dump(record, sys.stdout, sort_keys=True, default=_jsonable)
    sys.stdout.write("\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(args.nodes, args.seconds)


def _fraction(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _vertex_list(text: str) -> list[int]:
    try:
        return sorted({int(x) for x in text.replace(",", " ").split()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a vertex list: {text!r}") from None


# -- commands ----------------------------------------------------------------------


def cmd_minor_test(args) -> int:
    g, h = load_graph(args.host), load_graph(args.pattern)
    res = find_minor(g, h, _budget(args))
    result = {"verdict": res.verdict.value, "nodes": res.nodes, "note": res.note}
    if res.found:
        cert = res.model.as_json()
        result["certificate"] = cert
        if args.certificate:
            Path(args.certificate).write_text(json.dumps(cert, sort_keys=True) + "\n")
    _emit(args, result)
    return {Verdict.FOUND: 0, Verdict.NOT_MINOR: 1, Verdict.INDETERMINATE: 2}[res.verdict]


def cmd_cds(args) -> int:
    g = load_graph(args.graph)
    run = sample_connected_dominating_set(g, RandomSource(args.seed))
    size = len(run.vertices)
    _emit(args, {
        "vertices": sorted(run.vertices),
        "size": size,
        "sample": list(run.sample),
        "attempts": run.attempts,
        "method": run.method,
        "bound": {"inequality": "|A| < 2 log2 n", "holds": (1 << size) < g.n * g.n},
    })
    return 0


def cmd_peel(args) -> int:
    g = load_graph(args.graph)
    res = peel(g, args.s, args.rho, RandomSource(args.seed), enforce=not args.relaxed)
    check = check_peeling(res)
    _emit(args, {
        "sets": [sorted(a) for a in res.sets],
        "methods": list(res.methods),
        "residual_orders": [r.n for r in res.residuals],
        "checks": check.as_dict(),
    })
    return 0 if check.ok else 1


def cmd_densify(args) -> int:
    g = load_graph(args.graph)
    out = dense_or_complete(g, args.k, _budget(args))
    result = {"kind": out.kind, "k": out.k, "report": out.report}
    if out.model is not None:
        result["certificate"] = out.model.as_json()
    if out.minor is not None:
        result["minor"] = {"graph6": to_graph6(out.minor), "n": out.n, "delta": out.delta,
                           "steps": [[st.kind, st.u, st.v] for st in out.history.steps]}
    _emit(args, result)
    return 0 if out.kind != "failure" else 1


def cmd_force(args) -> int:
    g, h = load_graph(args.host), load_graph(args.pattern)
    kw = {"d0": args.d0}
    if args.epsilon is not None:
        kw["epsilon"] = args.epsilon
    if args.f_upper is not None:
        kw["f_upper"] = args.f_upper
    params = ThresholdParams.for_pattern(h, args.special, **kw)
    res = force_minor(g, h, args.special, params, "relaxed" if args.relaxed else "strict",
                      RandomSource(args.seed), _budget(args))
    _emit(args, res.as_dict())
    return STATUS_EXIT[res.status]


def cmd_sp_force(args) -> int:
    g, h = load_graph(args.host), load_graph(args.pattern)
    res = force_sp_minor(g, h)
    _emit(args, res.as_dict())
    return STATUS_EXIT[res.status]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"--theorem {args.theorem} needs {flags}")


def _bound_dict(bound) -> dict:
    out = {"value": bound.value, "kind": bound.kind, "branch": bound.branch,
           "checks": [c.as_dict() for c in bound.checks], "hypotheses_hold": bound.hypotheses_hold}
    out.update(bound.extra)
    if isinstance(bound.value, Fraction):
        out["value_float"] = float(bound.value)
    return out


def cmd_threshold(args) -> int:
    th = args.theorem
    if th == "larged":
        _need(args, "t", "s", "d")
        result = {"value": threshold_larged(args.t, args.s, args.d, args.d0)}
    elif th == "genfh":
        _need(args, "f_upper", "epsilon")
        result = {"value": threshold_genfh(args.f_upper, args.epsilon)}
    elif th == "total":
        _need(args, "t", "s", "d")
        eps = args.epsilon if args.epsilon is not None else TOTAL_EPSILON
        result = _bound_dict(threshold_total(args.t, args.s, args.d, args.c, args.d0, eps))
    elif th == "ineq1":
        _need(args, "t", "s", "epsilon")
        result = _bound_dict(ineq1(args.t, args.s, args.epsilon))
    elif th in ("ineq2", "ineq3"):
        _need(args, "t", "s")
        result = _bound_dict((ineq2 if th == "ineq2" else ineq3)(args.t, args.s))
    elif th == "ineq4":
        _need(args, "t", "d")
        result = _bound_dict(ineq4(args.t, args.d, args.d0))
    elif th == "ineq5":
        _need(args, "t", "d")
        result = _bound_dict(ineq5(args.t, args.d))
    else:
        _need(args, "t", "d", "c")
        result = _bound_dict(ineq6(args.t, args.d, args.c))
    _emit(args, result)
    return 0


def cmd_falsify(args) -> int:
    h = load_graph(args.pattern)
    if args.graph6:
        stream = sys.stdin.buffer if args.graph6 == "-" else open(args.graph6, "rb")
        source, desc = iter_graph6(stream), f"graph6 stream {args.graph6}"
    else:
        source, desc = args.nmax, None
    args.jobs = args.jobs or default_jobs()
    try:
        report = falsify(h, args.threshold, source, budget=_budget(args), strict=args.strict,
                         jobs=args.jobs, description=desc)
    finally:
        if args.graph6 and args.graph6 != "-":
            stream.close()
    if args.sidecar:
        lines = "".join(cx["graph6"] + "\n" for cx in report.counterexamples)
        Path(args.sidecar).write_text(lines)
    log.info("%d counterexamples / %d graphs examined", len(report.counterexamples),
             report.graphs_examined)
    _emit(args, report.as_dict())
    if report.counterexamples:
        return 1
    return 0 if report.complete and not report.indeterminates else 2


def cmd_gen(args) -> int:
    params = {k: getattr(args, k) for k in ("t", "s", "k", "n", "delta") if getattr(args, k) is not None}
    if args.p:
        params["p"] = args.p
    try:
        for g in generate(args.family, params, RandomSource(args.seed), args.count):
            sys.stdout.write(to_graph6(g) + "\n")
    except KeyError as exc:
        raise UsageError(f"family {args.family} needs --{exc.args[0]}") from None
    return 0


# -- parser ------------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _add_budget(p):
    p.add_argument("--nodes", type=int, default=None, help="search node limit")
    p.add_argument("--seconds", type=float, default=None, help="search time limit")


def build_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    parser = _Parser(prog="minorlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"minorlab {__version__} (interface revision {INTERFACE_REVISION})")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    minor = sub.add_parser("minor", help="minor containment")
    msub = minor.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = msub.add_parser("test", help="decide whether the pattern is a minor of the host")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--certificate", help="write the branch sets here when found")
    _add_budget(p)
    p.set_defaults(func=cmd_minor_test, command_name="minor test")

    p = sub.add_parser("cds", help="small connected dominating set")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_cds, command_name="cds")

    p = sub.add_parser("peel", help="peel successive connected dominating sets")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--rho", type=_fraction, required=True)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--relaxed", action="store_true", help="skip the minimum-degree precondition")
    p.set_defaults(func=cmd_peel, command_name="peel")

    p = sub.add_parser("densify", help="complete minor or dense minor")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    _add_budget(p)
    p.set_defaults(func=cmd_densify, command_name="densify")

    p = sub.add_parser("force", help="forcing pipeline with a special set")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--special", type=_vertex_list, default=[])
    p.add_argument("--relaxed", action="store_true")
    p.add_argument("--d0", type=int, default=DEFAULT_D0)
    p.add_argument("--epsilon", type=_fraction)
    p.add_argument("--f-upper", type=_fraction, dest="f_upper")
    p.add_argument("--seed", type=int, default=seed)
    _add_budget(p)
    p.set_defaults(func=cmd_force, command_name="force")

    sp = sub.add_parser("sp", help="series-parallel patterns")
    ssub = sp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = ssub.add_parser("force", help="constructive series-parallel minor")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_sp_force, command_name="sp force")

    p = sub.add_parser("threshold", help="threshold calculators")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--d", type=_fraction)
    p.add_argument("--c", type=_fraction)
    p.add_argument("--d0", type=_fraction, default=DEFAULT_D0)
    p.add_argument("--epsilon", type=_fraction)
    p.add_argument("--f-upper", type=_fraction, dest="f_upper")
    p.set_defaults(func=cmd_threshold, command_name="threshold")

    p = sub.add_parser("falsify", help="search for graphs above a threshold without the minor")
    p.add_argument("--pattern", required=True)
    p.add_argument("--threshold", type=_fraction, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--nmax", type=int)
    src.add_argument("--graph6", help="graph6 stream file, or - for stdin")
    p.add_argument("--strict", action="store_true", help="require d(G) > D instead of d(G) >= D")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all CPUs)")
    p.add_argument("--sidecar", help="write counterexamples here as graph6 lines")
    _add_budget(p)
    p.set_defaults(func=cmd_falsify, command_name="falsify")

    p = sub.add_parser("gen", help="graph6 stream from a family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    for name in ("t", "s", "k", "n", "delta"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_gen, command_name="gen")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FormatError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except PreconditionError as exc:
        print(f"error: precondition fails: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (MinorLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
