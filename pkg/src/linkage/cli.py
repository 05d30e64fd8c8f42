"""Command line front end: ``linkage <command> <session-file> <args> [flags]``.

Reports are JSON on stdout.  Exit status is 0 when every check passes, 2 when
some check is inconclusive and none failed, 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .checks import CheckReport, PreconditionFailed, compare, overall
from .duality import (
    check_biduality_euler,
    check_duality_d3,
    check_duality_d4,
    check_generalized_serre_duality,
    check_s_ell_duality,
    deficiency_diagram,
    deficiency_module,
)
from .groebner import Ideal
from .hilbert import DEFAULT_WINDOW, HilbertFunction
from .liaison import (
    DimensionMismatch,
    LinkedPair,
    NotContained,
    NotGorenstein,
    SelfLinkDegenerate,
    WrongDimension,
    check_degree_additivity,
    check_involution,
    check_liaison_lambda,
    check_liaison_sequence,
    check_s2_equivalences,
    check_split_convention,
    check_surface_liaison,
    check_threefold_liaison,
    make_link,
    surface_suite,
)
from .oracle import CostLimit, oracle_ext_hf, oracle_module_hf
from .resolution import ModulePresentation, ZeroModule, homological_invariants
from .session import SessionError, SessionFile, parse_session

COMMANDS = ("resolve", "deficiency", "diagram", "link", "check-surface", "check-threefold",
            "check-duality", "check-s2", "certify")
ORACLE_LIMIT = 5_000_000
LINK_ERRORS = (NotGorenstein, NotContained, DimensionMismatch, SelfLinkDegenerate,
               PreconditionFailed, WrongDimension)


class CommandError(ValueError):
    pass


class Options:
    def __init__(self, window=None, oracle=False, certify=False, max_degree=8, ell=None):
        self.window = window
        self.oracle = oracle
        self.certify = certify
        self.max_degree = max_degree
        self.ell = ell


def hf_table(hf, window: tuple[int, int]) -> list[list[int]]:
    return [[mu, hf(mu)] for mu in range(window[0], window[1] + 1)]


def _quotient(session: SessionFile, name: str) -> tuple[Ideal, ModulePresentation]:
    try:
        I = session.ideal(name)
    except KeyError as exc:
        raise CommandError(exc.args[0]) from None
    return I, ModulePresentation.quotient_ring(I, name)


def _pair(session: SessionFile, args: Sequence[str]) -> LinkedPair:
    if len(args) == 1 and args[0] in session.links:
        decl = session.links[args[0]]
        return make_link(session.ideal(decl.ideal), session.ideal(decl.gorenstein), decl.name)
    if len(args) == 3 and args[1] == "via":
        args = [args[0], args[2]]
    if len(args) != 2:
        raise CommandError("expected <link>, <ideal> <gorenstein> or <ideal> via <gorenstein>")
    for a in args:
        if a not in session.ideals:
            raise CommandError(f"undefined ideal {a!r}")
    return make_link(session.ideal(args[0]), session.ideal(args[1]), f"{args[0]} via {args[1]}")


def _ideal_arg(args: Sequence[str]) -> str:
    if len(args) != 1:
        raise CommandError("expected one ideal name")
    return args[0]


# -- commands -----------------------------------------------------------------------------

def _resolve(session, args, opts, window):
    name = _ideal_arg(args)
    I, R = _quotient(session, name)
    res = R.resolution
    inv = homological_invariants(R)
    data = {
        "betti": res.betti_grid(),
        "ranks": res.ranks(),
        "pd": inv.pd,
        "depth": inv.depth,
        "dim": inv.dim,
        "regularity": inv.regularity,
        "cohen_macaulay": inv.is_cm,
        "hilbert": hf_table(R.hilbert, window),
    }
    euler = HilbertFunction.from_series(res.euler_series(), session.ring.n)
    checks = [compare("resolve.euler_characteristic", euler, R.hilbert, opts.window)]
    return data, checks, [R]


def _deficiency(session, args, opts, window):
    name = _ideal_arg(args)
    _, R = _quotient(session, name)
    data = {}
    for i in range(session.ring.n + 1):
        D = deficiency_module(R, i)
        data[f"D{i}"] = {"dim": D.dimension, "hilbert": hf_table(D.hilbert, window)}
    return data, [], [R]


def _diagram(session, args, opts, window):
    name = _ideal_arg(args)
    _, R = _quotient(session, name)
    diag = deficiency_diagram(R)
    c = diag.classification
    data = {
        "d": diag.d,
        "nonzero": [list(k) for k in diag.nonzero()],
        "entries": {f"{i},{j}": hf_table(diag.entries[(i, j)], window) for (i, j) in diag.nonzero()},
        "classification": {"depth_class": c.depth_class, "cm_codim": c.cm_codim,
                           "s_ell": c.s_ell, "sheaf_s_ell": c.sheaf_s_ell},
    }
    return data, [], [R]


def _pair_data(pair: LinkedPair) -> dict:
    return {"J": [str(g) for g in pair.J.generators], "a_invariant": pair.a, "dim": pair.d,
            "double_link": pair.double_link_ok}


def _link(session, args, opts, window):
    pair = _pair(session, args)
    checks = [pair.link.canonical_check, check_involution(pair), check_degree_additivity(pair)]
    return _pair_data(pair), checks, [pair.R, pair.S]


def _link_checks(pair, opts):
    checks = [check_split_convention()]
    checks += check_liaison_sequence(pair, opts.window, opts.certify, opts.max_degree)
    checks += check_liaison_lambda(pair, opts.window)
    checks += [check_involution(pair), check_degree_additivity(pair)]
    return checks


def _check_surface(session, args, opts, window):
    pair = _pair(session, args)
    checks = _link_checks(pair, opts)
    for tag, ring in (("R", pair.R), ("S", pair.S)):
        suite = surface_suite(ring, opts.window)
        for c in suite.checks:
            c.check_id = f"{tag}.{c.check_id}"
        checks += suite.checks
    checks += check_surface_liaison(pair, opts.window, opts.certify, opts.max_degree).checks
    data = _pair_data(pair)
    return data, checks, [pair.R, pair.S]


def _check_threefold(session, args, opts, window):
    pair = _pair(session, args)
    checks = _link_checks(pair, opts)
    checks += check_threefold_liaison(pair, opts.window, opts.certify, opts.max_degree).checks
    return _pair_data(pair), checks, [pair.R, pair.S]


def _check_s2(session, args, opts, window):
    pair = _pair(session, args)
    return _pair_data(pair), check_s2_equivalences(pair, opts.window), [pair.R, pair.S]


def _check_duality(session, args, opts, window):
    name = _ideal_arg(args)
    _, R = _quotient(session, name)
    checks = check_biduality_euler(R, opts.window)
    d = R.dimension
    if d == 3:
        checks += check_duality_d3(R, opts.window)
    if d == 4:
        checks += check_duality_d4(R, opts.window)
    if d >= 3:
        checks += check_generalized_serre_duality(R, opts.window)
    if opts.ell is not None:
        checks += check_s_ell_duality(R, opts.ell, opts.window)
    return {"dim": d}, checks, [R]


def _certify(session, args, opts, window):
    pair = _pair(session, args)
    checks = check_liaison_sequence(pair, opts.window, True, opts.max_degree)
    return _pair_data(pair), checks, [pair.R, pair.S]


HANDLERS = {
    "resolve": _resolve,
    "deficiency": _deficiency,
    "diagram": _diagram,
    "link": _link,
    "check-surface": _check_surface,
    "check-threefold": _check_threefold,
    "check-duality": _check_duality,
    "check-s2": _check_s2,
    "certify": _certify,
}


# -- oracle cross-checks ------------------------------------------------------------------------

def _touched(roots: Sequence[ModulePresentation]) -> list[tuple[str, ModulePresentation]]:
    """Every module reachable through memoized deficiency modules, labelled by index word."""
    out = []
    stack = [(m.name or f"M{k}", m) for k, m in enumerate(roots)]
    seen = set()
    while stack:
        label, M = stack.pop()
        if id(M) in seen:
            continue
        seen.add(id(M))
        out.append((label, M))
        for i, D in sorted(M.__dict__.get("_deficiency_memo", {}).items()):
            stack.append((f"D{i}({label})", D))
    return sorted(out, key=lambda x: x[0])


def _oracle_checks(roots, opts, window) -> list[CheckReport]:
    lo, hi = window
    checks = []
    for label, M in _touched(roots):
        cid = f"oracle.hf.{label}"
        try:
            vals = oracle_module_hf(M, lo, hi, ORACLE_LIMIT)
        except CostLimit as exc:
            checks.append(CheckReport(cid, "inconclusive", detail=str(exc)))
            continue
        checks.append(_oracle_compare(cid, M.hilbert, vals))
    for k, M in enumerate(roots):
        for i in range(M.ring.n + 1):
            cid = f"oracle.ext.D{i}({M.name or k})"
            try:
                vals = oracle_ext_hf(M, i, lo, hi, ORACLE_LIMIT)
            except CostLimit as exc:
                checks.append(CheckReport(cid, "inconclusive", detail=str(exc)))
                continue
            checks.append(_oracle_compare(cid, deficiency_module(M, i).hilbert, vals))
    return checks


def _oracle_compare(cid, hf, vals) -> CheckReport:
    for mu, v in sorted(vals.items()):
        if hf(mu) != v:
            return CheckReport(cid, "fail", mu, hf(mu), v)
    return CheckReport(cid, "pass", window=(min(vals), max(vals)))


# -- driver ---------------------------------------------------------------------------------------

def run_command(command: str, args: Sequence[str], session: SessionFile, opts: Options | None = None) -> tuple[dict, int]:
    opts = opts or Options()
    window = opts.window or DEFAULT_WINDOW
    label = " ".join([command, *args])
    data: dict = {}
    roots: list = []
    try:
        if command not in HANDLERS:
            raise CommandError(f"unknown command {command!r}")
        data, checks, roots = HANDLERS[command](session, list(args), opts, window)
    except LINK_ERRORS + (CommandError, ZeroModule, KeyError) as exc:
        status = "precondition_failed" if isinstance(exc, PreconditionFailed) else "fail"
        checks = [CheckReport(f"{command}.error", status, detail=f"{type(exc).__name__}: {exc}")]
    if opts.oracle and roots:
        checks += _oracle_checks(roots, opts, window)
    report = {
        "session": session.digest,
        "command": label,
        "window": list(window),
        "data": data,
        "checks": [c.to_dict() for c in checks],
        "overall": overall(checks),
    }
    return report, exit_code(report["overall"])


def exit_code(status: str) -> int:
    return {"pass": 0, "inconclusive": 2}.get(status, 1)


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like lo..hi") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty window")
    return lo, hi


def _add_flags(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--window", type=_window, help="degree window lo..hi (default: exact window)")
    ap.add_argument("--oracle", action="store_true", help="cross-check Hilbert functions by degreewise linear algebra")
    ap.add_argument("--certify", action="store_true", help="attempt explicit isomorphism certificates")
    ap.add_argument("--max-degree", type=int, default=8, help="degree bound for isomorphism certificates")
    ap.add_argument("--ell", type=int, help="also run the S_ell duality check (check-duality)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linkage", description="Deficiency modules and Gorenstein liaison checks.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("session", help="session file")
    ap.add_argument("args", nargs="*", help="ideal/link names; 'I via b' names a link inline")
    _add_flags(ap)
    ap.add_argument("-o", "--output", help="write the report here instead of stdout")
    return ap


def run_directive(session: SessionFile, directive: Sequence[str]) -> tuple[dict, int]:
    """Run a ``check <command> <args> [flags]`` line from a session file."""
    ap = argparse.ArgumentParser(prog="check", add_help=False)
    ap.add_argument("args", nargs="*")
    _add_flags(ap)
    ns = ap.parse_args(list(directive[1:]))
    opts = Options(ns.window, ns.oracle, ns.certify, ns.max_degree, ns.ell)
    return run_command(directive[0], ns.args, session, opts)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        session = parse_session(ns.session)
    except (OSError, SessionError) as exc:
        print(f"linkage: {exc}", file=sys.stderr)
        return 1
    opts = Options(ns.window, ns.oracle, ns.certify, ns.max_degree, ns.ell)
    report, code = run_command(ns.command, ns.args, session, opts)
    text = render(report)
    if ns.output:
        with open(ns.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
