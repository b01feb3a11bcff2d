"""Command line interface: classify, enumerate, series, verify, render."""

from __future__ import annotations

import argparse
import json
import re
import sys as _sys

from .coxeter import FIXED_FAMILIES, build_family, load_system
from .errors import CoxeterError, UnknownGeneratorError

_FAMILY_RANK = re.compile(r"^([A-Za-z]+)(\d+)$")


class UsageError(CoxeterError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _split_system(tokens, matrix):
    """Pop the system off the positional tokens: a family, then a rank unless
    the rank is glued on (``linear7``) or the family has none."""
    if not tokens:
        raise UsageError("missing family")
    tokens = list(tokens)
    fam = tokens.pop(0)
    if fam == "custom":
        if not matrix:
            raise UsageError("family 'custom' needs --matrix FILE")
        return load_system(matrix), tokens
    n = None
    glued = _FAMILY_RANK.match(fam)
    if glued and fam not in FIXED_FAMILIES:
        fam, n = glued.group(1), int(glued.group(2))
    elif fam not in FIXED_FAMILIES and tokens and tokens[0].lstrip("-").isdigit():
        n = int(tokens.pop(0))
    return build_family(fam, n), tokens


def _emit(out, text):
    out.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _need_horizon(args):
    if args.horizon is None:
        raise UsageError(f"{args.command} needs --horizon")
    if args.horizon < 0:
        raise UsageError("--horizon must be >= 0")
    return args.horizon


def cmd_classify(args, out):
    from .classify import classify_cfc

    system, rest = _split_system(args.args, args.matrix)
    if not rest:
        raise UsageError("classify needs a word")
    w = system.parse(" ".join(rest))
    result = classify_cfc(system, w)
    data = result.to_json(system)
    if args.format == "text":
        for k, v in data.items():
            _emit(out, f"{k}: {_dump(v) if isinstance(v, dict) else v}")
    elif args.format == "json":
        _emit(out, _dump(data))
    else:
        raise UsageError(f"classify does not support --format {args.format}")
    return 0


def cmd_enumerate(args, out):
    from .enumeration import enumerate_cfc, enumerate_cfc_involutions, fc_census

    system, rest = _split_system(args.args, args.matrix)
    if rest:
        raise UsageError(f"unexpected argument {rest[0]!r}")
    if args.involutions:
        census = enumerate_cfc_involutions(system)
    else:
        horizon = _need_horizon(args)
        if args.klass == "fc":
            census = fc_census(system, horizon, args.cap)
        else:
            census = enumerate_cfc(system, horizon, args.cap)
    if args.format == "csv":
        out.write(census.to_csv())
    elif args.format == "json":
        _emit(out, _dump(census.to_json()))
    elif args.format == "text":
        _emit(out, " ".join(map(str, census.counts)))
    else:
        raise UsageError(f"enumerate does not support --format {args.format}")
    return 0


def cmd_series(args, out):
    from .qseries import cfc_series, cfci_series

    system, rest = _split_system(args.args, args.matrix)
    if rest:
        raise UsageError(f"unexpected argument {rest[0]!r}")
    fn = cfci_series if args.involutions else cfc_series
    s = fn(system.family, system.rank)
    order = args.order
    if order is None:
        order = s.poly.degree if s.resolved and not s.tails else 20
    if args.format == "json":
        _emit(out, _dump(s.to_json(order if s.resolved else None)))
    elif args.format == "text":
        _emit(out, " ".join(map(str, s.expand(order))))
    else:
        raise UsageError(f"series does not support --format {args.format}")
    return 0


def _verify_criterion(args, out):
    from .acceptance import CRITERIA

    names = [args.criterion.upper()]
    if names[0] not in CRITERIA:
        raise UsageError(f"unknown criterion {args.criterion!r} (known: {' '.join(CRITERIA)})")
    if names[0] == "AC-6" and args.exceptional_deep:
        names.append("AC-6-deep")
    ok = True
    for name in names:
        res = CRITERIA[name]()
        ok = ok and res.passed
        if args.format == "json":
            _emit(out, _dump({"criterion": name, "passed": res.passed, "seconds": round(res.seconds, 3),
                              "checks": [{"check": c, "ok": k, "detail": d} for c, k, d in res.checks]}))
        else:
            _emit(out, res.line())
            for label, good, detail in res.checks:
                _emit(out, f"  [{'ok' if good else 'FAIL'}] {label}" + ("" if good else f": {detail}"))
    return 0 if ok else 2


def cmd_verify(args, out):
    from .enumeration import crosscheck, enumerate_cfc, enumerate_cfc_involutions
    from .qseries import cfc_series, cfci_series, expand, resolve_exceptional_poly

    if args.criterion:
        return _verify_criterion(args, out)
    system, rest = _split_system(args.args, args.matrix)
    if rest:
        raise UsageError(f"unexpected argument {rest[0]!r}")
    report = {"system": system.label}
    ok = True
    if system.family is None or system.family == "linear" or args.crosscheck:
        rep = crosscheck(system, _need_horizon(args), sample=args.sample, seed=args.seed)
        report["crosscheck"] = rep.to_json()
        ok = rep.ok
    elif args.involutions:
        census = enumerate_cfc_involutions(system).counts
        series = list(cfci_series(system.family, system.rank).poly.coeffs)
        report.update({"class": "CFC_involution", "census": census, "series": series})
        ok = census == series
    else:
        horizon = _need_horizon(args)
        census = enumerate_cfc(system, horizon, args.cap).counts
        s = cfc_series(system.family, system.rank)
        report.update({"class": "CFC", "horizon": horizon, "census": census})
        if s.resolved:
            series = expand(s, horizon)
            report["series"] = series
            ok = census == series
        else:
            try:
                poly = resolve_exceptional_poly(system.family, census)
                report["resolved_poly"] = list(poly.coeffs)
            except CoxeterError as e:
                report["error"] = {"type": type(e).__name__, "message": str(e)}
                ok = False
    report["match"] = ok
    if args.format == "json":
        _emit(out, _dump(report))
    else:
        for k, v in report.items():
            _emit(out, f"{k}: {v}")
    return 0 if ok else 2


def cmd_render(args, out):
    from .heaps import heap_of
    from .render import cylindric_dot, heap_dot

    system, rest = _split_system(args.args, args.matrix)
    if not rest:
        raise UsageError("render needs a word")
    if args.format not in ("dot", "text"):
        raise UsageError(f"render does not support --format {args.format}")
    h = heap_of(system, system.parse(" ".join(rest)))
    out.write(cylindric_dot(h) if args.cylindric else heap_dot(h))
    return 0


COMMANDS = {
    "classify": (cmd_classify, "json"),
    "enumerate": (cmd_enumerate, "json"),
    "series": (cmd_series, "json"),
    "verify": (cmd_verify, "text"),
    "render": (cmd_render, "dot"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cyclicfc", description="Fully and cyclically fully commutative elements of Coxeter groups.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("args", nargs="*", help="FAMILY [N] [WORD...]")
        sp.add_argument("--matrix", help="Coxeter matrix JSON for family 'custom'")
        sp.add_argument("--horizon", type=int)
        sp.add_argument("--order", type=int)
        sp.add_argument("--format", choices=["json", "csv", "dot", "text"])
        sp.add_argument("--cylindric", action="store_true")
        sp.add_argument("--involutions", action="store_true")
        sp.add_argument("--class", dest="klass", choices=["fc", "cfc"], default="cfc")
        sp.add_argument("--exceptional-deep", action="store_true")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--sample", type=int)
        sp.add_argument("--cap", type=int)
        sp.add_argument("--criterion", help="run one acceptance criterion, e.g. AC-3")
        sp.add_argument("--crosscheck", action="store_true", help="compare all CFC/FC deciders")
    return p


def run(argv, out=None, err=None) -> int:
    out = out or _sys.stdout
    err = err or _sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand (one of: " + ", ".join(COMMANDS) + ")")
        fn, default_format = COMMANDS[args.command]
        args.format = args.format or default_format
        return fn(args, out)
    except (CoxeterError, ValueError, OSError) as e:
        payload = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, UnknownGeneratorError):
            payload["token"] = e.token
        err.write(json.dumps(payload) + "\n")
        return 1


def main(argv=None):
    raise SystemExit(run(_sys.argv[1:] if argv is None else argv))
