"""Command line front end: ``cg <command> [options] ARGS``.

Commands: eval, act, order, center, witness, selftest.  A script file holds
one command per line plus ``let NAME = EXPR`` bindings.  Reports are JSON
objects carrying ``"version": REPORT_VERSION``.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from . import groupoid as gd
from .errors import CantorGroupsError, ParseError, UnknownSuite
from .groups import get_action, get_oracle, trivial_group
from .parsing import (Label, Session, evaluate, parse_clopen, parse_cube_point,
                      parse_point, value_to_json)
from .selftest import SUITES, run_suite
from .twisted import TwistTable, tt_act, tt_mul
from .vtables import GTable, act, center_test, order

REPORT_VERSION = 1
COMMANDS = ("eval", "act", "order", "center", "witness", "selftest")


class CommandError(CantorGroupsError):
    pass


def _expr(args: list[str]) -> str:
    if not args:
        raise CommandError("missing expression")
    return " ".join(args)


def _as_table(value):
    """Tables act on points; full bisections act through I."""
    if isinstance(value, gd.Bisection):
        return gd.I_map_twisted(value) if value.twisted else gd.I_map(value)
    if isinstance(value, (GTable, TwistTable)):
        return value
    raise CommandError(f"expected a group element, got {type(value).__name__}")


def cmd_eval(session: Session, args: list[str], opts) -> tuple[dict, str, bool]:
    value = evaluate(_expr(args), session)
    return value_to_json(value), str(value), True


def cmd_act(session: Session, args: list[str], opts):
    if len(args) < 2:
        raise CommandError("act needs an element and a point")
    t = _as_table(evaluate(" ".join(args[:-1]), session))
    if isinstance(t, TwistTable):
        point = parse_cube_point(args[-1], t.action)
        image = tt_act(t, point).format(t.action)
        return {"point": image}, image, True
    y, g = act(t, parse_point(args[-1]))
    label = t.oracle.format(g)
    text = str(y) if t.oracle.is_identity(g) else f"{y} [{label}]"
    return {"point": str(y), "label": label}, text, True


def _tt_order(t: TwistTable, bound: int) -> Optional[int]:
    power = t
    for k in range(1, bound + 1):
        if power.is_identity():
            return k
        power = tt_mul(power, t)
    return None


def cmd_order(session: Session, args: list[str], opts):
    t = _as_table(evaluate(_expr(args), session))
    n = _tt_order(t, opts.max) if isinstance(t, TwistTable) else order(t, opts.max)
    text = str(n) if n is not None else f"> {opts.max}"
    return {"order": n, "max": opts.max}, text, True


def cmd_center(session: Session, args: list[str], opts):
    t = _as_table(evaluate(_expr(args), session))
    if not isinstance(t, GTable):
        raise CommandError("center applies to V(G) tables")
    r = center_test(t)
    fmt = t.oracle.format
    payload = {"kind": r.kind,
               "z": None if r.z is None else fmt(r.z),
               "witness": None if r.witness is None else str(r.witness)}
    if r.kind == "central":
        text = f"central {fmt(r.z)}"
    elif r.kind == "not_central":
        text = f"not_central, fails to commute with {r.witness}"
    else:
        text = "unknown"
    return payload, text, True


def cmd_witness(session: Session, args: list[str], opts):
    if len(args) != 2:
        raise CommandError("witness needs two clopen sets U and V")
    U = parse_clopen(args[0], session.action)
    V = parse_clopen(args[1], session.action)
    if U.kind != V.kind:
        raise CommandError("U and V must both be word sets or both brick sets")
    flavor = opts.flavor
    if flavor is None:
        if U.kind == "bricks":
            flavor = gd.TWISTED
        else:
            flavor = gd.V2 if session.oracle.is_trivial else gd.V2G
    sigma = gd.min_witness(U, V, flavor, session.oracle, session.action)
    src, rng = gd.source(sigma), gd.range_(sigma)
    checks = {"source_equals_U": src == U, "range_inside_V": rng.issubset(V)}
    payload = {"bisection": str(sigma), "source": str(src), "range": str(rng),
               "checks": checks}
    return payload, str(sigma), all(checks.values())


def cmd_selftest(session: Session, args: list[str], opts):
    if len(args) != 1:
        raise CommandError("selftest needs one suite name")
    names = list(SUITES) if args[0] == "all" else [args[0]]
    if args[0] != "all" and args[0] not in SUITES:
        raise UnknownSuite(args[0])
    suites, lines, ok = [], [], True
    for name in names:
        number, title, _ = SUITES[name]
        checks = run_suite(name, opts.seed, opts.n)
        suite_ok = all(c.ok for c in checks)
        ok &= suite_ok
        suites.append({"suite": name, "criterion": number, "title": title, "ok": suite_ok,
                       "checks": [c.to_json() for c in checks]})
        lines += [c.line() for c in checks]
        lines.append(f"{'PASS' if suite_ok else 'FAIL'} suite {name}")
    return {"seed": opts.seed, "n": opts.n, "suites": suites}, "\n".join(lines), ok


HANDLERS = {
    "eval": cmd_eval,
    "act": cmd_act,
    "order": cmd_order,
    "center": cmd_center,
    "witness": cmd_witness,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cg", description="Labelled and twisted Thompson groups.")
    p.add_argument("command", nargs="?", help=", ".join(COMMANDS))
    p.add_argument("args", nargs="*", help="expression, point or clopen sets")
    p.add_argument("--oracle", help="label group: trivial, Z/n, S3, Fn, Z^n or a Cayley file name")
    p.add_argument("--action", help="action for twisted elements: Z, trivialN or NAME-regular")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--seed", type=int, default=0, help="seed for selftest (default 0)")
    p.add_argument("--script", help="file of commands and let bindings")
    p.add_argument("--n", type=int, default=None, help="case count for selftest")
    p.add_argument("--max", type=int, default=1000, help="bound for order")
    p.add_argument("--flavor", choices=[gd.V2, gd.V2G, gd.TWISTED], help="witness flavor")
    p.add_argument("--timing", action="store_true",
                   help="add elapsed seconds to reports (they stop being reproducible)")
    p.add_argument("--version", action="version", version=f"cg {__version__}")
    return p


def make_session(opts) -> Session:
    try:
        action = get_action(opts.action) if opts.action else None
        if opts.oracle:
            oracle = get_oracle(opts.oracle)
        else:
            oracle = action.oracle if action else trivial_group()
    except KeyError as exc:
        raise CommandError(exc.args[0]) from None
    return Session(oracle=oracle, action=action)


def run_command(session: Session, command: str, args: list[str], opts) -> dict:
    """Run one command and return its report."""
    report = {"version": REPORT_VERSION, "command": command, "args": list(args),
              "oracle": session.oracle.name,
              "action": session.action.name if session.action else None}
    start = time.perf_counter()
    try:
        if command not in HANDLERS:
            raise CommandError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
        payload, text, ok = HANDLERS[command](session, args, opts)
        report.update(ok=ok, result=payload, text=text)
    except (CantorGroupsError, KeyError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        if isinstance(exc, UnknownSuite):
            message = f"unknown suite {message!r}; expected one of all, {', '.join(SUITES)}"
        error = {"type": type(exc).__name__, "message": str(message)}
        if isinstance(exc, ParseError) and exc.position is not None:
            error["position"] = exc.position
        report.update(ok=False, error=error)
    if opts.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report


def _emit(report: dict, as_json: bool, out, err) -> None:
    if as_json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
    elif "error" in report:
        err.write(f"error: {report['error']['message']}\n")
    else:
        out.write(report["text"] + "\n")


def _line_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="script line", add_help=False, exit_on_error=False)
    p.add_argument("command")
    p.add_argument("args", nargs="*")
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--max", type=int)
    p.add_argument("--flavor", choices=[gd.V2, gd.V2G, gd.TWISTED])
    return p


def run_script(session: Session, text: str, opts) -> list[dict]:
    reports = []
    parser = _line_parser()
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("let "):
            reports.append(_let(session, line, number))
            continue
        try:
            tokens = shlex.split(line)
            ns, extra = parser.parse_known_args(tokens)
            if extra:
                raise CommandError(f"unexpected options {' '.join(extra)}")
        except (ValueError, argparse.ArgumentError, CantorGroupsError) as exc:
            reports.append({"version": REPORT_VERSION, "line": number, "command": line,
                            "ok": False,
                            "error": {"type": type(exc).__name__, "message": str(exc)}})
            continue
        line_opts = argparse.Namespace(**vars(opts))
        for key in ("seed", "n", "max", "flavor"):
            if getattr(ns, key) is not None:
                setattr(line_opts, key, getattr(ns, key))
        report = run_command(session, ns.command, ns.args, line_opts)
        report["line"] = number
        reports.append(report)
    return reports


def _let(session: Session, line: str, number: int) -> dict:
    report = {"version": REPORT_VERSION, "line": number, "command": "let"}
    name, eq, expr = line[4:].partition("=")
    name, expr = name.strip(), expr.strip()
    try:
        if not eq:
            raise ParseError("let needs NAME = EXPR")
        try:
            value = evaluate(expr, session)
        except ParseError as first:
            # a bare group element, e.g. let z = (1,0)
            try:
                value = Label(session.oracle.parse(expr), session.oracle)
            except (CantorGroupsError, ValueError):
                raise first from None
        session.bind(name, value)
        report.update(ok=True, name=name, result=value_to_json(value), text=f"{name} = {value}")
    except (CantorGroupsError, ValueError) as exc:
        report.update(ok=False, error={"type": type(exc).__name__, "message": str(exc)})
    return report


def main(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    opts = build_parser().parse_intermixed_args(argv)
    try:
        session = make_session(opts)
    except CantorGroupsError as exc:
        err.write(f"error: {exc}\n")
        return 2
    if opts.script:
        text = Path(opts.script).read_text()
        reports = run_script(session, text, opts)
        if opts.command:
            reports.append(run_command(session, opts.command, opts.args, opts))
        ok = all(r["ok"] for r in reports)
        if opts.json:
            out.write(json.dumps({"version": REPORT_VERSION, "command": "script",
                                  "ok": ok, "reports": reports}, sort_keys=True) + "\n")
        else:
            for r in reports:
                if "error" in r:
                    err.write(f"line {r.get('line')}: error: {r['error']['message']}\n")
                elif r["command"] != "let":
                    out.write(r["text"] + "\n")
        return 0 if ok else 1
    if not opts.command:
        err.write("error: no command given (or use --script FILE)\n")
        return 2
    report = run_command(session, opts.command, opts.args, opts)
    _emit(report, opts.json, out, err)
    if "error" in report:
        return 2
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
