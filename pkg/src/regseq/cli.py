"""Command line front end: ``regseq <command> [names...] --session FILE``.

Exit codes: 0 all checks passed, 1 a negative verdict, 2 two criteria
disagreed, 3 bad input or an aborted computation.  ``run`` executes every
command listed in the session file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .criteria import (
    Report,
    corollary2_check,
    depth_ext,
    format_depth,
    is_regular,
    is_strongly_regular,
    local_depth,
    monomial_ass,
    sop_regular_check,
    theorem_crosscheck,
)
from .errors import ParseError, RegseqError
from .fpmodule import ext_subquotient, is_zero, krull_dimension
from .groebner import Ideal, degree_cap, get_degree_cap
from .koszul import build_koszul, depth_via_koszul, homology_witness
from .polycore import parse_field
from .session import VERBS, Command, Session, parse_session

__all__ = ["main", "execute", "render", "combined_exit_code", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1
# negative < input error < inconsistency
_SEVERITY = {0: 0, 1: 1, 3: 2, 2: 3}


class CommandError(RegseqError):
    """A command is malformed or names an entity that does not exist."""


def _args(cmd: Command, *pattern):
    """Match ``cmd.args`` against ``pattern``; a trailing ``"*"`` takes the rest."""
    rest = pattern and pattern[-1] == "*"
    fixed = pattern[:-1] if rest else pattern
    if len(cmd.args) < len(fixed) or (not rest and len(cmd.args) > len(fixed)):
        usage = " ".join(fixed) + (" [PRIME...]" if rest else "")
        raise CommandError(f"usage: {cmd.verb} {usage}")
    return cmd.args[: len(fixed)], cmd.args[len(fixed):]


def _get(s: Session, name: str, *kinds):
    try:
        return s.lookup(name, kinds)
    except KeyError as exc:
        raise CommandError(exc.args[0]) from None


def _as_ideal(s: Session, name: str) -> Ideal:
    obj = _get(s, name, "ideals", "primes", "sequences")
    if isinstance(obj, Ideal):
        return obj
    if isinstance(obj, list):
        return Ideal(s.ring, obj)
    return obj.ideal


def _check(s, cmd, strict):
    (fn, mn), _ = _args(cmd, "SEQ", "MODULE")
    f, M = _get(s, fn, "sequences"), _get(s, mn, "modules")
    reg, strong = is_regular(f, M), is_strongly_regular(f, M)
    data = {"regular": reg.holds, "strongly_regular": strong.holds,
            "verdicts": {"regular": reg.to_json(), "strongly_regular": strong.to_json()}}
    for v in (strong, reg):
        if v.witness is not None and v.witness.element is not None:
            data["witness"] = str(v.witness.element)
            break
    status = "ok" if reg.holds and strong.holds else "negative"
    notes = []
    if strong.holds and not reg.holds:
        status = "inconsistent"
        notes.append("strongly regular but not regular")
    return Report("check", status, data, notes)


def _strong_check(s, cmd, strict):
    (fn, mn), _ = _args(cmd, "SEQ", "MODULE")
    v = is_strongly_regular(_get(s, fn, "sequences"), _get(s, mn, "modules"))
    data = {"strongly_regular": v.holds, "verdict": v.to_json()}
    if v.witness is not None:
        data["witness"] = str(v.witness.element)
    return Report("strong-check", "ok" if v.holds else "negative", data)


def _depth(s, cmd, strict):
    (mn,), _ = _args(cmd, "MODULE")
    M = _get(s, mn, "modules")
    d = depth_ext(M)
    data = {"depth": format_depth(d)}
    notes = []
    status = "ok"
    if M.is_graded:
        dk = depth_via_koszul(M)
        data["depth_koszul"] = format_depth(dk)
        if dk != d:
            status = "inconsistent"
            notes.append("Ext depth and Koszul depth disagree")
    else:
        notes.append("module not graded: Koszul cross-check skipped")
    return Report("depth", status, data, notes)


def _local_depth(s, cmd, strict):
    (mn, pn), _ = _args(cmd, "MODULE", "PRIME")
    M, p = _get(s, mn, "modules"), _get(s, pn, "primes")
    if strict and not p.verified:
        raise CommandError(f"prime {pn} is not a verified monomial prime (strict mode)")
    d = local_depth(M, p)
    return Report("local-depth", "ok", {"prime": str(p), "assertion": p.assertion,
                                         "local_depth": format_depth(d)})


def _koszul(s, cmd, strict):
    (fn, mn), _ = _args(cmd, "SEQ", "MODULE")
    K = build_koszul(_get(s, fn, "sequences"), _get(s, mn, "modules"))
    homology = []
    for i in range(K.length + 1):
        w = homology_witness(K, i)
        entry = {"index": i, "vanishes": w is None}
        if w is not None:
            entry["witness"] = str(w)
        homology.append(entry)
    data = {"ranks": list(K.ranks), "composites_vanish": K.composites_vanish(), "homology": homology}
    status = "ok" if data["composites_vanish"] else "inconsistent"
    return Report("koszul", status, data, [] if status == "ok" else ["d o d is not zero"])


def _ass(s, cmd, strict):
    (mn,), _ = _args(cmd, "MODULE")
    P = monomial_ass(_get(s, mn, "modules"))
    return Report("ass", "ok", {"ass": P.names(), "complete": P.complete})


def _ext(s, cmd, strict):
    (i, iname, mn), _ = _args(cmd, "INDEX", "IDEAL", "MODULE")
    if not i.isdigit():
        raise CommandError(f"Ext index must be a non-negative integer, got {i!r}")
    E, _ = ext_subquotient(int(i), _as_ideal(s, iname), _get(s, mn, "modules"))
    return Report("ext", "ok", {"index": int(i), "zero": is_zero(E), "generators": E.rank,
                                 "presentation": E.to_json()})


def _dim(s, cmd, strict):
    (mn,), _ = _args(cmd, "MODULE")
    return Report("dim", "ok", {"dim": krull_dimension(_get(s, mn, "modules"))})


def _theorem(s, cmd, strict):
    (fn, mn), extra = _args(cmd, "SEQ", "MODULE", "*")
    candidates = [_get(s, p, "primes") for p in extra] or None
    return theorem_crosscheck(_get(s, mn, "modules"), _get(s, fn, "sequences"), candidates, strict)


def _corollary2(s, cmd, strict):
    (fn, gn, mn), _ = _args(cmd, "SEQ", "SEQ", "MODULE")
    return corollary2_check(_get(s, mn, "modules"), _get(s, fn, "sequences"), _get(s, gn, "sequences"))


def _sop(s, cmd, strict):
    (fn, mn), _ = _args(cmd, "SEQ", "MODULE")
    return sop_regular_check(_get(s, mn, "modules"), _get(s, fn, "sequences"))


_HANDLERS = {
    "check": _check, "strong-check": _strong_check, "depth": _depth, "local-depth": _local_depth,
    "koszul": _koszul, "ass": _ass, "ext": _ext, "dim": _dim, "theorem": _theorem,
    "corollary2": _corollary2, "sop": _sop,
}
assert set(_HANDLERS) == set(VERBS)


def execute(cmd: Command, session: Session, strict: bool = False) -> dict:
    """Run one command; errors become a result with exit code 3 instead of raising."""
    strict = strict or bool(session.options.get("strict"))
    out = {"command": str(cmd)}
    try:
        report = _HANDLERS[cmd.verb](session, cmd, strict)
    except (RegseqError, ValueError) as exc:
        out.update({"status": "error", "error": str(exc), "error_type": type(exc).__name__,
                    "exit_code": 3})
        return out
    out.update({"status": report.status, "exit_code": report.exit_code, "report": report.to_json()})
    return out


def combined_exit_code(codes) -> int:
    worst = 0
    for c in codes:
        if _SEVERITY[c] > _SEVERITY[worst]:
            worst = c
    return worst


def _text_lines(value, indent: str):
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{indent}{k}:"
                yield from _text_lines(v, indent + "  ")
            else:
                yield f"{indent}{k}: {_scalar(v)}"
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                yield f"{indent}-"
                yield from _text_lines(v, indent + "  ")
            else:
                yield f"{indent}- {_scalar(v)}"
    else:
        yield f"{indent}{_scalar(value)}"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v == [] or v == {}:
        return "none"
    return str(v)


def render(results: list, fmt: str = "text") -> str:
    """Serialise command results.  JSON output is byte-stable for fixed input."""
    code = combined_exit_code(r["exit_code"] for r in results)
    if fmt == "json":
        doc = {"version": SCHEMA_VERSION, "results": results, "exit_code": code}
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = []
    for r in results:
        lines.append(f"== {r['command']}")
        lines.append(f"status: {r['status']}")
        if "error" in r:
            lines.append(f"error: {r['error']}")
        else:
            body = {k: v for k, v in r["report"].items() if k not in ("status", "kind")}
            lines.extend(_text_lines(body, "  "))
    lines.append(f"exit code: {code}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regseq", description="Decide regular and strongly regular sequences on modules.")
    parser.add_argument("command", choices=("run", "show") + VERBS,
                        help="verb to execute; 'run' executes the session's own commands")
    parser.add_argument("names", nargs="*", help="entity names (filler words on/at/of/with allowed)")
    parser.add_argument("--session", required=True, help="session file, '-' for stdin")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--field", help="coefficient field, q or gf:P")
    parser.add_argument("--degree-cap", type=int, help="total-degree limit for Groebner bases")
    parser.add_argument("--strict", action="store_true",
                        help="reject results that rest on user-asserted primes")
    parser.add_argument("--version", action="version", version=f"regseq {__version__}")
    return parser


def _fail(message: str, fmt: str, stdout) -> int:
    if fmt == "json":
        doc = {"version": SCHEMA_VERSION, "exit_code": 3, "results": [],
               "error": message}
        stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        print(f"regseq: error: {message}", file=sys.stderr)
    return 3


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        fld = parse_field(args.field) if args.field else None
        if args.session == "-":
            text = sys.stdin.read()
        else:
            with open(args.session, encoding="utf-8") as fh:
                text = fh.read()
        session = parse_session(text, field=fld)
    except ParseError as exc:
        return _fail(f"{args.session}: {exc}", args.format, stdout)
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        return _fail(str(exc), args.format, stdout)

    if args.command == "show":
        stdout.write(json.dumps(session.to_json(), sort_keys=True, indent=2) + "\n")
        return 0

    cap = session.options.get("degree-cap", get_degree_cap())
    if args.degree_cap is not None:
        cap = args.degree_cap
    env = os.environ.get("REGSEQ_DEGREE_CAP")
    if env:
        if not env.strip().isdigit() or int(env) < 1:
            return _fail(f"REGSEQ_DEGREE_CAP must be a positive integer, got {env!r}", args.format, stdout)
        cap = int(env)
    if cap < 1:
        return _fail("degree cap must be positive", args.format, stdout)

    if args.command == "run":
        commands = session.commands
    else:
        from .session import FILLERS
        commands = [Command(args.command, [a for a in args.names if a not in FILLERS])]

    with degree_cap(cap):
        results = [execute(c, session, args.strict) for c in commands]
    stdout.write(render(results, args.format))
    return combined_exit_code(r["exit_code"] for r in results)


if __name__ == "__main__":
    sys.exit(main())
