"""A small declarative language for describing a computation.

Statements end with ``;``.  ``#`` starts a comment.  Example::

    ring Q[x,y,z] order grevlex;
    module M = coker [[y*(x-1), y*z]];
    seq f = [z, x];
    check f on M;

Declarations: ``ring``, ``module NAME = coker [[...], ...] [graded [(s1, ..)]]``,
``module NAME = free N [graded]``, ``ideal``, ``seq``, ``prime`` and
``option (field|order|degree-cap|strict) [VALUE]``.  Any other statement is a
command: a verb followed by entity names, with the filler words ``on``,
``at``, ``of`` and ``with`` ignored.  Presentation matrices have one row per
generator and one column per relation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .criteria import PrimeCandidate
from .errors import GradingError, ParseError
from .fpmodule import FPModule, present
from .groebner import Ideal
from .polycore import PolyRing, TermOrder, parse_field

__all__ = ["Session", "Command", "VERBS", "parse_session"]

VERBS = ("check", "strong-check", "depth", "local-depth", "koszul", "ass", "ext", "dim",
         "theorem", "corollary2", "sop")
FILLERS = ("on", "at", "of", "with")
_NAME = r"[A-Za-z_][A-Za-z_0-9]*"


@dataclass
class Command:
    verb: str
    args: list
    line: int = 0

    def __str__(self):
        return " ".join([self.verb] + [str(a) for a in self.args])


@dataclass
class Session:
    ring: PolyRing | None = None
    modules: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    primes: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    def names(self) -> set:
        return set(self.modules) | set(self.ideals) | set(self.sequences) | set(self.primes)

    def lookup(self, name: str, kinds: tuple):
        for kind in kinds:
            table = getattr(self, kind)
            if name in table:
                return table[name]
        wanted = " or ".join(k.rstrip("s") for k in kinds)
        raise KeyError(f"unknown {wanted} {name!r}")

    # -- serialisation
    def to_json(self) -> dict:
        ring = None
        if self.ring is not None:
            ring = {"field": self.ring.field.tag, "variables": list(self.ring.variables),
                    "order": str(self.ring.order)}
        return {
            "ring": ring,
            "options": dict(self.options),
            "modules": {k: {"matrix": M.to_json(), "rank": M.rank,
                            "graded": None if M.shifts is None else list(M.shifts)}
                        for k, M in self.modules.items()},
            "ideals": {k: [str(g) for g in I.generators] for k, I in self.ideals.items()},
            "sequences": {k: [str(g) for g in s] for k, s in self.sequences.items()},
            "primes": {k: [str(g) for g in p.ideal.generators] for k, p in self.primes.items()},
            "commands": [{"verb": c.verb, "args": list(c.args)} for c in self.commands],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Session":
        s = cls(options=dict(data.get("options", {})))
        r = data.get("ring")
        if r is not None:
            s.ring = PolyRing(tuple(r["variables"]), parse_field(r["field"]), TermOrder(r["order"]))
        for k, m in data.get("modules", {}).items():
            rows = m["matrix"]
            if rows:
                M = FPModule.from_json(s.ring, rows, shifts=m.get("graded"))
            else:
                M = present(s.ring, m["rank"], (), shifts=m.get("graded"))
            s.modules[k] = M
        for k, gens in data.get("ideals", {}).items():
            s.ideals[k] = Ideal(s.ring, [s.ring.parse(g) for g in gens])
        for k, gens in data.get("sequences", {}).items():
            s.sequences[k] = [s.ring.parse(g) for g in gens]
        for k, gens in data.get("primes", {}).items():
            s.primes[k] = PrimeCandidate.of(s.ring, [s.ring.parse(g) for g in gens])
        s.commands = [Command(c["verb"], list(c["args"])) for c in data.get("commands", [])]
        return s

    def to_text(self) -> str:
        lines = []
        for k, v in self.options.items():
            if k == "strict":
                if v:
                    lines.append("option strict;")
            else:
                lines.append(f"option {k} {v};")
        if self.ring is not None:
            fld = "Q" if self.ring.field.tag == "q" else f"GF({self.ring.field.p})"
            lines.append(f"ring {fld}[{','.join(self.ring.variables)}] order {self.ring.order};")
        for k, M in self.modules.items():
            if M.is_free():
                body = f"free {M.rank}"
            else:
                body = "coker [" + ", ".join("[" + ", ".join(row) + "]" for row in M.to_json()) + "]"
            if M.shifts is not None:
                body += " graded (" + ", ".join(str(x) for x in M.shifts) + ")"
            lines.append(f"module {k} = {body};")
        for kind, table in (("ideal", self.ideals), ("seq", self.sequences), ("prime", self.primes)):
            for k, v in table.items():
                gens = v.generators if kind == "ideal" else v if kind == "seq" else v.ideal.generators
                lines.append(f"{kind} {k} = [" + ", ".join(str(g) for g in gens) + "];")
        for c in self.commands:
            lines.append(f"{c};")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing


class _Source:
    def __init__(self, text: str):
        self.text = text

    def position(self, offset: int):
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def error(self, message: str, offset: int):
        line, col = self.position(offset)
        return ParseError(message, line, col)


def _strip_comments(text: str) -> str:
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)


def _split_top(text: str, start: int, sep: str, src: _Source):
    """Split ``text`` at ``sep`` outside brackets; yields (piece, absolute offset)."""
    depth = 0
    pieces, begin = [], 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise src.error(f"unbalanced {ch!r}", start + i)
        elif ch == sep and depth == 0:
            pieces.append((text[begin:i], start + begin))
            begin = i + 1
    if depth != 0:
        raise src.error("unbalanced brackets", start + len(text))
    pieces.append((text[begin:], start + begin))
    return pieces


def _bracket_body(text: str, start: int, src: _Source):
    """``text`` must be ``[ ... ]``; return inner text and its offset."""
    lead = len(text) - len(text.lstrip())
    if not text[lead:].startswith("["):
        raise src.error("expected a bracketed list", start + lead)
    depth = 0
    for i in range(lead, len(text)):
        if text[i] == "[":
            depth += 1
        elif text[i] == "]":
            depth -= 1
            if depth == 0:
                break
    else:
        raise src.error("unbalanced '['", start + lead)
    if text[i + 1:].strip():
        extra = i + 1 + len(text[i + 1:]) - len(text[i + 1:].lstrip())
        raise src.error("expected ';' after the list", start + extra)
    return text[lead + 1:i], start + lead + 1


class _SessionParser:
    def __init__(self, text: str, field_override=None):
        self.src = _Source(text)
        self.field_override = field_override
        self.session = Session()

    def parse(self) -> Session:
        text = _strip_comments(self.src.text)
        for stmt, offset in _split_top(text, 0, ";", self.src):
            if not stmt.strip():
                continue
            lead = len(stmt) - len(stmt.lstrip())
            self.statement(stmt.strip(), offset + lead)
        return self.session

    # -- helpers
    def poly(self, text: str, offset: int):
        ring = self.require_ring(offset)
        lead = len(text) - len(text.lstrip())
        body = text.strip()
        if not body:
            raise self.src.error("empty polynomial", offset)
        try:
            return ring.parse(body)
        except ParseError as exc:
            raise self.src.error(exc.message, offset + lead + (exc.column or 1) - 1) from None

    def poly_list(self, text: str, offset: int) -> list:
        inner, ioff = _bracket_body(text, offset, self.src)
        if not inner.strip():
            return []
        return [self.poly(piece, off) for piece, off in _split_top(inner, ioff, ",", self.src)]

    def require_ring(self, offset: int) -> PolyRing:
        if self.session.ring is None:
            raise self.src.error("no ring declared yet", offset)
        return self.session.ring

    def declare(self, name: str, offset: int):
        if name in self.session.names():
            raise self.src.error(f"name {name!r} already declared", offset)

    # -- statements
    def statement(self, stmt: str, offset: int):
        head = re.match(r"[A-Za-z][A-Za-z0-9_-]*", stmt)
        if not head:
            raise self.src.error(f"cannot parse statement {stmt[:20]!r}", offset)
        word = head.group(0)
        handler = {"ring": self.ring, "module": self.module, "ideal": self.entity,
                   "seq": self.entity, "prime": self.entity, "option": self.option}.get(word)
        if handler is not None:
            handler(stmt, offset)
        elif word in VERBS:
            self.command(stmt, offset)
        else:
            raise self.src.error(f"unknown statement {word!r}", offset)

    def ring(self, stmt: str, offset: int):
        m = re.fullmatch(r"ring\s+(?P<field>[^\[\s]+)\s*\[(?P<vars>[^\]]*)\]\s*(?:order\s+(?P<order>\w+))?\s*",
                         stmt)
        if not m:
            raise self.src.error("expected 'ring FIELD[x,y,...] [order ORDER]'", offset)
        if self.session.ring is not None:
            raise self.src.error("ring declared twice", offset)
        try:
            fld = self.field_override or parse_field(m.group("field"))
            names = tuple(v.strip() for v in m.group("vars").split(",") if v.strip())
            order = TermOrder(self.session.options.get("order", m.group("order") or "grevlex"))
            self.session.ring = PolyRing(names, fld, order)
        except ValueError as exc:
            raise self.src.error(str(exc), offset) from None

    def option(self, stmt: str, offset: int):
        m = re.fullmatch(r"option\s+(?P<key>[\w-]+)(?:\s+(?P<value>\S+))?\s*", stmt)
        if not m:
            raise self.src.error("expected 'option NAME [VALUE]'", offset)
        key, value = m.group("key"), m.group("value")
        if key == "strict":
            self.session.options["strict"] = True
        elif key == "degree-cap":
            if value is None or not value.isdigit():
                raise self.src.error("degree-cap needs a positive integer", offset)
            self.session.options["degree-cap"] = int(value)
        elif key in ("field", "order"):
            if value is None:
                raise self.src.error(f"option {key} needs a value", offset)
            if self.session.ring is not None:
                raise self.src.error(f"option {key} must precede the ring declaration", offset)
            try:
                if key == "field":
                    self.field_override = self.field_override or parse_field(value)
                else:
                    TermOrder(value)
            except ValueError as exc:
                raise self.src.error(str(exc), offset) from None
            self.session.options[key] = value
        else:
            raise self.src.error(f"unknown option {key!r}", offset)

    def module(self, stmt: str, offset: int):
        m = re.match(rf"module\s+(?P<name>{_NAME})\s*=\s*", stmt)
        if not m:
            raise self.src.error("expected 'module NAME = ...'", offset)
        name = m.group("name")
        self.declare(name, offset)
        ring = self.require_ring(offset)
        body, boff = stmt[m.end():], offset + m.end()
        shifts, graded = None, False
        g = re.search(r"\s+graded(?:\s*\((?P<shifts>[^)]*)\))?\s*$", body)
        if g:
            graded = True
            if g.group("shifts") is not None:
                try:
                    shifts = [int(s) for s in g.group("shifts").split(",") if s.strip()]
                except ValueError:
                    raise self.src.error("degree shifts must be integers", boff + g.start()) from None
            body = body[: g.start()]
        free = re.fullmatch(r"free\s+(\d+)\s*", body)
        try:
            if free:
                rank = int(free.group(1))
                M = present(ring, rank, (), shifts=shifts, graded=graded)
            else:
                c = re.match(r"coker\s*", body)
                if not c:
                    raise self.src.error("expected 'free N' or 'coker [[...]]'", boff)
                inner, ioff = _bracket_body(body[c.end():], boff + c.end(), self.src)
                rows = [self.poly_list(piece, off) for piece, off in _split_top(inner, ioff, ",", self.src)
                        if piece.strip()]
                if not rows:
                    raise self.src.error("empty presentation matrix", boff)
                ncols = len(rows[0])
                if any(len(r) != ncols for r in rows):
                    raise self.src.error("rows of the presentation matrix differ in length", boff)
                cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
                M = present(ring, len(rows), cols, shifts=shifts, graded=graded)
        except GradingError as exc:
            raise self.src.error(f"inhomogeneous generator under 'graded': {exc}", offset) from None
        self.session.modules[name] = M

    def entity(self, stmt: str, offset: int):
        m = re.match(rf"(?P<kind>ideal|seq|prime)\s+(?P<name>{_NAME})\s*=\s*", stmt)
        if not m:
            raise self.src.error("expected 'KIND NAME = [...]'", offset)
        name, kind = m.group("name"), m.group("kind")
        self.declare(name, offset)
        polys = self.poly_list(stmt[m.end():], offset + m.end())
        ring = self.session.ring
        if kind == "ideal":
            self.session.ideals[name] = Ideal(ring, polys)
        elif kind == "seq":
            self.session.sequences[name] = polys
        else:
            self.session.primes[name] = PrimeCandidate.of(ring, polys)

    def command(self, stmt: str, offset: int):
        words = stmt.split()
        verb = words[0]
        args = [w for w in words[1:] if w not in FILLERS]
        line, _ = self.src.position(offset)
        self.session.commands.append(Command(verb, args, line))


def parse_session(text: str, field=None) -> Session:
    """Parse and validate a session; ``field`` overrides the declared coefficient field."""
    return _SessionParser(text, field).parse()
