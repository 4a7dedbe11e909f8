"""Text syntax for elements, points and clopen sets, and the expression language.

Literals::

    V{ 00 -> 1 : a, 01 -> 00, 1 -> 01 : b^-1 }
    SV{ {0:0} -[1]-> {1:1}, {0:1} -> {1:0} }
    B{ 0 => 1 [a], 1 => 0 [e] }          B{ {0:0} => {1:1} [1] }

Expressions combine literals and bound names with ``*``, ``^k``, ``^-1``,
parentheses and the functions ``pi``, ``iota0``, ``iotaE``, ``J``, ``I``,
``tau`` and ``tor``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Optional

from . import groupoid as gd
from .cantor import CantorPoint, parse_word
from .errors import CantorGroupsError, ParseError
from .groups import GroupOracle, SAction, trivial_group
from .twisted import Brick, CubePoint, TwistTable, tau, tt_inv, tt_mul, tt_pow
from .vtables import (GTable, inv, iota0, iota_empty, mul, pi_forget, power,
                      torsion_generator)

_OPEN = {"(": ")", "{": "}", "[": "]"}
_CLOSE = {v: k for k, v in _OPEN.items()}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?\d+")

FUNCTIONS = ("pi", "iota0", "iotaE", "J", "I", "tau", "tor")


def matching(text: str, i: int) -> int:
    """Index of the bracket closing the one at ``text[i]``."""
    stack = []
    for j in range(i, len(text)):
        ch = text[j]
        if ch in _OPEN:
            stack.append(ch)
        elif ch in _CLOSE:
            if not stack or stack[-1] != _CLOSE[ch]:
                raise ParseError(f"unbalanced {ch!r}", j, text)
            stack.pop()
            if not stack:
                return j
    raise ParseError(f"unclosed {text[i]!r}", i, text)


def split_top(text: str, offset: int = 0, sep: str = ",") -> list[tuple[str, int]]:
    """Split at separators outside brackets; each piece keeps its offset."""
    out, depth, start = [], 0, 0
    for j, ch in enumerate(text):
        if ch in _OPEN:
            depth += 1
        elif ch in _CLOSE:
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:j], offset + start))
            start = j + 1
    out.append((text[start:], offset + start))
    return [(piece, pos) for piece, pos in out]


def _strip(piece: str, pos: int) -> tuple[str, int]:
    lead = len(piece) - len(piece.lstrip())
    return piece.strip(), pos + lead


def _items(body: str, offset: int) -> list[tuple[str, int]]:
    if not body.strip():
        return []
    return [_strip(p, q) for p, q in split_top(body, offset)]


def _word(text: str, pos: int, src: str) -> str:
    try:
        return parse_word(text)
    except CantorGroupsError as exc:
        raise ParseError(str(exc), pos, src) from None


def _label(oracle: GroupOracle, text: str, pos: int, src: str):
    pos += len(text) - len(text.lstrip())
    try:
        return oracle.parse(text)
    except (CantorGroupsError, ValueError) as exc:
        raise ParseError(str(exc).split(" at position")[0], pos, src) from None


def _brick(text: str, pos: int, src: str, action: SAction) -> Brick:
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"expected a brick {{s:w, ...}}, got {text!r}", pos, src)
    entries = {}
    for item, ipos in _items(text[1:-1], pos + 1):
        if ":" not in item:
            raise ParseError(f"brick entry {item!r} needs the form s:w", ipos, src)
        s_text, w_text = item.split(":", 1)
        try:
            s = action.parse_s(s_text)
        except (CantorGroupsError, ValueError) as exc:
            raise ParseError(str(exc).split(" at position")[0], ipos, src) from None
        if s in entries:
            raise ParseError(f"coordinate {s_text.strip()!r} repeated", ipos, src)
        entries[s] = _word(w_text, ipos + len(s_text) + 1, src)
    return Brick(entries, action)


# ---------------------------------------------------------------------------
# literal bodies


def _gtable_body(body: str, offset: int, src: str, oracle: GroupOracle) -> GTable:
    slots = []
    for item, pos in _items(body, offset):
        if "->" not in item:
            raise ParseError(f"table slot {item!r} needs w -> w'", pos, src)
        left, right = item.split("->", 1)
        if ":" in left:
            # labels sit on domain slots and are written after the image
            raise ParseError("ambiguous label placement; write w -> w' : g", pos, src)
        rpos = pos + len(left) + 2
        if ":" in right:
            image, lab = right.split(":", 1)
            g = _label(oracle, lab, rpos + len(image) + 1, src)
        else:
            image, g = right, oracle.identity
        slots.append((_word(left, pos, src), _word(image, rpos, src), g))
    if not slots:
        raise ParseError("empty table", offset, src)
    return GTable(slots, oracle)


_ARROW = re.compile(r"\s*-(?:\[(?P<g>[^\]]*)\]-)?>\s*")


def _twisttable_body(body: str, offset: int, src: str, action: SAction) -> TwistTable:
    pieces = []
    for item, pos in _items(body, offset):
        if not item.startswith("{"):
            raise ParseError("expected a brick", pos, src)
        end = matching(item, 0)
        m = _ARROW.match(item, end + 1)
        if not m:
            raise ParseError("expected -> or -[g]->", pos + end + 1, src)
        g = action.oracle.identity
        if m.group("g") is not None:
            g = _label(action.oracle, m.group("g"), pos + m.start("g"), src)
        d = _brick(item[: end + 1], pos, src, action)
        i = _brick(item[m.end():].strip(), pos + m.end(), src, action)
        pieces.append((d, g, i))
    if not pieces:
        raise ParseError("empty table", offset, src)
    return TwistTable(pieces, action)


_BIS_ITEM = re.compile(r"^(?P<w>.*?)\s*=>\s*(?P<wp>[^\[]*?)\s*(?:\[(?P<g>.*)\])?$", re.S)


def _bisection_body(body: str, offset: int, src: str, oracle: Optional[GroupOracle],
                    action: Optional[SAction]) -> gd.Bisection:
    items = _items(body, offset)
    twisted = bool(items) and items[0][0].startswith("{")
    if twisted and action is None:
        raise ParseError("twisted bisections need an action", offset, src)
    group = action.oracle if twisted else (oracle or trivial_group())
    parts = []
    for item, pos in items:
        if twisted:
            if not item.startswith("{"):
                raise ParseError("expected a brick", pos, src)
            end = matching(item, 0)
            rest = item[end + 1:]
            m = re.match(r"\s*=>\s*", rest)
            if not m:
                raise ParseError("expected =>", pos + end + 1, src)
            rpos = pos + end + 1 + m.end()
            rest = rest[m.end():]
            if not rest.startswith("{"):
                raise ParseError("expected a brick", rpos, src)
            rend = matching(rest, 0)
            tail = rest[rend + 1:].strip()
            w = _brick(item[: end + 1], pos, src, action)
            wp = _brick(rest[: rend + 1], rpos, src, action)
            label_text, label_pos = tail, rpos + rend + 1
        else:
            m = _BIS_ITEM.match(item)
            if not m or "=>" not in item:
                raise ParseError(f"bisection part {item!r} needs w => w' [g]", pos, src)
            w = _word(m.group("w"), pos, src)
            wp = _word(m.group("wp"), pos + m.start("wp"), src)
            label_text = "" if m.group("g") is None else f"[{m.group('g')}]"
            label_pos = pos + (m.start("g") - 1 if m.group("g") is not None else len(item))
        if label_text:
            if not (label_text.startswith("[") and label_text.endswith("]")):
                raise ParseError("expected [g]", label_pos, src)
            g = _label(group, label_text[1:-1], label_pos + 1, src)
        else:
            g = group.identity
        parts.append(gd.TwistedPart(wp, w, g) if twisted else gd.Part(wp, w, g))
    if twisted:
        return gd.Bisection(parts, gd.TWISTED, action=action)
    flavor = gd.V2 if group.is_trivial else gd.V2G
    return gd.Bisection(parts, flavor, group)


def _literal(text: str, prefix: str) -> tuple[str, int]:
    t = text.strip()
    lead = len(text) - len(text.lstrip())
    if not t.startswith(prefix + "{"):
        raise ParseError(f"expected {prefix}{{...}}", lead, text)
    start = lead + len(prefix)
    end = matching(text, start)
    if text[end + 1:].strip():
        raise ParseError("trailing input", end + 1, text)
    return text[start + 1:end], start + 1


def parse_gtable(text: str, oracle: Optional[GroupOracle] = None) -> GTable:
    body, off = _literal(text, "V")
    return _gtable_body(body, off, text, oracle or trivial_group())


def parse_twisttable(text: str, action: SAction) -> TwistTable:
    body, off = _literal(text, "SV")
    return _twisttable_body(body, off, text, action)


def parse_bisection(text: str, oracle: Optional[GroupOracle] = None,
                    action: Optional[SAction] = None) -> gd.Bisection:
    body, off = _literal(text, "B")
    return _bisection_body(body, off, text, oracle, action)


def parse_brick(text: str, action: SAction) -> Brick:
    return _brick(text.strip(), 0, text, action)


def parse_cube_point(text: str, action: SAction) -> CubePoint:
    """``{s:x, ...}|default`` with the default point optional (it is (0))."""
    t = text.strip()
    if not t.startswith("{"):
        raise ParseError("expected {s:x, ...}", 0, text)
    end = matching(t, 0)
    default = CantorPoint("", "0")
    rest = t[end + 1:].strip()
    if rest:
        if not rest.startswith("|"):
            raise ParseError("expected |default", end + 1, text)
        default = CantorPoint.parse(rest[1:].strip())
    support = {}
    for item, pos in _items(t[1:end], 1):
        if ":" not in item:
            raise ParseError(f"entry {item!r} needs the form s:x", pos, text)
        s_text, x_text = item.split(":", 1)
        s = action.parse_s(s_text)
        if s in support:
            raise ParseError(f"coordinate {s_text.strip()!r} repeated", pos, text)
        support[s] = CantorPoint.parse(x_text.strip())
    return CubePoint(support, default)


def parse_point(text: str) -> CantorPoint:
    return CantorPoint.parse(text.strip())


def parse_clopen(text: str, action: Optional[SAction] = None) -> gd.ClopenSet:
    """``{0,10}`` for a union of cylinders, ``[{0:0}, {1:1}]`` for bricks."""
    t = text.strip()
    if t.startswith("["):
        if action is None:
            raise ParseError("brick sets need an action", 0, text)
        end = matching(t, 0)
        if t[end + 1:].strip():
            raise ParseError("trailing input", end + 1, text)
        bricks = [_brick(item, pos, text, action) for item, pos in _items(t[1:end], 1)]
        return gd.clopen_of_bricks(bricks, action)
    if not (t.startswith("{") and t.endswith("}")):
        raise ParseError("expected {w, ...} or [brick, ...]", 0, text)
    return gd.clopen_of_words([_word(item, pos, text) for item, pos in _items(t[1:-1], 1)])


# ---------------------------------------------------------------------------
# expressions


@dataclass
class Label:
    """A bare group element, produced by ``let`` bindings."""

    value: Any
    oracle: GroupOracle

    def __str__(self):
        return self.oracle.format(self.value)


@dataclass
class Session:
    oracle: GroupOracle = field(default_factory=trivial_group)
    action: Optional[SAction] = None
    bindings: dict = field(default_factory=dict)

    def bind(self, name: str, value) -> None:
        if not _NAME.fullmatch(name) or name in FUNCTIONS:
            raise ParseError(f"invalid name {name!r}")
        if name in self.bindings:
            raise ParseError(f"name {name!r} is already bound")
        self.bindings[name] = value

    def need_action(self, pos: int, text: str) -> SAction:
        if self.action is None:
            raise ParseError("twisted elements need an action (--action)", pos, text)
        return self.action


def _kind(v) -> str:
    return type(v).__name__


def multiply(a, b, pos: int = 0, text: str = ""):
    if isinstance(a, GTable) and isinstance(b, GTable):
        return mul(a, b)
    if isinstance(a, TwistTable) and isinstance(b, TwistTable):
        return tt_mul(a, b)
    if isinstance(a, gd.Bisection) and isinstance(b, gd.Bisection):
        return gd.compose(a, b)
    if isinstance(a, Label) and isinstance(b, Label):
        return Label(a.oracle.mul(a.value, b.value), a.oracle)
    raise ParseError(f"cannot multiply {_kind(a)} by {_kind(b)}", pos, text)


def raise_power(a, k: int, pos: int = 0, text: str = ""):
    if isinstance(a, GTable):
        return inv(a) if k == -1 else power(a, k)
    if isinstance(a, TwistTable):
        return tt_inv(a) if k == -1 else tt_pow(a, k)
    if isinstance(a, Label):
        return Label(a.oracle.power(a.value, k), a.oracle)
    if isinstance(a, gd.Bisection):
        if k == 0:
            return gd.unit_bisection(gd.source(a), a.flavor, a.oracle, a.action)
        base = gd.invert(a) if k < 0 else a
        out = base
        for _ in range(abs(k) - 1):
            out = gd.compose(out, base)
        return out
    raise ParseError(f"cannot raise {_kind(a)} to a power", pos, text)


class _Parser:
    def __init__(self, text: str, session: Session):
        self.text = text
        self.pos = 0
        self.session = session

    def error(self, message: str, pos: Optional[int] = None):
        return ParseError(message, self.pos if pos is None else pos, self.text)

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.at(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def parse(self):
        value = self.expr()
        self.ws()
        if self.pos != len(self.text):
            raise self.error("unexpected input")
        return value

    def expr(self):
        value = self.term()
        while self.at("*"):
            op = self.pos
            self.pos += 1
            value = multiply(value, self.term(), op, self.text)
        return value

    def term(self):
        value = self.atom()
        while self.at("^"):
            op = self.pos
            self.pos += 1
            self.ws()
            m = _INT.match(self.text, self.pos)
            if not m:
                raise self.error("expected an integer exponent")
            self.pos = m.end()
            value = raise_power(value, int(m.group()), op, self.text)
        return value

    def atom(self):
        self.ws()
        start = self.pos
        if self.at("("):
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        for prefix in ("SV", "V", "B"):
            if self.text.startswith(prefix + "{", start):
                return self.literal(prefix)
        m = _NAME.match(self.text, start)
        if not m:
            raise self.error("expected an element")
        name = m.group()
        self.pos = m.end()
        if name in FUNCTIONS and self.at("("):
            return self.call(name, start)
        if name in self.session.bindings:
            return self.session.bindings[name]
        raise self.error(f"unknown name {name!r}", start)

    def literal(self, prefix: str):
        open_at = self.pos + len(prefix)
        end = matching(self.text, open_at)
        body, off = self.text[open_at + 1:end], open_at + 1
        self.pos = end + 1
        s = self.session
        if prefix == "V":
            return _gtable_body(body, off, self.text, s.oracle)
        if prefix == "SV":
            return _twisttable_body(body, off, self.text, s.need_action(open_at, self.text))
        return _bisection_body(body, off, self.text, s.oracle, s.action)

    def raw_argument(self) -> tuple[str, int]:
        self.ws()
        open_at = self.pos
        end = matching(self.text, open_at)
        self.pos = end + 1
        return self.text[open_at + 1:end], open_at + 1

    def group_argument(self, oracle: GroupOracle):
        raw, pos = self.raw_argument()
        bound = self.session.bindings.get(raw.strip())
        if isinstance(bound, Label):
            return bound.value
        return _label(oracle, raw, pos, self.text)

    def call(self, name: str, start: int):
        s = self.session
        if name in ("iota0", "iotaE"):
            g = self.group_argument(s.oracle)
            return iota0(g, s.oracle) if name == "iota0" else iota_empty(g, s.oracle)
        if name == "tau":
            action = s.need_action(start, self.text)
            return tau(self.group_argument(action.oracle), action)
        if name == "tor":
            raw, pos = self.raw_argument()
            if not raw.strip().isdigit() or int(raw) < 2:
                raise self.error("tor needs an integer n >= 2", pos)
            return torsion_generator(int(raw), s.oracle)
        self.expect("(")
        arg = self.expr()
        self.expect(")")
        if name == "pi" and isinstance(arg, GTable):
            return pi_forget(arg)
        if name == "J" and isinstance(arg, GTable):
            return gd.J_map(arg)
        if name == "J" and isinstance(arg, TwistTable):
            return gd.J_map_twisted(arg)
        if name == "I" and isinstance(arg, gd.Bisection):
            return gd.I_map_twisted(arg) if arg.twisted else gd.I_map(arg)
        raise self.error(f"{name} does not apply to {_kind(arg)}", start)


def evaluate(text: str, session: Optional[Session] = None):
    """Evaluate an expression; the value is a GTable, TwistTable, Bisection or Label."""
    return _Parser(text, session or Session()).parse()


def format_value(value) -> str:
    return str(value)


def value_to_json(value) -> dict:
    if isinstance(value, Label):
        return {"type": "label", "text": str(value)}
    kind = {GTable: "V", TwistTable: "SV", gd.Bisection: "B"}[type(value)]
    return {"type": kind, "text": str(value), "data": value.to_json()}


__all__ = [
    "Session", "Label", "evaluate", "multiply", "raise_power", "parse_gtable",
    "parse_twisttable", "parse_bisection", "parse_brick", "parse_cube_point",
    "parse_point", "parse_clopen", "format_value", "value_to_json", "split_top",
    "matching", "FUNCTIONS",
]
