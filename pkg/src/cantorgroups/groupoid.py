"""Compact open bisections of the groupoids V2, V2 x G and SV2 x| G.

A standard part of V2 x G is written ``(w', w, g)``; it is the set of arrows
``((w'z, |w| - |w'|, wz), g)``, with source ``w`` and range ``w'``.  In the
twisted flavour ``w'`` and ``w`` are bricks and the arrow set is the product
of the coordinate parts times ``{g}``; its source is the brick ``w`` moved by
``g^-1`` and its range is ``w'``.

Bisections are finite lists of parts with disjoint sources and disjoint
ranges.  Full bisections (source and range the whole unit space) form the
topological full group, and ``I_map``/``J_map`` translate them to and from
tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .cantor import CantorPoint, dyadic_sum, format_word
from .errors import ContainmentError, EmptyTarget, NotFull, OverlapError, ShiftZeroIdentity
from .groups import GroupOracle, SAction, trivial_group
from .twisted import (Brick, TwistTable, brick_intersect, bricks_disjoint, split_brick,
                      twist_brick)
from .vtables import GTable

V2 = "V2"
V2G = "V2xG"
TWISTED = "SV2xG"


@dataclass(frozen=True)
class Part:
    """Standard part ``(w', w, g)`` of V2 x G: source ``w``, range ``w'``."""

    wp: str
    w: str
    g: object

    @property
    def n(self) -> int:
        return len(self.w) - len(self.wp)


@dataclass(frozen=True)
class TwistedPart:
    """Standard part of SV2 x| G given by image brick, domain brick and label."""

    wp: Brick
    w: Brick
    g: object


# ---------------------------------------------------------------------------
# Clopen sets


class ClopenSet:
    """A finite disjoint union of cylinders (words) or of bricks."""

    __slots__ = ("blocks", "kind", "action")

    def __init__(self, blocks: Iterable, kind: str = "words",
                 action: Optional[SAction] = None, check: bool = True):
        blocks = list(blocks)
        self.kind = kind
        self.action = action
        if check:
            for i, a in enumerate(blocks):
                for b in blocks[i + 1:]:
                    if not self._disjoint(a, b):
                        raise OverlapError(f"blocks {a!r} and {b!r} intersect")
        if kind == "words":
            blocks.sort()
        else:
            blocks.sort(key=lambda b: b.sort_key(action))
        self.blocks = tuple(blocks)

    def _disjoint(self, a, b) -> bool:
        if self.kind == "words":
            return not (a.startswith(b) or b.startswith(a))
        return bricks_disjoint(a, b)

    def _meet_depth(self, a, b) -> Optional[int]:
        if self.kind == "words":
            if a.startswith(b):
                return len(a)
            if b.startswith(a):
                return len(b)
            return None
        c = brick_intersect(a, b)
        return None if c is None else c.depth()

    def _depth(self, a) -> int:
        return len(a) if self.kind == "words" else a.depth()

    def measure(self) -> Fraction:
        return dyadic_sum(self._depth(a) for a in self.blocks)

    def is_empty(self) -> bool:
        return not self.blocks

    def is_full(self) -> bool:
        return self.measure() == 1

    def issubset(self, other: "ClopenSet") -> bool:
        # other's blocks are disjoint, so a block lies inside their union
        # exactly when the measures of its pieces add up
        for a in self.blocks:
            meets = (self._meet_depth(a, b) for b in other.blocks)
            covered = dyadic_sum(d for d in meets if d is not None)
            if covered != Fraction(1, 1 << self._depth(a)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ClopenSet):
            return NotImplemented
        return self.issubset(other) and other.issubset(self)

    def __hash__(self):
        return hash(self.measure())

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        if self.kind == "words":
            return "{" + ",".join(format_word(w) for w in self.blocks) + "}"
        return "[" + ", ".join(b.format(self.action) for b in self.blocks) + "]"

    def __repr__(self):
        return f"ClopenSet({self})"


# ---------------------------------------------------------------------------
# Bisections


class Bisection:
    """A finite union of standard parts with disjoint sources and disjoint ranges."""

    __slots__ = ("parts", "flavor", "oracle", "action")

    def __init__(self, parts: Iterable, flavor: str, oracle: Optional[GroupOracle] = None,
                 action: Optional[SAction] = None, check: bool = True):
        self.parts = tuple(parts)
        self.flavor = flavor
        self.action = action
        if flavor == TWISTED:
            if action is None:
                raise ValueError("twisted bisections need an action")
            oracle = action.oracle
        self.oracle = oracle or trivial_group()
        if check:
            source(self)
            range_(self)

    @property
    def twisted(self) -> bool:
        return self.flavor == TWISTED

    def _like(self, parts) -> "Bisection":
        return Bisection(parts, self.flavor, self.oracle, self.action, check=False)

    def __mul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Bisection):
            return NotImplemented
        return bisection_equal(self, other)

    __hash__ = None

    def __str__(self):
        fmt = self.oracle.format
        items = []
        for p in self.parts:
            if self.twisted:
                items.append(f"{p.w.format(self.action)} => {p.wp.format(self.action)} [{fmt(p.g)}]")
            else:
                items.append(f"{format_word(p.w)} => {format_word(p.wp)} [{fmt(p.g)}]")
        return "B{ " + ", ".join(items) + " }"

    def __repr__(self):
        return f"Bisection({self})"

    def to_json(self) -> dict:
        fmt = self.oracle.format
        if self.twisted:
            a = self.action
            parts = [{"domain": {a.format_s(s): w for s, w in p.w.items},
                      "image": {a.format_s(s): w for s, w in p.wp.items},
                      "label": fmt(p.g)} for p in self.parts]
            return {"flavor": self.flavor, "action": a.name, "parts": parts}
        parts = [{"domain": p.w, "image": p.wp, "label": fmt(p.g)} for p in self.parts]
        return {"flavor": self.flavor, "oracle": self.oracle.name, "parts": parts}


def part_source(p, b: Bisection):
    if b.twisted:
        return twist_brick(b.oracle.inv(p.g), p.w, b.action)
    return p.w


def part_range(p, b: Bisection):
    return p.wp


def source(b: Bisection) -> ClopenSet:
    kind = "bricks" if b.twisted else "words"
    return ClopenSet((part_source(p, b) for p in b.parts), kind, b.action)


def range_(b: Bisection) -> ClopenSet:
    kind = "bricks" if b.twisted else "words"
    return ClopenSet((p.wp for p in b.parts), kind, b.action)


def is_full(b: Bisection) -> bool:
    return source(b).is_full() and range_(b).is_full()


def _compose_words(wpa: str, wa: str, wpb: str, wb: str) -> Optional[tuple[str, str]]:
    # a after b; a's source is wa, b's range is wpb
    if wpb.startswith(wa):
        return wpa + wpb[len(wa):], wb
    if wa.startswith(wpb):
        return wpa, wb + wa[len(wpb):]
    return None


def compose_parts(pa, pb, b: Bisection):
    """``pa . pb`` (``pb`` first) as a standard part, or ``None``."""
    oracle = b.oracle
    if not b.twisted:
        r = _compose_words(pa.wp, pa.w, pb.wp, pb.w)
        if r is None:
            return None
        return Part(r[0], r[1], oracle.mul(pa.g, pb.g))
    action = b.action
    # (x, h)(y, k) = (x . h(y), hk): move b's bricks by a's label first
    bwp = twist_brick(pa.g, pb.wp, action)
    bw = twist_brick(pa.g, pb.w, action)
    wp, w = {}, {}
    for s in set(pa.wp.d) | set(pa.w.d) | set(bwp.d) | set(bw.d):
        r = _compose_words(pa.wp.get(s), pa.w.get(s), bwp.get(s), bw.get(s))
        if r is None:
            return None
        wp[s], w[s] = r
    return TwistedPart(Brick(wp, action), Brick(w, action), oracle.mul(pa.g, pb.g))


def compose(a: Bisection, b: Bisection) -> Bisection:
    """Groupoid product ``ab`` restricted to where it is defined."""
    if a.flavor != b.flavor:
        raise ValueError(f"cannot compose {a.flavor} with {b.flavor}")
    out = []
    for pb in b.parts:
        for pa in a.parts:
            p = compose_parts(pa, pb, a)
            if p is not None:
                out.append(p)
    return a._like(out)


def invert_part(p, b: Bisection):
    ginv = b.oracle.inv(p.g)
    if b.twisted:
        return TwistedPart(twist_brick(ginv, p.w, b.action),
                           twist_brick(ginv, p.wp, b.action), ginv)
    return Part(p.w, p.wp, ginv)


def invert(a: Bisection) -> Bisection:
    return a._like(invert_part(p, a) for p in a.parts)


def is_unit_part(p, b: Bisection) -> bool:
    return p.wp == p.w and b.oracle.is_identity(p.g)


def unit_bisection(U: ClopenSet, flavor: str, oracle=None, action=None) -> Bisection:
    oracle = action.oracle if action is not None else (oracle or trivial_group())
    e = oracle.identity
    if flavor == TWISTED:
        parts = [TwistedPart(B, B, e) for B in U.blocks]
    else:
        parts = [Part(w, w, e) for w in U.blocks]
    return Bisection(parts, flavor, oracle, action, check=False)


def bisection_equal(a: Bisection, b: Bisection) -> bool:
    """Equality as subsets of the groupoid."""
    sa = source(a)
    if sa != source(b):
        return False
    c = compose(invert(b), a)
    return all(is_unit_part(p, c) for p in c.parts) and source(c) == sa


# ---------------------------------------------------------------------------
# Translation to and from tables


def J_map(t: GTable, choice: str = "k=e") -> Bisection:
    """Full bisection of a G-table.

    Each slot ``w -> w'`` with label ``g`` becomes a part labelled ``k^-1 h``
    for a factorisation with ``k^-1 h = g``: either ``k = e, h = g`` or
    ``k = g^-1, h = e``.
    """
    oracle = t.oracle
    e = oracle.identity
    parts = []
    for w, v, g in t.slots:
        if choice == "k=e":
            k, h = e, g
        elif choice == "h=e":
            k, h = oracle.inv(g), e
        else:
            raise ValueError(f"unknown choice {choice!r}")
        parts.append(Part(v, w, oracle.mul(oracle.inv(k), h)))
    flavor = V2 if oracle.is_trivial else V2G
    return Bisection(parts, flavor, oracle, check=False)


def I_map(b: Bisection) -> GTable:
    if b.twisted:
        raise ValueError("use I_map_twisted for twisted bisections")
    if not is_full(b):
        raise NotFull("bisection is not full")
    return GTable([(p.w, p.wp, p.g) for p in b.parts], b.oracle)


def J_map_twisted(t: TwistTable) -> Bisection:
    action = t.action
    parts = [TwistedPart(psi, twist_brick(g, phi, action), g) for phi, g, psi in t.pieces]
    return Bisection(parts, TWISTED, action=action, check=False)


def I_map_twisted(b: Bisection) -> TwistTable:
    if not b.twisted:
        raise ValueError("I_map_twisted needs a twisted bisection")
    if not is_full(b):
        raise NotFull("bisection is not full")
    action = b.action
    pieces = [(twist_brick(action.oracle.inv(p.g), p.w, action), p.g, p.wp) for p in b.parts]
    return TwistTable(pieces, action)


# ---------------------------------------------------------------------------
# Witnesses for pure infiniteness and minimality


def min_witness(U: ClopenSet, V: ClopenSet, flavor: str, oracle=None,
                action: Optional[SAction] = None) -> Bisection:
    """A bisection with source exactly ``U`` and range inside ``V``."""
    if V.is_empty():
        raise EmptyTarget("target set is empty")
    twisted = flavor == TWISTED
    if twisted:
        oracle = action.oracle
        coord = _split_coordinate(U, V, action)
    oracle = oracle or trivial_group()
    blocks = list(V.blocks)
    while len(blocks) < len(U.blocks):
        # halve the coarsest block, keeping the list in order
        i = min(range(len(blocks)), key=lambda j: (_depth(blocks[j]), j))
        b = blocks[i]
        halves = split_brick(b, coord, action) if twisted else (b + "0", b + "1")
        blocks[i: i + 1] = halves
    e = oracle.identity
    cls = TwistedPart if twisted else Part
    parts = [cls(v, u, e) for u, v in zip(U.blocks, blocks)]
    sigma = Bisection(parts, flavor, oracle, action)
    if source(sigma) != U or not range_(sigma).issubset(V):
        raise ContainmentError("witness construction failed its postcondition")
    return sigma


def _depth(block) -> int:
    return len(block) if isinstance(block, str) else block.depth()


def _split_coordinate(U: ClopenSet, V: ClopenSet, action: SAction):
    coords = set()
    for b in U.blocks + V.blocks:
        coords.update(b.d)
    if not coords:
        return action.base
    return min(coords, key=action.s_key)


# ---------------------------------------------------------------------------
# Isotropy


def isotropy_points(part: Part, bound: int) -> list[CantorPoint]:
    """Points ``x`` with ``(x, n, x)`` in the part and preperiod at most ``bound``.

    If ``w = w'u`` then ``w'z = wz`` forces ``z = u^infinity``, so there is
    at most one such point; the symmetric case is the same.
    """
    wp, w = part.wp, part.w
    if wp == w:
        raise ShiftZeroIdentity("unit part: every point of the cylinder is fixed")
    if w.startswith(wp):
        short, u = wp, w[len(wp):]
    elif wp.startswith(w):
        short, u = w, wp[len(w):]
    else:
        return []
    x = CantorPoint(short, u)
    return [x] if len(x.pre) <= bound else []


def part_act(part: Part, x: CantorPoint) -> Optional[CantorPoint]:
    """Move a point of the source through a part; ``None`` off the source."""
    y = x.strip_prefix(part.w)
    return None if y is None else y.prepend(part.wp)


def clopen_of_words(words: Iterable[str]) -> ClopenSet:
    return ClopenSet(words, "words")


def clopen_of_bricks(bricks: Iterable[Brick], action: SAction) -> ClopenSet:
    return ClopenSet(bricks, "bricks", action)
