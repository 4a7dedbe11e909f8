"""Elements of the twisted Brin-Thompson group SV_G.

The Cantor cube is the product of copies of the Cantor space indexed by a
set S with a faithful G-action.  A dyadic brick is given by a finitely
supported map ``S -> words``; an element is a list of pieces
``(domain brick, twist, image brick)`` where each piece acts by
``h_image . tau_twist . h_domain^-1``.

Canonical form
--------------
Call a brick B *simple* for an element f when f restricted to B is a single
piece.  For a brick B, consider the level vectors L (extra bits per
coordinate) such that every cell of the uniform grid of B at level L is
simple.  That family is closed under pointwise minimum and under raising
levels, so it has a least member L*_B, and L*_B(t) = 0 exactly when the grid
with coordinate t left uncut is still made of simple cells.  The canonical
form starts from the whole cube and, while a brick is not simple, cuts it in
half along a coordinate t with L*_B(t) > 0: the one whose "bad region" (points
lying in no simple brick that leaves t uncut) has the largest measure, ties
going to the smallest coordinate.  Everything here depends only on f, so two
tables denote the same element iff their canonical pieces agree.  With one
coordinate and trivial twists this is exactly the G-reduced table of V.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .cantor import CantorPoint, dyadic_sum
from .errors import ActionMismatch, ContainmentError, GapError, OverlapError
from .groups import SAction

ZERO = CantorPoint("", "0")


class Brick:
    """A finitely supported map ``S -> words``; absent coordinates mean the empty word."""

    __slots__ = ("d", "_key", "_items")

    def __init__(self, mapping=(), action: Optional[SAction] = None):
        self.d = {s: w for s, w in dict(mapping).items() if w}
        self._key = action.s_key if action is not None else _default_key
        self._items = None

    @classmethod
    def _raw(cls, d: dict, key) -> "Brick":
        # d must already be free of empty words
        obj = object.__new__(cls)
        obj.d = d
        obj._key = key
        obj._items = None
        return obj

    @property
    def items(self) -> tuple:
        """Support entries sorted by coordinate."""
        if self._items is None:
            key = self._key
            self._items = tuple(sorted(self.d.items(), key=lambda kv: key(kv[0])))
        return self._items

    def get(self, s) -> str:
        return self.d.get(s, "")

    def support(self):
        return self.d.keys()

    def depth(self) -> int:
        return sum(len(w) for w in self.d.values())

    def measure(self) -> Fraction:
        return Fraction(1, 1 << self.depth())

    def sort_key(self, action: SAction):
        return tuple((action.s_key(s), w) for s, w in self.items)

    def __eq__(self, other):
        if not isinstance(other, Brick):
            return NotImplemented
        return self.d == other.d

    def __hash__(self):
        return hash(frozenset(self.d.items()))

    def __bool__(self):
        return True

    def format(self, action: SAction) -> str:
        return "{" + ", ".join(f"{action.format_s(s)}:{w}" for s, w in self.items) + "}"

    def __repr__(self):
        return "Brick{" + ", ".join(f"{s}:{w}" for s, w in self.items) + "}"


def _default_key(s):
    return (type(s).__name__, s)


FULL = Brick()


def brick_contains(psi: Brick, kappa: "CubePoint") -> bool:
    return all(kappa.get(s).startswith(w) for s, w in psi.d.items())


def brick_intersect(phi: Brick, psi: Brick, action: Optional[SAction] = None) -> Optional[Brick]:
    """Intersection of two bricks, or ``None`` when they are disjoint."""
    d = dict(phi.d)
    for s, w in psi.d.items():
        u = d.get(s)
        if u is None or w.startswith(u):
            d[s] = w
        elif not u.startswith(w):
            return None
    return Brick(d, action)


def bricks_disjoint(phi: Brick, psi: Brick) -> bool:
    small, big = (phi, psi) if len(phi.d) <= len(psi.d) else (psi, phi)
    for s, w in small.d.items():
        u = big.d.get(s)
        if u is not None and not (u.startswith(w) or w.startswith(u)):
            return True
    return False


def brick_subset(inner: Brick, outer: Brick) -> bool:
    return all(inner.get(s).startswith(w) for s, w in outer.d.items())


def twist_brick(gamma, psi: Brick, action: SAction) -> Brick:
    """The brick ``tau_gamma(B(psi))``: coordinate ``s`` moves to ``gamma s``."""
    return Brick({action.apply(gamma, s): w for s, w in psi.d.items()}, action)


def split_brick(B: Brick, s, action: Optional[SAction] = None) -> tuple[Brick, Brick]:
    w = B.get(s)
    b0 = dict(B.d)
    b0[s] = w + "0"
    b1 = dict(B.d)
    b1[s] = w + "1"
    return Brick(b0, action), Brick(b1, action)


# ---------------------------------------------------------------------------
# Points of the cube


class CubePoint:
    """A point of the Cantor cube: finitely many listed coordinates, and a
    common default value everywhere else."""

    __slots__ = ("support", "default")

    def __init__(self, support=(), default: CantorPoint = ZERO):
        self.default = default
        self.support = {s: x for s, x in dict(support).items() if x != default}

    def get(self, s) -> CantorPoint:
        return self.support.get(s, self.default)

    def __eq__(self, other):
        if not isinstance(other, CubePoint):
            return NotImplemented
        return self.default == other.default and self.support == other.support

    def __hash__(self):
        return hash((self.default, frozenset(self.support.items())))

    def format(self, action: SAction) -> str:
        items = sorted(self.support.items(), key=lambda kv: action.s_key(kv[0]))
        body = ", ".join(f"{action.format_s(s)}:{x}" for s, x in items)
        return "{" + body + "}|" + str(self.default)

    def __repr__(self):
        return f"CubePoint({self.support!r}, {self.default})"


def h_apply(psi: Brick, kappa: CubePoint) -> CubePoint:
    sup = dict(kappa.support)
    for s, w in psi.d.items():
        sup[s] = kappa.get(s).prepend(w)
    return CubePoint(sup, kappa.default)


def h_unapply(psi: Brick, kappa: CubePoint) -> Optional[CubePoint]:
    if not brick_contains(psi, kappa):
        return None
    sup = dict(kappa.support)
    for s, w in psi.d.items():
        sup[s] = kappa.get(s).drop(len(w))
    return CubePoint(sup, kappa.default)


def twist_apply(gamma, kappa: CubePoint, action: SAction) -> CubePoint:
    return CubePoint({action.apply(gamma, s): x for s, x in kappa.support.items()},
                     kappa.default)


# ---------------------------------------------------------------------------
# Pieces


def piece_pullback(piece, sub: Brick, action: SAction) -> Brick:
    """Preimage of a sub-brick of the piece's image."""
    phi, gamma, psi = piece
    if not brick_subset(sub, psi):
        raise ContainmentError("brick is not inside the image of the piece")
    ginv = action.oracle.inv(gamma)
    d = dict(phi.d)
    for s, w in sub.d.items():
        u = w[len(psi.get(s)):]
        if u:
            t = action.apply(ginv, s)
            d[t] = d.get(t, "") + u
    return Brick(d, action)


def piece_push(piece, sub: Brick, action: SAction) -> Brick:
    """Image of a sub-brick of the piece's domain."""
    phi, gamma, psi = piece
    if not brick_subset(sub, phi):
        raise ContainmentError("brick is not inside the domain of the piece")
    d = dict(psi.d)
    for t, w in sub.d.items():
        x = w[len(phi.get(t)):]
        if x:
            s = action.apply(gamma, t)
            d[s] = d.get(s, "") + x
    return Brick(d, action)


def piece_act(piece, kappa: CubePoint, action: SAction) -> CubePoint:
    phi, gamma, psi = piece
    return h_apply(psi, twist_apply(gamma, h_unapply(phi, kappa), action))


# ---------------------------------------------------------------------------
# Canonical form


def _merge(C: Brick, subs, action) -> Optional[Brick]:
    """Image brick K when the fragments ``subs`` tiling C form one piece on C."""
    gamma = subs[0][1]
    if any(p[1] != gamma for p in subs):
        return None
    K = None
    for dom, _, img in subs:
        # extra bits of the fragment's domain, moved to image coordinates
        moved = {}
        for t, w in dom.d.items():
            x = w[len(C.get(t)):]
            if x:
                moved[action.apply(gamma, t)] = x
        if K is None:
            K = {}
            for s in set(img.d) | set(moved):
                full, x = img.get(s), moved.get(s, "")
                if not full.endswith(x):
                    return None
                K[s] = full[: len(full) - len(x)]
            continue
        for s in set(img.d) | set(moved) | set(K):
            if K.get(s, "") + moved.get(s, "") != img.get(s):
                return None
    return Brick(K, action)


def _cut_coordinates(C: Brick, subs) -> set:
    """Coordinates along which some fragment is cut more finely than C."""
    cd = C.d
    out = set()
    for dom, _, _ in subs:
        for t, w in dom.d.items():
            if t not in out and len(w) > len(cd.get(t, "")):
                out.add(t)
    return out


def _halves(C: Brick, subs, s, action):
    """Split C along ``s`` and hand each fragment to the half it meets."""
    key = C._key
    w = C.get(s)
    k = len(w)
    out = []
    for bit in "01":
        d = dict(C.d)
        d[s] = w + bit
        half = Brick._raw(d, key)
        frags = []
        for piece in subs:
            dom, gamma, img = piece
            u = dom.d.get(s, "")
            if len(u) > k:
                if u[k] == bit:
                    frags.append(piece)
                continue
            dd = dict(dom.d)
            dd[s] = u + bit
            t = action.apply(gamma, s)
            di = dict(img.d)
            di[t] = di.get(t, "") + bit
            frags.append((Brick._raw(dd, key), gamma, Brick._raw(di, key)))
        out.append((half, frags))
    return out


def _meet(a: dict, b: dict) -> Optional[dict]:
    out = dict(a)
    for s, w in b.items():
        u = out.get(s, "")
        if w.startswith(u):
            out[s] = w
        elif not u.startswith(w):
            return None
    return out


def _minus(a: dict, x: dict) -> list[dict]:
    """Disjoint bricks covering ``a`` minus its sub-brick ``x``."""
    out = []
    cur = dict(a)
    for s, w in x.items():
        u = cur.get(s, "")
        for k in range(len(u), len(w)):
            side = dict(cur)
            side[s] = w[:k] + ("1" if w[k] == "0" else "0")
            out.append(side)
            cur[s] = w[: k + 1]
    return out


def _union_measure(bricks: list[dict]) -> Fraction:
    disjoint: list[dict] = []
    for b in bricks:
        parts = [b]
        for d in disjoint:
            nxt = []
            for p in parts:
                x = _meet(p, d)
                if x is None:
                    nxt.append(p)
                else:
                    nxt.extend(_minus(p, x))
            parts = nxt
            if not parts:
                break
        disjoint.extend(parts)
    return dyadic_sum(sum(map(len, b.values())) for b in disjoint)


def _push(piece, x: dict, action) -> dict:
    dom, gamma, img = piece
    out = {s: w for s, w in img.items() if w}
    for t, w in x.items():
        extra = w[len(dom.get(t, "")):]
        if extra:
            s = action.apply(gamma, t)
            out[s] = out.get(s, "") + extra
    return out


def _bad_measure(C: Brick, subs, t, action) -> Fraction:
    """Measure of the points of C lying in no simple brick that leaves
    coordinate ``t`` uncut.

    A fragment extends to the brick obtained by forgetting its extra bits at
    ``t`` when its image ends with those bits.  A point is good exactly when
    its whole t-fibre lies where f agrees with some extended fragment, so the
    good set is each extension minus the t-fibres of the places where another
    fragment disagrees with it.
    """
    if len(subs) <= 1 or _merge(C, subs, action) is not None:
        return Fraction(0)
    base = C.get(t)
    frags = [(p[0].d, p[1], p[2].d) for p in subs]
    good = []
    for dom, gamma, img in frags:
        x = dom.get(t, "")[len(base):]
        if x:
            s = action.apply(gamma, t)
            w = img.get(s, "")
            if not w.endswith(x):
                continue
            dom = dict(dom)
            dom[t] = base
            img = dict(img)
            img[s] = w[: len(w) - len(x)]
        ext = (dom, gamma, img)
        region = [dom]
        for other in frags:
            meet = _meet(other[0], dom)
            if meet is None:
                continue
            if other[1] == gamma and _push(other, meet, action) == _push(ext, meet, action):
                continue
            fibre = dict(meet)
            fibre[t] = base
            nxt = []
            for r in region:
                y = _meet(r, fibre)
                nxt.extend([r] if y is None else _minus(r, y))
            region = nxt
            if not region:
                break
        good.extend(region)
    return C.measure() - _union_measure(good)


def _split(B: Brick, subs, action, out: list) -> None:
    K = _merge(B, subs, action)
    if K is not None:
        out.append((B, subs[0][1], K))
        return
    # cut where the element most needs it; the choice depends only on f|B
    best, cut = Fraction(0), None
    for t in sorted(_cut_coordinates(B, subs), key=action.s_key):
        bad = _bad_measure(B, subs, t, action)
        if bad > best:
            best, cut = bad, t
    assert cut is not None, "non-simple brick with no essential coordinate"
    for half, frags in _halves(B, subs, cut, action):
        _split(half, frags, action, out)


def canonical_pieces(pieces, action: SAction) -> tuple:
    out: list = []
    _split(Brick((), action), list(pieces), action, out)
    out.sort(key=lambda p: p[0].sort_key(action))
    return tuple(out)


# ---------------------------------------------------------------------------
# Tables


def check_brick_partition(bricks: list[Brick]) -> None:
    for i, a in enumerate(bricks):
        for b in bricks[i + 1:]:
            if not bricks_disjoint(a, b):
                raise OverlapError(f"bricks {a!r} and {b!r} intersect")
    total = dyadic_sum(b.depth() for b in bricks)
    if total != 1:
        raise GapError(f"bricks have total measure {total}, not 1")


class TwistTable:
    """An element of SV_G, stored in canonical form."""

    __slots__ = ("pieces", "action", "_key")

    def __init__(self, pieces: Iterable, action: SAction, validate: bool = True,
                 canonical: bool = False):
        pieces = [(Brick(d.d, action) if isinstance(d, Brick) else Brick(d, action), g,
                   Brick(i.d, action) if isinstance(i, Brick) else Brick(i, action))
                  for d, g, i in pieces]
        if validate:
            check_brick_partition([p[0] for p in pieces])
            check_brick_partition([p[2] for p in pieces])
        self.action = action
        self.pieces = tuple(pieces) if canonical else canonical_pieces(pieces, action)
        self._key = None

    @classmethod
    def _make(cls, pieces, action):
        return cls(pieces, action, validate=False)

    def key(self):
        if self._key is None:
            self._key = tuple((p[0].items, p[1], p[2].items) for p in self.pieces)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, TwistTable):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return len(self.pieces)

    def __mul__(self, other):
        return tt_mul(self, other)

    def is_identity(self) -> bool:
        return (len(self.pieces) == 1 and not self.pieces[0][0].d
                and self.action.oracle.is_identity(self.pieces[0][1]))

    def coordinates(self) -> set:
        out = set()
        for d, _, i in self.pieces:
            out.update(d.d)
            out.update(i.d)
        return out

    def __str__(self):
        a = self.action
        parts = []
        for d, g, i in self.pieces:
            arrow = "->" if a.oracle.is_identity(g) else f"-[{a.oracle.format(g)}]->"
            parts.append(f"{d.format(a)} {arrow} {i.format(a)}")
        return "SV{ " + ", ".join(parts) + " }"

    def __repr__(self):
        return f"TwistTable({self})"

    def to_json(self) -> dict:
        a = self.action
        return {
            "action": a.name,
            "pieces": [
                {"domain": {a.format_s(s): w for s, w in d.items},
                 "twist": a.oracle.format(g),
                 "image": {a.format_s(s): w for s, w in i.items}}
                for d, g, i in self.pieces
            ],
        }


def tt_new(pieces: Iterable, action: SAction) -> TwistTable:
    return TwistTable(pieces, action)


def tt_identity(action: SAction) -> TwistTable:
    return TwistTable([(FULL, action.oracle.identity, FULL)], action,
                      validate=False, canonical=True)


def tau(gamma, action: SAction) -> TwistTable:
    """The global twist ``tau_gamma`` as a table."""
    return TwistTable([(FULL, gamma, FULL)], action, validate=False, canonical=True)


def _same_action(a: TwistTable, b: TwistTable) -> SAction:
    if a.action is not b.action and a.action.name != b.action.name:
        raise ActionMismatch(f"{a.action.name} vs {b.action.name}")
    return a.action


def tt_mul(a: TwistTable, b: TwistTable) -> TwistTable:
    """Composite: apply ``b`` first, then ``a``."""
    action = _same_action(a, b)
    mul = action.oracle.mul
    out = []
    for pb in b.pieces:
        for pa in a.pieces:
            X = brick_intersect(pb[2], pa[0], action)
            if X is None:
                continue
            pre = piece_pullback(pb, X, action)
            post = piece_push(pa, X, action)
            out.append((pre, mul(pa[1], pb[1]), post))
    return TwistTable._make(out, action)


def tt_inv(a: TwistTable) -> TwistTable:
    inv = a.action.oracle.inv
    return TwistTable._make([(i, inv(g), d) for d, g, i in a.pieces], a.action)


def tt_pow(a: TwistTable, k: int) -> TwistTable:
    if k < 0:
        a, k = tt_inv(a), -k
    result = tt_identity(a.action)
    while k:
        if k & 1:
            result = tt_mul(result, a)
        k >>= 1
        if k:
            a = tt_mul(a, a)
    return result


def tt_eq(a: TwistTable, b: TwistTable) -> bool:
    _same_action(a, b)
    return a == b


def tt_act(t: TwistTable, kappa: CubePoint) -> CubePoint:
    for piece in t.pieces:
        if brick_contains(piece[0], kappa):
            return piece_act(piece, kappa, t.action)
    raise AssertionError("domain bricks do not cover the point")


def raw_expand(pieces, i: int, s, action: SAction) -> list:
    """Split the ``i``-th piece (1-based) along coordinate ``s`` of its domain."""
    piece = pieces[i - 1]
    halves = split_brick(piece[0], s, action)
    new = [(h, piece[1], piece_push(piece, h, action)) for h in halves]
    return list(pieces[: i - 1]) + new + list(pieces[i:])


# ---------------------------------------------------------------------------
# Links to V


def embed_v_coordinate(t, s, action: SAction) -> TwistTable:
    """The copy of a trivially labelled V element acting on coordinate ``s``."""
    e = action.oracle.identity
    return TwistTable([(Brick({s: w}, action), e, Brick({s: v}, action))
                       for w, v, _ in t.slots], action, validate=False)


def twist_to_gtable(t: TwistTable, s, oracle):
    """Inverse of ``embed_v_coordinate`` for tables living on coordinate ``s``."""
    from .vtables import GTable
    slots = []
    for d, g, i in t.pieces:
        if set(d.d) - {s} or set(i.d) - {s} or not t.action.oracle.is_identity(g):
            raise ValueError("table is not supported on a single coordinate")
        slots.append((d.get(s), i.get(s), oracle.identity))
    return GTable(slots, oracle)


def corner_points(tables: Iterable[TwistTable], extra_coords: Iterable = (),
                  tails: Iterable[CantorPoint] = ()) -> list[CubePoint]:
    """Sample points: corners of every domain brick, perturbed one coordinate
    at a time (and all at once) by the given tails."""
    tables = list(tables)
    action = tables[0].action
    coords = set(extra_coords)
    bricks = []
    for t in tables:
        coords |= t.coordinates()
        bricks.extend(p[0] for p in t.pieces)
    coords = sorted(coords, key=action.s_key)
    tails = list(tails) or [ZERO]
    seen = set()
    out = []

    def add(k):
        if k not in seen:
            seen.add(k)
            out.append(k)

    for B in bricks:
        base = {t: ZERO.prepend(B.get(t)) for t in coords}
        for x in tails:
            add(CubePoint({t: x.prepend(B.get(t)) for t in coords}))
            for t in coords:
                sup = dict(base)
                sup[t] = x.prepend(B.get(t))
                add(CubePoint(sup))
    return out


def format_piece(piece, action: SAction) -> str:
    d, g, i = piece
    return f"{d.format(action)} -[{action.oracle.format(g)}]-> {i.format(action)}"


__all__ = [
    "Brick", "CubePoint", "TwistTable", "FULL", "brick_contains", "brick_intersect",
    "bricks_disjoint", "brick_subset", "twist_brick", "split_brick", "h_apply",
    "h_unapply", "twist_apply", "piece_pullback", "piece_push", "piece_act",
    "canonical_pieces", "check_brick_partition", "tt_new", "tt_identity", "tau",
    "tt_mul", "tt_inv", "tt_pow", "tt_eq", "tt_act", "raw_expand",
    "embed_v_coordinate", "twist_to_gtable", "corner_points",
]
