"""Elements of the labelled Thompson group V(G) as G-tables.

A table is a list of slots ``(w, w', g)``: the cylinder ``w`` is sent to the
cylinder ``w'`` by prefix replacement and carries the label ``g``.  The
domain words form a partition set, and so do the image words.  Thompson's
group V is the case of the trivial group.

Tables are kept G-reduced.  Two sibling slots ``(u0, v0, g)`` and
``(u1, v1, g)`` merge into ``(u, v, g)``; distinct sibling pairs never share
a slot, so the rewriting is confluent and the reduced table is a canonical
form for the element.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Optional

from .cantor import CantorPoint, PartitionSet, format_word, validate_words
from .errors import SizeMismatch
from .groups import GroupOracle, trivial_group

Slot = tuple  # (domain word, image word, label)


def _reduce_slots(slots: Iterable[Slot]) -> tuple[Slot, ...]:
    table = {w: (v, g) for w, v, g in slots}
    stack = [w for w in table if w and w[-1] == "0"]
    while stack:
        w0 = stack.pop()
        if w0 not in table:
            continue
        w1 = w0[:-1] + "1"
        if w1 not in table:
            continue
        v0, g0 = table[w0]
        v1, g1 = table[w1]
        if g0 != g1 or not v0 or v0[-1] != "0" or v1 != v0[:-1] + "1":
            continue
        del table[w0], table[w1]
        u, v = w0[:-1], v0[:-1]
        table[u] = (v, g0)
        if u and u[-1] == "1":
            u = u[:-1] + "0"
        if u:
            stack.append(u)
    return tuple(sorted((w, v, g) for w, (v, g) in table.items()))


class GTable:
    """An element of V(G).

    ``slots`` is a tuple of ``(domain word, image word, label)`` sorted by
    domain word.  Build tables with ``gtable_new`` or the constructor; pass
    ``reduce=False`` to keep a raw (expanded) representative.
    """

    __slots__ = ("slots", "oracle", "reduced", "_key")

    def __init__(self, slots: Iterable[Slot], oracle: GroupOracle,
                 reduce: bool = True, validate: bool = True):
        slots = tuple(slots)
        if validate:
            validate_words(w for w, _, _ in slots)
            validate_words(v for _, v, _ in slots)
        self.oracle = oracle
        if reduce:
            self.slots = _reduce_slots(slots)
        else:
            self.slots = tuple(sorted(slots))
        self.reduced = reduce
        self._key = None

    @classmethod
    def _make(cls, slots, oracle, reduce=True):
        return cls(slots, oracle, reduce=reduce, validate=False)

    # -- views -------------------------------------------------------------

    def __len__(self):
        return len(self.slots)

    @property
    def domain(self) -> PartitionSet:
        return PartitionSet._trusted(tuple(w for w, _, _ in self.slots))

    @property
    def image(self) -> PartitionSet:
        return PartitionSet._trusted(tuple(sorted(v for _, v, _ in self.slots)))

    @property
    def perm(self) -> tuple[int, ...]:
        """1-based: domain slot ``i`` goes to image slot ``perm[i-1]``."""
        order = {v: j for j, v in enumerate(sorted(v for _, v, _ in self.slots), 1)}
        return tuple(order[v] for _, v, _ in self.slots)

    @property
    def labels(self) -> tuple:
        return tuple(g for _, _, g in self.slots)

    def canonical(self) -> "GTable":
        if self.reduced:
            return self
        return GTable._make(self.slots, self.oracle)

    def key(self):
        if self._key is None:
            self._key = self.canonical().slots
        return self._key

    def __eq__(self, other):
        if not isinstance(other, GTable):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        k = self.key()
        return len(k) == 1 and self.oracle.is_identity(k[0][2])

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, k: int):
        return power(self, k)

    def __str__(self):
        fmt = self.oracle.format
        parts = []
        for w, v, g in self.slots:
            s = f"{format_word(w)} -> {format_word(v)}"
            if not self.oracle.is_identity(g):
                s += f" : {fmt(g)}"
            parts.append(s)
        return "V{ " + ", ".join(parts) + " }"

    def __repr__(self):
        return f"GTable({self})"

    def to_json(self) -> dict:
        return {
            "domain": [w for w, _, _ in self.slots],
            "image": list(self.image.words),
            "perm": list(self.perm),
            "labels": [self.oracle.format(g) for g in self.labels],
        }

    @classmethod
    def from_json(cls, data: dict, oracle: GroupOracle) -> "GTable":
        domain, image, perm = data["domain"], data["image"], data["perm"]
        labels = [oracle.parse(x) for x in data["labels"]]
        if not len(domain) == len(image) == len(perm) == len(labels):
            raise SizeMismatch("domain, image, perm and labels differ in length")
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise SizeMismatch("perm is not a permutation")
        image_sorted = sorted(image)
        slots = [(w, image_sorted[p - 1], g) for w, p, g in zip(domain, perm, labels)]
        return cls(slots, oracle)


def gtable_new(pairs: Iterable[tuple], oracle: GroupOracle) -> GTable:
    """Table from ``(domain word, image word, label)`` triples; a missing
    label means the identity."""
    slots = []
    for p in pairs:
        if len(p) == 2:
            slots.append((p[0], p[1], oracle.identity))
        elif len(p) == 3:
            slots.append(tuple(p))
        else:
            raise SizeMismatch(f"slot {p!r} must have 2 or 3 entries")
    return GTable(slots, oracle)


def identity(oracle: GroupOracle) -> GTable:
    return GTable._make((("", "", oracle.identity),), oracle)


def reduce(t: GTable) -> GTable:
    return t.canonical()


def g_expand_at(t: GTable, i: int) -> GTable:
    """Split the ``i``-th domain slot (1-based); the result is left unreduced."""
    if not 1 <= i <= len(t.slots):
        raise IndexError(f"position {i} out of range 1..{len(t.slots)}")
    w, v, g = t.slots[i - 1]
    slots = t.slots[: i - 1] + ((w + "0", v + "0", g), (w + "1", v + "1", g)) + t.slots[i:]
    return GTable._make(slots, t.oracle, reduce=False)


def eq(a: GTable, b: GTable) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# Group operations


def mul(a: GTable, b: GTable) -> GTable:
    """The product ``ab``: apply ``b`` first, then ``a``."""
    oracle = a.oracle
    amap = {w: (v, g) for w, v, g in a.slots}
    adom = [w for w, _, _ in a.slots]
    out = []
    for w, v, h in b.slots:
        hit = None
        for k in range(len(v), -1, -1):
            hit = amap.get(v[:k])
            if hit is not None:
                break
        if hit is not None:
            va, g = hit
            out.append((w, va + v[k:], oracle.mul(g, h)))
            continue
        # v is a proper prefix of some domain words of a
        j = bisect_left(adom, v)
        while j < len(adom) and adom[j].startswith(v):
            u = adom[j]
            va, g = amap[u]
            out.append((w + u[len(v):], va, oracle.mul(g, h)))
            j += 1
    return GTable._make(out, oracle)


def inv(a: GTable) -> GTable:
    oracle = a.oracle
    return GTable._make([(v, w, oracle.inv(g)) for w, v, g in a.slots], oracle)


def power(a: GTable, k: int) -> GTable:
    if k < 0:
        a, k = inv(a), -k
    result = identity(a.oracle)
    while k:
        if k & 1:
            result = mul(result, a)
        k >>= 1
        if k:
            a = mul(a, a)
    return result


def conj(a: GTable, t: GTable) -> GTable:
    """``a t a^-1``."""
    return mul(mul(a, t), inv(a))


def commutes(a: GTable, b: GTable) -> bool:
    return mul(a, b) == mul(b, a)


def act(a: GTable, x: CantorPoint) -> tuple[CantorPoint, object]:
    """Move ``x`` by the underlying homeomorphism; also return the label used."""
    longest = max(len(w) for w, _, _ in a.slots)
    bits = x.bits(longest)
    for w, v, g in a.slots:
        if bits.startswith(w):
            return x.drop(len(w)).prepend(v), g
    raise AssertionError("domain does not cover the point")


def act_point(a: GTable, x: CantorPoint) -> CantorPoint:
    return act(a, x)[0]


def order(a: GTable, max_order: int) -> Optional[int]:
    """Least ``k <= max_order`` with ``a^k = 1``; ``None`` if there is none."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    p = a.canonical()
    for k in range(1, max_order + 1):
        if p.is_identity():
            return k
        p = mul(p, a)
    return None


# ---------------------------------------------------------------------------
# Embeddings and the forgetful map


def iota0(g, oracle: GroupOracle) -> GTable:
    e = oracle.identity
    return GTable._make((("0", "0", g), ("1", "1", e)), oracle)


def iota_empty(g, oracle: GroupOracle) -> GTable:
    return GTable._make((("", "", g),), oracle)


def map_labels(t: GTable, f: Callable, oracle: GroupOracle) -> GTable:
    """Apply a homomorphism ``f`` of label groups slot by slot."""
    return GTable._make([(w, v, f(g)) for w, v, g in t.slots], oracle)


_TRIVIAL = trivial_group()


def pi_forget(t: GTable, target: Optional[GroupOracle] = None) -> GTable:
    target = target or _TRIVIAL
    e = target.identity
    return GTable._make([(w, v, e) for w, v, _ in t.slots], target)


def in_kernel_of_pi(t: GTable) -> bool:
    """Whether every slot maps its cylinder to itself."""
    return all(w == v for w, v, _ in t.slots)


def torsion_generator(n: int, oracle: GroupOracle) -> GTable:
    """The cyclic shift of the blocks ``0, 10, ..., 1^(n-2)0, 1^(n-1)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    blocks = ["1" * i + "0" for i in range(n - 1)] + ["1" * (n - 1)]
    e = oracle.identity
    return GTable._make([(blocks[i], blocks[(i + 1) % n], e) for i in range(n)], oracle)


# ---------------------------------------------------------------------------
# Centre test

P2 = ("00", "01", "10", "11")


def p2_transpositions(oracle: GroupOracle) -> list[GTable]:
    e = oracle.identity
    out = []
    for i in range(4):
        for j in range(i + 1, 4):
            img = list(P2)
            img[i], img[j] = img[j], img[i]
            out.append(GTable._make([(w, v, e) for w, v in zip(P2, img)], oracle))
    return out


def probe_set(oracle: GroupOracle) -> list[GTable]:
    return p2_transpositions(oracle) + [iota0(g, oracle) for g in oracle.generators]


@dataclass(frozen=True)
class CenterResult:
    kind: str  # "central", "not_central" or "unknown"
    z: object = None
    witness: Optional[GTable] = None

    @property
    def central(self) -> bool:
        return self.kind == "central"


def _extended_probes(oracle: GroupOracle) -> Iterable[GTable]:
    # all identity-labelled permutations of P2 and P3 bricks
    e = oracle.identity
    for depth in (2, 3):
        words = [format(i, f"0{depth}b") for i in range(1 << depth)]
        for img in permutations(words):
            yield GTable._make([(w, v, e) for w, v in zip(words, img)], oracle)


def center_test(a: GTable) -> CenterResult:
    t = a.canonical()
    oracle = t.oracle
    if len(t.slots) == 1:
        z = t.slots[0][2]
        verdict = oracle.is_central(z)
        if verdict is None:
            return CenterResult("unknown", z)
        if verdict:
            return CenterResult("central", z)
    for p in probe_set(oracle):
        if not commutes(t, p):
            return CenterResult("not_central", witness=p)
    for p in _extended_probes(oracle):
        if not commutes(t, p):
            return CenterResult("not_central", witness=p)
    # commutes with every probe but is not a single central slot
    return CenterResult("unknown")


def commutes_with_probes(a: GTable) -> bool:
    return all(commutes(a, p) for p in probe_set(a.oracle))
