"""Finite binary words, eventually periodic points of the Cantor space and
partition sets (complete prefix codes).

Words are plain ``str`` objects over ``"01"``; the empty word is ``""`` and
is written ``e`` in text.  Everything here is exact: measures are dyadic
``Fraction`` values, never floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional

from .errors import AlphabetError, GapError, OverlapError, WordTooLong

MAX_WORD_LENGTH = 2 ** 16

_WORD_RE = re.compile(r"[01]*\Z")
_POINT_RE = re.compile(r"\s*([01]*)\s*\(\s*([01]+)\s*\)\s*\Z")


def check_word(w: str) -> str:
    if not isinstance(w, str) or not _WORD_RE.match(w):
        raise AlphabetError(f"not a binary word: {w!r}")
    if len(w) > MAX_WORD_LENGTH:
        raise WordTooLong(f"word of length {len(w)} exceeds {MAX_WORD_LENGTH}")
    return w


def parse_word(text: str) -> str:
    text = text.strip()
    if text in ("e", "∅"):
        return ""
    return check_word(text)


def format_word(w: str) -> str:
    return w if w else "e"


def lex_cmp(a: str, b: str) -> int:
    """Three-way lexicographic comparison with 0 < 1; a proper prefix sorts first."""
    return (a > b) - (a < b)


def is_prefix(u: str, v: str) -> bool:
    return v.startswith(u)


def comparable(u: str, v: str) -> bool:
    return v.startswith(u) or u.startswith(v)


def word_measure(w: str) -> Fraction:
    return Fraction(1, 1 << len(w))


def dyadic_sum(depths: Iterable[int]) -> Fraction:
    """Exact sum of 2^-d over the given depths, using one common denominator."""
    depths = list(depths)
    if not depths:
        return Fraction(0)
    top = max(depths)
    return Fraction(sum(1 << (top - d) for d in depths), 1 << top)


def primitive_root(w: str) -> str:
    i = (w + w).find(w, 1)
    return w[:i]


# ---------------------------------------------------------------------------
# Cantor points


def normalize_point(pre: str, per: str) -> tuple[str, str]:
    per = primitive_root(per)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1] + per[:-1]
    return pre, per


class CantorPoint:
    """The infinite word ``pre · per · per · ...``, kept normalized.

    Normalized means the period is primitive and the preperiod cannot be
    shortened, so two points are equal iff their fields are equal.
    """

    __slots__ = ("pre", "per")

    def __init__(self, pre: str = "", per: str = "0"):
        check_word(pre)
        check_word(per)
        if not per:
            raise AlphabetError("period must be non-empty")
        self.pre, self.per = normalize_point(pre, per)

    @classmethod
    def _raw(cls, pre: str, per: str) -> "CantorPoint":
        # caller guarantees (pre, per) is already normalized
        obj = object.__new__(cls)
        obj.pre = pre
        obj.per = per
        return obj

    @classmethod
    def parse(cls, text: str) -> "CantorPoint":
        m = _POINT_RE.match(text)
        if not m:
            from .errors import ParseError
            raise ParseError(f"bad Cantor point {text!r}")
        return cls(m.group(1), m.group(2))

    def __str__(self) -> str:
        return f"{self.pre}({self.per})"

    def __repr__(self) -> str:
        return f"CantorPoint({self})"

    def __eq__(self, other):
        if not isinstance(other, CantorPoint):
            return NotImplemented
        return self.pre == other.pre and self.per == other.per

    def __hash__(self):
        return hash((self.pre, self.per))

    def bits(self, n: int) -> str:
        if n <= len(self.pre):
            return self.pre[:n]
        k = n - len(self.pre)
        reps = -(-k // len(self.per))
        return self.pre + (self.per * reps)[:k]

    def startswith(self, w: str) -> bool:
        return self.bits(len(w)) == w

    def strip_prefix(self, w: str) -> Optional["CantorPoint"]:
        if not self.startswith(w):
            return None
        return self.drop(len(w))

    def drop(self, k: int) -> "CantorPoint":
        """Apply the shift ``k`` times."""
        if k <= len(self.pre):
            return CantorPoint._raw(self.pre[k:], self.per)
        r = (k - len(self.pre)) % len(self.per)
        return CantorPoint._raw("", self.per[r:] + self.per[:r])

    def shift(self) -> "CantorPoint":
        return self.drop(1)

    def prepend(self, w: str) -> "CantorPoint":
        if not w:
            return self
        return CantorPoint(w + self.pre, self.per)

    def order_key(self, length: int) -> tuple[str, str]:
        """Key grouping points by periodic tail, then by value (prefix of ``length`` bits)."""
        tail = CantorPoint._raw("", self.per)
        return tail.bits(length), self.bits(length)


def shift(x: CantorPoint) -> CantorPoint:
    return x.shift()


def strip_prefix(w: str, x: CantorPoint) -> Optional[CantorPoint]:
    return x.strip_prefix(w)


def prepend(w: str, x: CantorPoint) -> CantorPoint:
    return x.prepend(w)


def enumerate_points(max_preperiod: int, max_period: int) -> list[CantorPoint]:
    """All normalized points with short preperiod and period, in a fixed order.

    Points are grouped by their periodic tail (compared as infinite words)
    and ordered by value inside a group.
    """
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    points = []
    for p in range(1, max_period + 1):
        for bits in product("01", repeat=p):
            per = "".join(bits)
            if primitive_root(per) != per:
                continue
            for k in range(max_preperiod + 1):
                for pbits in product("01", repeat=k):
                    pre = "".join(pbits)
                    if pre and pre[-1] == per[-1]:
                        continue
                    points.append(CantorPoint._raw(pre, per))
    # distinct eventually periodic words differ within pre + 2*period bits
    n = max_preperiod + 2 * max_period + 1
    points.sort(key=lambda x: x.order_key(n))
    return points


# ---------------------------------------------------------------------------
# Partition sets


class PartitionSet:
    """A sorted complete prefix code; its cylinders tile the Cantor space."""

    __slots__ = ("words",)

    def __init__(self, words: Iterable[str]):
        self.words = validate_words(words)

    @classmethod
    def _trusted(cls, words: tuple[str, ...]) -> "PartitionSet":
        obj = object.__new__(cls)
        obj.words = words
        return obj

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __getitem__(self, i):
        return self.words[i]

    def __contains__(self, w):
        return w in self.words

    def __eq__(self, other):
        if isinstance(other, PartitionSet):
            return self.words == other.words
        return NotImplemented

    def __hash__(self):
        return hash(self.words)

    def __str__(self):
        return "{" + ",".join(format_word(w) for w in self.words) + "}"

    def __repr__(self):
        return f"PartitionSet({self})"

    @classmethod
    def parse(cls, text: str) -> "PartitionSet":
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            from .errors import ParseError
            raise ParseError(f"partition set must be braced: {text!r}")
        body = text[1:-1].strip()
        words = [parse_word(t) for t in body.split(",")] if body else []
        return cls(words)

    def find(self, x: CantorPoint) -> int:
        """Index of the block containing ``x``."""
        longest = max(len(w) for w in self.words)
        b = x.bits(longest)
        for i, w in enumerate(self.words):
            if b.startswith(w):
                return i
        raise AssertionError("partition set does not cover the point")


def validate_words(words: Iterable[str]) -> tuple[str, ...]:
    ws = [check_word(w) for w in words]
    ws.sort()
    # in sorted order a prefix is immediately followed by its extensions
    for u, v in zip(ws, ws[1:]):
        if v.startswith(u):
            raise OverlapError(f"{format_word(u)} is a prefix of {format_word(v)}")
    total = dyadic_sum(len(w) for w in ws)
    if total != 1:
        raise GapError(f"blocks have total measure {total}, not 1")
    return tuple(ws)


def validate_partition(words: Iterable[str]) -> PartitionSet:
    return PartitionSet(words)


def expand(P: PartitionSet, i: int) -> PartitionSet:
    """Replace the ``i``-th word (1-based) by its two children."""
    if not 1 <= i <= len(P):
        raise IndexError(f"position {i} out of range 1..{len(P)}")
    u = P.words[i - 1]
    ws = P.words[: i - 1] + (u + "0", u + "1") + P.words[i:]
    return PartitionSet._trusted(ws)


def refine_words(P: Iterable[str], Q: Iterable[str]) -> list[str]:
    out = []
    Q = list(Q)
    for u in P:
        for v in Q:
            if v.startswith(u):
                out.append(v)
            elif u.startswith(v):
                out.append(u)
    out.sort()
    return out


def common_refinement(P: PartitionSet, Q: PartitionSet) -> PartitionSet:
    return PartitionSet._trusted(tuple(refine_words(P.words, Q.words)))


def standard_partition(n: int) -> PartitionSet:
    """All words of length exactly ``n``."""
    return PartitionSet._trusted(tuple("".join(b) for b in product("01", repeat=n)))
