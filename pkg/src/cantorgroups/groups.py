"""Label groups as pluggable oracles, and faithful actions of them on a set S.

Every oracle keeps its elements in a canonical form, so equality of group
elements is plain ``==`` and elements can be hashed and sorted (through
``sort_key``).  The shipped instances are finite groups given by a Cayley
table, free groups and the free abelian groups ``Z^n``.
"""

from __future__ import annotations

import itertools
import os
import random
import re
from pathlib import Path
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from .errors import NotAGroupError, ParseError

GroupElem = Hashable
SElem = Hashable


class GroupOracle:
    """Interface shared by all label groups."""

    name = "group"
    identity: GroupElem
    generators: tuple = ()

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def is_identity(self, a) -> bool:
        return a == self.identity

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def sort_key(self, a):
        return a

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def is_central(self, g) -> Optional[bool]:
        return None

    @property
    def is_trivial(self) -> bool:
        return False

    def power(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def conj(self, z, g):
        return self.mul(self.mul(z, g), self.inv(z))

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# Finite groups


class FiniteGroup(GroupOracle):
    """A finite group on ``0..n-1`` given by its multiplication table.

    Element 0 is the identity and prints as ``e``.  Other elements print as
    their index unless ``names`` are supplied.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "finite",
                 names: Optional[Sequence[str]] = None, check: bool = True):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name
        if check:
            _check_cayley(self.table)
        self._inv = tuple(row.index(0) for row in self.table)
        self.identity = 0
        if names is None:
            names = ["e"] + [str(i) for i in range(1, self.order)]
        self.names = tuple(names)
        self._by_name = {n: i for i, n in enumerate(self.names)}
        self.generators = tuple(_small_generating_set(self))
        self._center = frozenset(
            g for g in range(self.order)
            if all(self.table[g][h] == self.table[h][g] for h in range(self.order))
        )

    @property
    def elements(self):
        return range(self.order)

    @property
    def is_trivial(self):
        return self.order == 1

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def parse(self, text):
        text = text.strip()
        if text in self._by_name:
            return self._by_name[text]
        if text.isdigit() and int(text) < self.order:
            return int(text)
        raise ParseError(f"unknown element {text!r} of {self.name}")

    def format(self, a):
        return self.names[a]

    def random_element(self, rng):
        return rng.randrange(self.order)

    def center(self) -> frozenset:
        return self._center

    def is_central(self, g):
        return g in self._center


def _check_cayley(table) -> None:
    n = len(table)
    if n == 0:
        raise NotAGroupError("empty table")
    full = set(range(n))
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroupError(f"row {i} has length {len(row)}, expected {n}")
        if set(row) != full:
            raise NotAGroupError(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise NotAGroupError(f"column {j} is not a permutation of 0..{n - 1}")
    for i in range(n):
        if table[0][i] != i or table[i][0] != i:
            raise NotAGroupError(f"element 0 is not the identity (fails at {i})")
    if n <= 64:
        triples: Iterable = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(10 ** 5))
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroupError(f"associativity fails at ({a}, {b}, {c})")


def _small_generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    reached = {0}
    for g in range(1, G.order):
        if g in reached:
            continue
        gens.append(g)
        frontier = list(reached)
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = G.table[x][s]
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
    return gens


def load_cayley_table(source) -> FiniteGroup:
    """Read a Cayley table: first line ``n``, then ``n`` rows of indices."""
    if isinstance(source, (str, os.PathLike)) and Path(source).exists():
        path = Path(source)
        text = path.read_text()
        name = path.stem
    else:
        text = source if isinstance(source, str) else "\n".join(source)
        name = "cayley"
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except (IndexError, ValueError) as exc:
        raise NotAGroupError(f"malformed Cayley table: {exc}") from exc
    if len(rows) != n:
        raise NotAGroupError(f"expected {n} rows, found {len(rows)}")
    return FiniteGroup(rows, name=name)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="trivial")


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)],
                       name=f"Z/{n}")


def symmetric_group_3() -> FiniteGroup:
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    names = ["e" if p == (0, 1, 2) else "".join(str(x + 1) for x in p) for p in perms]
    return FiniteGroup(table, name="S3", names=names)


# ---------------------------------------------------------------------------
# Free groups

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_FREE_TOKEN = re.compile(r"\s*([a-zA-Z])\s*(?:\^\s*(-?\d+))?")


class FreeGroup(GroupOracle):
    """Free group on ``a, b, c, ...``; elements are freely reduced tuples of
    nonzero ints, ``k`` for the ``k``-th letter and ``-k`` for its inverse."""

    def __init__(self, rank: int):
        if not 1 <= rank <= len(_LETTERS):
            raise ValueError(f"rank must be between 1 and {len(_LETTERS)}")
        self.rank = rank
        self.name = f"F{rank}"
        self.identity = ()
        self.generators = tuple((k,) for k in range(1, rank + 1))

    def mul(self, a, b):
        i = 0
        n = min(len(a), len(b))
        while i < n and a[-1 - i] == -b[i]:
            i += 1
        return a[: len(a) - i] + b[i:]

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def sort_key(self, a):
        return (len(a), a)

    def parse(self, text):
        src = text.strip()
        if src in ("e", "1", ""):
            return ()
        word: tuple = ()
        pos = 0
        while pos < len(src):
            m = _FREE_TOKEN.match(src, pos)
            if not m:
                if src[pos:].strip() == "":
                    break
                raise ParseError(f"bad free-group word {text!r}", pos)
            ch, exp = m.group(1), m.group(2)
            k = _LETTERS.find(ch.lower()) + 1
            if k == 0 or k > self.rank:
                raise ParseError(f"letter {ch!r} outside rank {self.rank}", pos)
            e = int(exp) if exp is not None else 1
            if ch.isupper():
                e = -e
            step = (k,) if e > 0 else (-k,)
            for _ in range(abs(e)):
                word = self.mul(word, step)
            pos = m.end()
        return word

    def format(self, a):
        if not a:
            return "e"
        out = []
        for k, run in itertools.groupby(a):
            e = len(list(run)) * (1 if k > 0 else -1)
            letter = _LETTERS[abs(k) - 1]
            out.append(letter if e == 1 else f"{letter}^{e}")
        return "".join(out)

    def random_element(self, rng, max_length: int = 4):
        word: tuple = ()
        for _ in range(rng.randint(0, max_length)):
            k = rng.randint(1, self.rank)
            word = self.mul(word, (k if rng.random() < 0.5 else -k,))
        return word

    def is_central(self, g):
        # rank 1 is abelian (every element is a power of the generator)
        return self.rank == 1 or g == ()


def free_group(rank: int) -> FreeGroup:
    return FreeGroup(rank)


# ---------------------------------------------------------------------------
# Z^n


class ZnGroup(GroupOracle):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.name = "Z" if n == 1 else f"Z^{n}"
        self.identity = (0,) * n
        self.generators = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def parse(self, text):
        src = text.strip()
        if src == "e":
            return self.identity
        body = src[1:-1] if src.startswith("(") and src.endswith(")") else src
        try:
            vals = tuple(int(t) for t in body.split(","))
        except ValueError:
            raise ParseError(f"bad element {text!r} of {self.name}") from None
        if len(vals) != self.n:
            raise ParseError(f"expected {self.n} coordinates in {text!r}")
        return vals

    def format(self, a):
        if self.n == 1:
            return str(a[0])
        return "(" + ",".join(str(x) for x in a) + ")"

    def random_element(self, rng, bound: int = 3):
        return tuple(rng.randint(-bound, bound) for _ in range(self.n))

    def is_central(self, g):
        return True


def zn_group(n: int) -> ZnGroup:
    return ZnGroup(n)


def is_central(oracle: GroupOracle, g) -> Optional[bool]:
    return oracle.is_central(g)


# ---------------------------------------------------------------------------
# Actions on S


class SAction:
    """A faithful action of ``oracle`` on a countable set S."""

    def __init__(self, oracle: GroupOracle, apply: Callable[[Any, Any], Any],
                 parse_s: Callable[[str], Any], format_s: Callable[[Any], str],
                 s_key: Callable[[Any], Any], sample_s: Callable[[random.Random], Any],
                 name: str, base: Any):
        self.oracle = oracle
        self._apply = apply
        self.parse_s = parse_s
        self.format_s = format_s
        self.s_key = s_key
        self.sample_s = sample_s
        self.name = name
        # a fixed element of S, used when some coordinate has to be picked
        self.base = base

    def apply(self, g, s):
        return self._apply(g, s)

    def faithfulness_witness(self, g, candidates: Iterable) -> Optional[Any]:
        for s in candidates:
            if self._apply(g, s) != s:
                return s
        return None

    def __repr__(self):
        return f"<SAction {self.name}>"


def _parse_int_s(text: str) -> int:
    t = text.strip()
    if t.startswith("s"):
        t = t[1:]
    try:
        return int(t)
    except ValueError:
        raise ParseError(f"bad coordinate {text!r}") from None


def action_translation_Z() -> SAction:
    Z = ZnGroup(1)
    return SAction(
        Z,
        apply=lambda g, s: s + g[0],
        parse_s=_parse_int_s,
        format_s=str,
        s_key=lambda s: s,
        sample_s=lambda rng: rng.randint(-2, 2),
        name="Z",
        base=0,
    )


def action_regular(oracle: GroupOracle) -> SAction:
    return SAction(
        oracle,
        apply=oracle.mul,
        parse_s=oracle.parse,
        format_s=oracle.format,
        s_key=oracle.sort_key,
        sample_s=lambda rng: oracle.random_element(rng),
        name=f"{oracle.name}-regular",
        base=oracle.identity,
    )


def action_trivial_finite(n: int) -> SAction:
    def parse_s(text):
        s = _parse_int_s(text)
        if not 1 <= s <= n:
            raise ParseError(f"coordinate {s} outside 1..{n}")
        return s

    return SAction(
        trivial_group(),
        apply=lambda g, s: s,
        parse_s=parse_s,
        format_s=str,
        s_key=lambda s: s,
        sample_s=lambda rng: rng.randint(1, n),
        name=f"trivial{n}",
        base=1,
    )


# ---------------------------------------------------------------------------
# Registry used by the CLI and the test suites

ORACLE_PATH_ENV = "CG_ORACLE_PATH"


def builtin_oracles() -> dict[str, Callable[[], GroupOracle]]:
    return {
        "trivial": trivial_group,
        "Z/2": lambda: cyclic_group(2),
        "Z/4": lambda: cyclic_group(4),
        "S3": symmetric_group_3,
        "F1": lambda: FreeGroup(1),
        "F2": lambda: FreeGroup(2),
        "Z": lambda: ZnGroup(1),
        "Z^2": lambda: ZnGroup(2),
    }


def get_oracle(name: str) -> GroupOracle:
    table = builtin_oracles()
    if name in table:
        return table[name]()
    m = re.fullmatch(r"Z/(\d+)", name)
    if m:
        return cyclic_group(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)", name)
    if m:
        return FreeGroup(int(m.group(1)))
    m = re.fullmatch(r"Z\^(\d+)", name)
    if m:
        return ZnGroup(int(m.group(1)))
    for directory in os.environ.get(ORACLE_PATH_ENV, "").split(os.pathsep):
        if not directory:
            continue
        for suffix in ("", ".txt", ".cayley"):
            path = Path(directory) / f"{name}{suffix}"
            if path.is_file():
                return load_cayley_table(path)
    raise KeyError(f"unknown oracle {name!r}")


def get_action(name: str) -> SAction:
    if name == "Z":
        return action_translation_Z()
    m = re.fullmatch(r"trivial(\d+)", name)
    if m:
        return action_trivial_finite(int(m.group(1)))
    if name.endswith("-regular"):
        return action_regular(get_oracle(name[: -len("-regular")]))
    raise KeyError(f"unknown action {name!r}")
