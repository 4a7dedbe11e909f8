"""Random elements for the property suites.  Every generator takes an explicit
``random.Random`` so runs are reproducible from a seed."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .cantor import CantorPoint, enumerate_points
from .groupoid import TWISTED, V2, V2G, Bisection, ClopenSet, Part, TwistedPart
from .groups import GroupOracle, SAction
from .twisted import FULL, Brick, CubePoint, TwistTable, split_brick, twist_brick
from .vtables import GTable


def random_partition(rng: random.Random, n: int) -> list[str]:
    words = [""]
    while len(words) < n:
        i = rng.randrange(len(words))
        w = words.pop(i)
        words[i:i] = [w + "0", w + "1"]
    return words


def random_gtable(rng: random.Random, oracle: GroupOracle, max_blocks: int = 5,
                  identity_bias: float = 0.3) -> GTable:
    n = rng.randint(1, max_blocks)
    dom = random_partition(rng, n)
    img = random_partition(rng, n)
    rng.shuffle(img)
    labels = [oracle.identity if rng.random() < identity_bias else oracle.random_element(rng)
              for _ in range(n)]
    return GTable._make(zip(dom, img, labels), oracle)


def random_kernel_element(rng: random.Random, oracle: GroupOracle, max_blocks: int = 5) -> GTable:
    dom = random_partition(rng, rng.randint(1, max_blocks))
    return GTable._make([(w, w, oracle.random_element(rng)) for w in dom], oracle)


def coordinate_pool(action: SAction) -> list:
    """A few elements of S around the base point."""
    if action.name == "Z":
        return [-1, 0, 1]
    if action.name.startswith("trivial"):
        n = int(action.name[len("trivial"):])
        return list(range(1, n + 1))
    oracle = action.oracle
    return [oracle.identity] + list(oracle.generators)


def random_brick_partition(rng: random.Random, n: int, coords: Sequence,
                           action: SAction) -> list[Brick]:
    bricks = [FULL]
    while len(bricks) < n:
        i = rng.randrange(len(bricks))
        b = bricks.pop(i)
        bricks[i:i] = split_brick(b, rng.choice(coords), action)
    return bricks


def random_twist(rng: random.Random, action: SAction, identity_bias: float = 0.4):
    oracle = action.oracle
    if rng.random() < identity_bias:
        return oracle.identity
    if action.name == "Z":
        return (rng.choice([-2, -1, 1, 2]),)
    if hasattr(oracle, "rank"):
        return oracle.random_element(rng, max_length=2)
    return oracle.random_element(rng)


def random_twisttable(rng: random.Random, action: SAction, max_pieces: int = 4,
                      coords: Optional[Sequence] = None) -> TwistTable:
    coords = coords or coordinate_pool(action)
    n = rng.randint(1, max_pieces)
    dom = random_brick_partition(rng, n, coords, action)
    img = random_brick_partition(rng, n, coords, action)
    rng.shuffle(img)
    pieces = [(d, random_twist(rng, action), i) for d, i in zip(dom, img)]
    return TwistTable._make(pieces, action)


_TAILS = None


def _tails() -> list[CantorPoint]:
    global _TAILS
    if _TAILS is None:
        _TAILS = enumerate_points(2, 3)
    return _TAILS


def random_point(rng: random.Random, max_prefix: int = 3) -> CantorPoint:
    prefix = "".join(rng.choice("01") for _ in range(rng.randint(0, max_prefix)))
    return rng.choice(_tails()).prepend(prefix)


def random_cube_point(rng: random.Random, action: SAction,
                      coords: Optional[Sequence] = None) -> CubePoint:
    coords = list(coords or coordinate_pool(action))
    extra = [action.sample_s(rng) for _ in range(2)]
    return CubePoint({s: random_point(rng) for s in coords + extra})


def random_word(rng: random.Random, max_length: int) -> str:
    return "".join(rng.choice("01") for _ in range(rng.randint(0, max_length)))


def random_words_clopen(rng: random.Random, max_blocks: int = 6,
                        nonempty: bool = False) -> ClopenSet:
    words = random_partition(rng, rng.randint(1, max_blocks))
    chosen = [w for w in words if rng.random() < 0.5]
    if nonempty and not chosen:
        chosen = [rng.choice(words)]
    return ClopenSet(chosen, "words")


def random_bricks_clopen(rng: random.Random, action: SAction, max_blocks: int = 5,
                         nonempty: bool = False) -> ClopenSet:
    bricks = random_brick_partition(rng, rng.randint(1, max_blocks),
                                    coordinate_pool(action), action)
    chosen = [b for b in bricks if rng.random() < 0.5]
    if nonempty and not chosen:
        chosen = [rng.choice(bricks)]
    return ClopenSet(chosen, "bricks", action)


def random_full_bisection(rng: random.Random, oracle: GroupOracle,
                          max_blocks: int = 5) -> Bisection:
    """Built part by part, without going through a table."""
    n = rng.randint(1, max_blocks)
    src = random_partition(rng, n)
    rng.shuffle(src)
    rng_words = random_partition(rng, n)
    parts = [Part(wp, w, oracle.random_element(rng)) for wp, w in zip(rng_words, src)]
    flavor = V2 if oracle.is_trivial else V2G
    return Bisection(parts, flavor, oracle)


def random_full_twisted_bisection(rng: random.Random, action: SAction,
                                  max_blocks: int = 4) -> Bisection:
    coords = coordinate_pool(action)
    n = rng.randint(1, max_blocks)
    src = random_brick_partition(rng, n, coords, action)
    rng.shuffle(src)
    rng_bricks = random_brick_partition(rng, n, coords, action)
    parts = []
    for wp, x in zip(rng_bricks, src):
        g = random_twist(rng, action)
        # the part's source is w moved by g^-1, so store w = g x
        parts.append(TwistedPart(wp, twist_brick(g, x, action), g))
    return Bisection(parts, TWISTED, action=action)


def random_part(rng: random.Random, max_length: int = 6) -> Part:
    while True:
        wp = random_word(rng, max_length)
        w = random_word(rng, max_length)
        if w != wp:
            return Part(wp, w, None)


def random_comparable_part(rng: random.Random, max_length: int = 6) -> Part:
    """A non-unit part whose words are comparable, so isotropy can occur."""
    while True:
        short = random_word(rng, max_length - 1)
        long_ = short + random_word(rng, max_length - len(short))
        if long_ != short:
            break
    if rng.random() < 0.5:
        return Part(short, long_, None)
    return Part(long_, short, None)
