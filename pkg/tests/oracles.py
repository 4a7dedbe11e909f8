"""Reference computations written without the package's algorithms.

Points are handled as long finite bit strings, tables as prefix substitutions
on strings, and free-group words as strings with capitals for inverses.
"""

from fractions import Fraction
from itertools import product

DEPTH = 48


def seq(pre: str, per: str, n: int = DEPTH) -> str:
    s = pre
    while len(s) < n:
        s += per
    return s[:n]


def point_seq(x, n: int = DEPTH) -> str:
    return seq(x.pre, x.per, n)


def is_partition(words) -> bool:
    for a in words:
        for b in words:
            if a is not b and b.startswith(a):
                return False
    return sum(Fraction(1, 2 ** len(w)) for w in words) == 1


def refine(P, Q) -> list[str]:
    out = set()
    for p in P:
        for q in Q:
            if p.startswith(q):
                out.add(p)
            elif q.startswith(p):
                out.add(q)
    return sorted(out)


def table_image(slots, u: str):
    """Image of the bit string ``u`` and the label it picks up."""
    for w, v, g in slots:
        if u.startswith(w):
            return v + u[len(w):], g
    raise ValueError("no slot covers " + u)


def words_of_length(n: int):
    return ["".join(b) for b in product("01", repeat=n)]


def depth_for(*tables) -> int:
    return sum(max(len(w) for w, _, _ in t) + max(len(v) for _, v, _ in t) for t in tables) + 1


def same_map(slots_a, slots_b, eq=lambda g, h: g == h) -> bool:
    """Prefix substitutions agree on every long enough cylinder, labels included."""
    n = depth_for(slots_a, slots_b)
    for u in words_of_length(n):
        (x, g), (y, h) = table_image(slots_a, u), table_image(slots_b, u)
        if x != y or not eq(g, h):
            return False
    return True


def composite(slots_a, slots_b, mul):
    """u -> a(b(u)) with label g_a(b(u)) * g_b(u), listed on all words of a fixed length."""
    n = depth_for(slots_a, slots_b)
    out = {}
    for u in words_of_length(n):
        y, h = table_image(slots_b, u)
        z, g = table_image(slots_a, y)
        out[u] = (z, mul(g, h))
    return out


def listing(slots, n: int) -> dict:
    return {u: table_image(slots, u) for u in words_of_length(n)}


def free_reduce(word: str) -> str:
    """Free reduction with capitals as inverses: 'abBA' -> ''."""
    stack = []
    for ch in word:
        if stack and stack[-1] != ch and stack[-1].lower() == ch.lower():
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


def free_inverse(word: str) -> str:
    return "".join(ch.swapcase() for ch in reversed(word))


def free_tuple(word: str) -> tuple:
    return tuple((ord(ch.lower()) - 96) * (1 if ch.islower() else -1) for ch in free_reduce(word))


def cube_act(pieces, apply, kappa: dict, default: str) -> tuple[dict, str]:
    """Apply a twist table to a cube point given as {s: bit string} plus a default string.

    A piece (d, g, i) strips d, moves coordinate s to g.s, then prepends i.
    """
    def coord(k, s):
        return k.get(s, default)

    for d, g, i in pieces:
        if all(coord(kappa, s).startswith(w) for s, w in d.items()):
            stripped = dict(kappa)
            for s, w in d.items():
                stripped[s] = coord(kappa, s)[len(w):]
            moved = {apply(g, s): x for s, x in stripped.items()}
            for s, w in i.items():
                moved[s] = w + coord(moved, s)
            return moved, default
    raise ValueError("no piece covers the point")


def bad_measure_by_refinement(C, subs, t, action):
    """Points of C in no simple brick leaving ``t`` uncut, found by refining
    C along every other locally cut coordinate until cells are simple."""
    from fractions import Fraction as Fr
    from cantorgroups.twisted import _cut_coordinates, _halves, _merge
    if len(subs) <= 1 or _merge(C, subs, action) is not None:
        return Fr(0)
    cuts = _cut_coordinates(C, subs)
    cuts.discard(t)
    if not cuts:
        return C.measure()
    s = min(cuts, key=action.s_key)
    return sum((bad_measure_by_refinement(half, frags, t, action)
                for half, frags in _halves(C, subs, s, action)), Fr(0))
