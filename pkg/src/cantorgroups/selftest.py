"""Randomised and exhaustive property suites, one per acceptance criterion.

Each suite takes a seed and an optional case count and returns a list of
``Check`` records.  Everything is deterministic given the seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import groupoid as gd
from .cantor import CantorPoint, enumerate_points, primitive_root
from .errors import EmptyTarget, UnknownSuite
from .groups import (action_regular, action_translation_Z, action_trivial_finite,
                     cyclic_group, free_group, symmetric_group_3, trivial_group, zn_group)
from .sampling import (coordinate_pool, random_bricks_clopen, random_comparable_part,
                       random_cube_point, random_full_bisection,
                       random_full_twisted_bisection, random_gtable, random_kernel_element,
                       random_part, random_twist, random_twisttable, random_words_clopen)
from .twisted import (CubePoint, TwistTable, canonical_pieces, corner_points,
                      embed_v_coordinate, raw_expand, tau, tt_act, tt_identity, tt_inv,
                      tt_mul, twist_apply, twist_to_gtable)
from .vtables import (GTable, act_point, center_test, commutes, commutes_with_probes, conj,
                      g_expand_at, identity, in_kernel_of_pi, inv, iota0, iota_empty, mul,
                      order, pi_forget, torsion_generator)


@dataclass
class Check:
    name: str
    passed: int = 0
    failed: int = 0
    examples: list = field(default_factory=list)

    def record(self, ok: bool, example=None) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.examples) < 3 and example is not None:
                self.examples.append(str(example))

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name} ({self.passed}/{self.passed + self.failed})"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed,
                "ok": self.ok, "examples": self.examples}


def _rng(seed: int, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}")


def _oracles():
    return {
        "trivial": trivial_group(),
        "Z/2": cyclic_group(2),
        "S3": symmetric_group_3(),
        "F2": free_group(2),
        "Z^2": zn_group(2),
    }


def _actions():
    return {
        "trivial2": action_trivial_finite(2),
        "Z": action_translation_Z(),
        "F2-regular": action_regular(free_group(2)),
    }


# ---------------------------------------------------------------------------
# 1. group axioms


def suite_group_axioms(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 1000
    out = []
    oracles = _oracles()
    for name in ("trivial", "Z/2", "S3", "F2", "Z^2"):
        oracle = oracles[name]
        rng = _rng(seed, f"axioms-{name}")
        label = "V" if name == "trivial" else f"V({name})"
        c = Check(f"{label} group axioms")
        one = identity(oracle)
        for _ in range(n):
            a, b, d = (random_gtable(rng, oracle) for _ in range(3))
            ok = (mul(mul(a, b), d) == mul(a, mul(b, d))
                  and mul(a, one) == a and mul(one, a) == a
                  and mul(a, inv(a)).is_identity() and mul(inv(a), a).is_identity())
            c.record(ok, (a, b, d))
        out.append(c)
    for name, action in _actions().items():
        rng = _rng(seed, f"axioms-sv-{name}")
        c = Check(f"SV over {name} group axioms")
        one = tt_identity(action)
        for _ in range(n):
            a, b, d = (random_twisttable(rng, action) for _ in range(3))
            ok = (tt_mul(tt_mul(a, b), d) == tt_mul(a, tt_mul(b, d))
                  and tt_mul(a, one) == a and tt_mul(one, a) == a
                  and tt_mul(a, tt_inv(a)).is_identity()
                  and tt_mul(tt_inv(a), a).is_identity())
            c.record(ok, (a, b, d))
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# 2. normal forms


def suite_confluence(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 500
    out = []
    oracles = _oracles()
    for name in ("trivial", "S3", "F2"):
        oracle = oracles[name]
        rng = _rng(seed, f"confluence-{name}")
        c = Check(f"G-table normal form over {name}")
        for _ in range(n):
            t = random_gtable(rng, oracle)
            raw = GTable(t.slots, oracle, reduce=False, validate=False)
            for _ in range(rng.randint(0, 6)):
                raw = g_expand_at(raw, rng.randint(1, len(raw)))
            red = raw.canonical()
            ok = red.slots == t.slots and red.canonical().slots == red.slots
            c.record(ok, t)
        out.append(c)
    for name, action in _actions().items():
        rng = _rng(seed, f"confluence-sv-{name}")
        c = Check(f"twist-table normal form over {name}")
        coords = coordinate_pool(action)
        for _ in range(n):
            t = random_twisttable(rng, action)
            raw = list(t.pieces)
            for _ in range(rng.randint(0, 6)):
                s = rng.choice(coords + [action.sample_s(rng)])
                raw = raw_expand(raw, rng.randint(1, len(raw)), s, action)
            rng.shuffle(raw)
            again = TwistTable(raw, action)
            ok = again == t and canonical_pieces(t.pieces, action) == t.pieces
            c.record(ok, t)
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# 3. faithfulness


def _partner_gtable(rng, a, oracle):
    roll = rng.random()
    if roll < 0.4:
        c = random_gtable(rng, oracle)
        return mul(mul(a, c), inv(c))
    if roll < 0.7:
        # differs from a on a small region
        return mul(a, torsion_generator(2, oracle) if rng.random() < 0.5
                   else GTable._make([("00", "01", oracle.identity), ("01", "00", oracle.identity),
                                      ("1", "1", oracle.identity)], oracle))
    return random_gtable(rng, oracle)


def suite_faithfulness(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 500
    out = []
    oracle = trivial_group()
    points = enumerate_points(3, 3)
    rng = _rng(seed, "faithful-v")
    c = Check("V: equality matches pointwise action")
    for _ in range(n):
        a = random_gtable(rng, oracle)
        b = _partner_gtable(rng, a, oracle)
        pointwise = all(act_point(a, x) == act_point(b, x) for x in points)
        c.record(pointwise == (a == b), (a, b))
    out.append(c)
    tails = enumerate_points(1, 2)
    for name, action in _actions().items():
        rng = _rng(seed, f"faithful-sv-{name}")
        c = Check(f"SV over {name}: equality matches pointwise action")
        for _ in range(n):
            a = random_twisttable(rng, action)
            roll = rng.random()
            if roll < 0.5:
                d = random_twisttable(rng, action)
                b = tt_mul(tt_mul(a, d), tt_inv(d))
            elif roll < 0.75:
                b = tt_mul(a, tau(random_twist(rng, action, 0.0), action))
            else:
                b = random_twisttable(rng, action)
            pts = corner_points([a, b], coordinate_pool(action), tails)
            pointwise = all(tt_act(a, k) == tt_act(b, k) for k in pts)
            c.record(pointwise == (a == b), (a, b))
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# 4. full groups


def suite_ij_roundtrip(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 500
    out = []
    oracles = _oracles()
    for name in ("trivial", "S3", "F2"):
        oracle = oracles[name]
        flavor = "V2" if name == "trivial" else f"V2x{name}"
        rng = _rng(seed, f"ij-{name}")
        ij = Check(f"{flavor}: I(J(t)) = t")
        ji = Check(f"{flavor}: J(I(b)) = b")
        choice = Check(f"{flavor}: J independent of the label factorisation")
        hom = Check(f"{flavor}: I is a homomorphism")
        for _ in range(n):
            t = random_gtable(rng, oracle)
            ij.record(gd.I_map(gd.J_map(t)) == t, t)
            choice.record(gd.J_map(t, "h=e") == gd.J_map(t, "k=e"), t)
            x = random_full_bisection(rng, oracle)
            y = random_full_bisection(rng, oracle)
            ji.record(gd.J_map(gd.I_map(x)) == x, x)
            hom.record(gd.I_map(gd.compose(x, y)) == mul(gd.I_map(x), gd.I_map(y)), (x, y))
        out += [ij, ji, choice, hom]
    for name in ("Z", "F2-regular"):
        action = _actions()[name]
        rng = _rng(seed, f"ij-sv-{name}")
        ij = Check(f"SV2x|G over {name}: I(J(t)) = t")
        ji = Check(f"SV2x|G over {name}: J(I(b)) = b")
        hom = Check(f"SV2x|G over {name}: I is a homomorphism")
        for _ in range(n):
            t = random_twisttable(rng, action)
            ij.record(gd.I_map_twisted(gd.J_map_twisted(t)) == t, t)
            x = random_full_twisted_bisection(rng, action)
            y = random_full_twisted_bisection(rng, action)
            ji.record(gd.J_map_twisted(gd.I_map_twisted(x)) == x, x)
            hom.record(gd.I_map_twisted(gd.compose(x, y))
                       == tt_mul(gd.I_map_twisted(x), gd.I_map_twisted(y)), (x, y))
        out += [ij, ji, hom]
    return out


# ---------------------------------------------------------------------------
# 5. centre


def partitions_of_size(n: int) -> list[tuple[str, ...]]:
    if n == 1:
        return [("",)]
    out = []
    for k in range(1, n):
        for left in partitions_of_size(k):
            for right in partitions_of_size(n - k):
                out.append(tuple("0" + w for w in left) + tuple("1" + w for w in right))
    return out


def coarsenings_of_p2() -> list[tuple[str, ...]]:
    """Partition sets that P2 refines."""
    return [p for k in range(1, 5) for p in partitions_of_size(k)
            if all(len(w) <= 2 for w in p)]


def tables_over_p2(oracle) -> dict:
    """All reduced G-tables whose domain is refined by P2."""
    elements = list(oracle.elements)
    seen = {}
    for dom in coarsenings_of_p2():
        k = len(dom)
        for img in partitions_of_size(k):
            for perm in itertools.permutations(img):
                for labels in itertools.product(elements, repeat=k):
                    t = GTable._make(zip(dom, perm, labels), oracle)
                    seen.setdefault(t.slots, t)
    return seen


def suite_center(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    out = []
    for oracle in (symmetric_group_3(), cyclic_group(4)):
        tables = tables_over_p2(oracle)
        central = {key for key, t in tables.items() if commutes_with_probes(t)}
        expected = {iota_empty(z, oracle).slots for z in oracle.center()}
        c = Check(f"{oracle.name}: probe-central tables are exactly iota_empty(Z(G))"
                  f" among {len(tables)} tables")
        c.record(central == expected, sorted(central ^ expected))
        out.append(c)
        verdict = Check(f"{oracle.name}: center_test verdicts")
        rng = _rng(seed, f"center-{oracle.name}")
        sample = [tables[k] for k in sorted(central)]
        keys = sorted(tables, key=repr)
        sample += [tables[k] for k in rng.sample(keys, min(len(keys), n or 500))]
        for t in sample:
            r = center_test(t)
            if t.slots in central:
                ok = r.kind == "central" and r.z == t.slots[0][2]
            else:
                ok = r.kind == "not_central" and r.witness is not None \
                    and not commutes(t, r.witness)
            verdict.record(ok, t)
        out.append(verdict)
    return out


# ---------------------------------------------------------------------------
# 6. conjugation formula


def suite_conjugation(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 500
    out = []
    for oracle in (symmetric_group_3(), free_group(2)):
        rng = _rng(seed, f"conj-{oracle.name}")
        c = Check(f"{oracle.name}: conj(iota_empty(z), t) conjugates every label")
        for _ in range(n):
            z = oracle.random_element(rng)
            t = random_gtable(rng, oracle)
            got = conj(iota_empty(z, oracle), t)
            want = tuple((w, v, oracle.conj(z, g)) for w, v, g in t.slots)
            c.record(got.slots == want, (z, t))
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# 7. torsion


def suite_torsion(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    out = []
    for oracle in (trivial_group(), symmetric_group_3(), free_group(2)):
        c = Check(f"{oracle.name}: torsion generators of order 2..8")
        for k in range(2, 9):
            t = torsion_generator(k, oracle)
            ok = (order(t, 4 * k) == k
                  and all(oracle.is_identity(g) for g in t.labels)
                  and not pi_forget(t).is_identity())
            c.record(ok, k)
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# 8. forgetful map and embeddings


def suite_forgetful(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 1000
    out = []
    points = enumerate_points(2, 3)
    oracles = _oracles()
    for name in ("S3", "F2", "Z^2"):
        oracle = oracles[name]
        rng = _rng(seed, f"forget-{name}")
        pi = Check(f"{name}: pi is a homomorphism")
        i0 = Check(f"{name}: iota0 is a homomorphism")
        ie = Check(f"{name}: iota_empty is a homomorphism")
        triv = Check(f"{name}: pi kills iota_empty and iota0")
        ker = Check(f"{name}: kernel of pi detected exactly")
        for _ in range(n):
            a, b = random_gtable(rng, oracle), random_gtable(rng, oracle)
            pi.record(pi_forget(mul(a, b)) == mul(pi_forget(a), pi_forget(b)), (a, b))
            g, h = oracle.random_element(rng), oracle.random_element(rng)
            gh = oracle.mul(g, h)
            i0.record(iota0(gh, oracle) == mul(iota0(g, oracle), iota0(h, oracle)), (g, h))
            ie.record(iota_empty(gh, oracle) == mul(iota_empty(g, oracle), iota_empty(h, oracle)),
                      (g, h))
            triv.record(pi_forget(iota_empty(g, oracle)).is_identity()
                        and pi_forget(iota0(g, oracle)).is_identity(), g)
            roll = rng.random()
            if roll < 0.3:
                t = random_kernel_element(rng, oracle)
            elif roll < 0.6:
                u = random_gtable(rng, oracle)
                t = conj(u, random_kernel_element(rng, oracle))
            else:
                t = a
            moves = any(act_point(t, x) != x for x in points)
            ker.record(in_kernel_of_pi(t) == (not moves)
                       and in_kernel_of_pi(t) == pi_forget(t).is_identity(), t)
        out += [pi, i0, ie, triv, ker]
    return out


# ---------------------------------------------------------------------------
# 9. twists


def suite_twist_laws(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 500
    out = []
    for name in ("Z", "F2-regular"):
        action = _actions()[name]
        oracle = action.oracle
        rng = _rng(seed, f"twist-{name}")
        law = Check(f"{name}: tau(g) tau(h) = tau(gh) as tables")
        pointwise = Check(f"{name}: tau(gh) = tau(g) tau(h) pointwise")
        injective = Check(f"{name}: tau is injective on samples")
        for _ in range(n):
            g = random_twist(rng, action, 0.1)
            h = random_twist(rng, action, 0.1)
            gh = oracle.mul(g, h)
            law.record(tt_mul(tau(g, action), tau(h, action)) == tau(gh, action), (g, h))
            ok = True
            for _ in range(4):
                k = random_cube_point(rng, action)
                direct = twist_apply(g, twist_apply(h, k, action), action)
                ok &= tt_act(tau(gh, action), k) == direct
                ok &= tt_act(tau(g, action), tt_act(tau(h, action), k)) == direct
            pointwise.record(ok, (g, h))
            if not oracle.is_identity(g):
                candidates = coordinate_pool(action) + [action.sample_s(rng) for _ in range(4)]
                s = action.faithfulness_witness(g, candidates)
                moved = False
                if s is not None:
                    k = CubePoint({s: CantorPoint("", "1")})
                    moved = tt_act(tau(g, action), k) != k
                injective.record(moved and not tau(g, action).is_identity(), g)
        out += [law, pointwise, injective]
    return out


# ---------------------------------------------------------------------------
# 10. minimality witnesses


def _check_witness(sigma, U, V) -> bool:
    rebuilt = gd.Bisection(sigma.parts, sigma.flavor, sigma.oracle, sigma.action)
    return gd.source(rebuilt) == U and gd.range_(rebuilt).issubset(V)


def suite_witnesses(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 200
    out = []
    for flavor, oracle in (("V2", trivial_group()), ("V2xG", symmetric_group_3())):
        rng = _rng(seed, f"witness-{flavor}")
        c = Check(f"{flavor}: witnesses have source U and range inside V")
        for _ in range(n):
            U = random_words_clopen(rng)
            V = random_words_clopen(rng, nonempty=True)
            sigma = gd.min_witness(U, V, flavor, oracle)
            c.record(_check_witness(sigma, U, V), (U, V))
        out.append(c)
    for name in ("Z", "F2-regular"):
        action = _actions()[name]
        rng = _rng(seed, f"witness-sv-{name}")
        c = Check(f"SV2x|G over {name}: witnesses have source U and range inside V")
        for _ in range(n):
            U = random_bricks_clopen(rng, action)
            V = random_bricks_clopen(rng, action, nonempty=True)
            sigma = gd.min_witness(U, V, gd.TWISTED, action=action)
            c.record(_check_witness(sigma, U, V), (U, V))
        out.append(c)
    c = Check("empty target is rejected")
    try:
        gd.min_witness(gd.clopen_of_words([""]), gd.clopen_of_words([]), "V2")
        c.record(False, "no error")
    except EmptyTarget:
        c.record(True)
    out.append(c)
    return out


# ---------------------------------------------------------------------------
# 11. isotropy


def _points_by_scan(parts, max_pre: int, max_per: int) -> dict:
    """Brute force: every point with short preperiod and period, tested
    against every part by prefix matching and comparing tails."""
    longest = max(max(len(p.w), len(p.wp)) for p in parts)
    by_w: dict = {}
    for i, p in enumerate(parts):
        by_w.setdefault(p.w, []).append(i)
    found: dict = {i: set() for i in range(len(parts))}
    pres = [[""]] + [["".join(b) for b in itertools.product("01", repeat=k)]
                     for k in range(1, max_pre + 1)]
    for plen in range(1, max_per + 1):
        for bits in itertools.product("01", repeat=plen):
            per = "".join(bits)
            if primitive_root(per) != per:
                continue
            rep = per * (longest // plen + 1)
            for group in pres:
                for pre in group:
                    if pre and pre[-1] == per[-1]:
                        continue
                    head = (pre + rep)[:longest]
                    for k in range(longest + 1):
                        hits = by_w.get(head[:k])
                        if not hits:
                            continue
                        for i in hits:
                            wp = parts[i].wp
                            if not head.startswith(wp):
                                continue
                            x = CantorPoint._raw(pre, per)
                            if x.drop(k) == x.drop(len(wp)):
                                found[i].add(x)
    return found


def suite_isotropy(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 200
    rng = _rng(seed, "isotropy")
    parts = [random_comparable_part(rng) if rng.random() < 0.6 else random_part(rng)
             for _ in range(n)]
    periodic = Check("isotropy points are fixed, eventually periodic, preperiod <= 4")
    scan = Check("isotropy points match a brute-force scan of enumerate_points(4, 16)")
    solved = [gd.isotropy_points(p, 4) for p in parts]
    for p, pts in zip(parts, solved):
        ok = all(isinstance(x, CantorPoint) and len(x.pre) <= 4 and gd.part_act(p, x) == x
                 for x in pts)
        periodic.record(ok, p)
    brute = _points_by_scan(parts, 4, 16)
    for i, p in enumerate(parts):
        scan.record(set(solved[i]) == brute[i], (p, solved[i], brute[i]))
    return [periodic, scan]


# ---------------------------------------------------------------------------
# 12. coherence of the three pictures


def suite_coherence(seed: int = 0, n: Optional[int] = None) -> list[Check]:
    n = n or 500
    oracle = trivial_group()
    action = action_trivial_finite(1)
    rng = _rng(seed, "coherence")
    shape = Check("S={1}: canonical twist table has the reduced table's slots")
    back = Check("S={1}: table -> twist table -> table is the identity")
    tw = Check("S={1}: V -> SV commutes with multiplication")
    bis = Check("S={1}: V -> full bisections commutes with multiplication")
    twb = Check("S={1}: SV -> full bisections commutes with multiplication")
    cross = Check("S={1}: both routes to bisections agree")
    for _ in range(n):
        a, b = random_gtable(rng, oracle), random_gtable(rng, oracle)
        ab = mul(a, b)
        da, db, dab = (embed_v_coordinate(t, 1, action) for t in (a, b, ab))
        shape.record([(d.get(1), i.get(1)) for d, _, i in da.pieces]
                     == [(w, v) for w, v, _ in a.slots], a)
        back.record(twist_to_gtable(da, 1, oracle) == a, a)
        tw.record(tt_mul(da, db) == dab, (a, b))
        bis.record(gd.compose(gd.J_map(a), gd.J_map(b)) == gd.J_map(ab), (a, b))
        twb.record(gd.compose(gd.J_map_twisted(da), gd.J_map_twisted(db))
                   == gd.J_map_twisted(dab), (a, b))
        plain = gd.J_map(a)
        lifted = gd.J_map_twisted(da)
        cross.record(sorted((p.w, p.wp) for p in plain.parts)
                     == sorted((p.w.get(1), p.wp.get(1)) for p in lifted.parts), a)
    return [shape, back, tw, bis, twb, cross]


# ---------------------------------------------------------------------------

SUITES: dict[str, tuple[int, str, Callable]] = {
    "group-axioms": (1, "group axioms", suite_group_axioms),
    "confluence": (2, "normal-form confluence", suite_confluence),
    "faithfulness": (3, "representation faithfulness", suite_faithfulness),
    "ij-roundtrip": (4, "full-group correspondence", suite_ij_roundtrip),
    "center": (5, "centre at desk scale", suite_center),
    "conjugation": (6, "conjugation formula", suite_conjugation),
    "torsion": (7, "torsion generators", suite_torsion),
    "forgetful": (8, "forgetful map and embeddings", suite_forgetful),
    "twist-laws": (9, "twist laws", suite_twist_laws),
    "witnesses": (10, "minimality witnesses", suite_witnesses),
    "isotropy": (11, "effectiveness shadow", suite_isotropy),
    "coherence": (12, "cross-representation coherence", suite_coherence),
}


def run_suite(name: str, seed: int = 0, n: Optional[int] = None) -> list[Check]:
    if name not in SUITES:
        raise UnknownSuite(name)
    return SUITES[name][2](seed, n)
