"""Divisor intersection numbers on the double sextic, over a finite
field reduction.

Two conic-half divisors D = (q, w - g) and D' = (q', w - g') meet in
the zero-dimensional scheme cut out by (q, w-g, q', w-g') inside the
weighted space P(1,1,1,3).  On each of the three disjoint strata
{x=1}, {x=0,y=1}, {x=0,y=0,z=1} the sheet variable w is eliminated by
w = g, leaving the plane ideal (q, q', g-g'); the intersection number
is the sum of the stratum scheme degrees.  Self-intersections are -2
by adjunction (the curves are rational).
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

from .errors import BadReduction, CommonComponent
from .exactfield import Embedding, sym_embed
from .mpoly import MPolyIdeal, PolyRing, groebner, is_unit_ideal, reduce_poly, zerodim_degree
from .surface import DivisorCurve, SYM_XYZ, check_bitangency


def embed_poly(p: dict, emb: Embedding) -> dict:
    out = {}
    for e, c in p.items():
        v = sym_embed(c, emb)
        if v:
            out[e] = v
    return out


@dataclass
class EmbeddedDivisor:
    label: str
    q: dict  # conic over the finite field, variables (x, y, z)
    g: dict  # sheet cubic

    @staticmethod
    def of(D: DivisorCurve, emb: Embedding) -> "EmbeddedDivisor":
        q = embed_poly(D.q_poly(), emb)
        g = embed_poly(D.g_poly(), emb)
        if not q:
            raise BadReduction(f"conic of {D.label} vanishes at the reduction")
        return EmbeddedDivisor(label=D.label, q=q, g=g)


_KEY_CACHE: dict = {}


def divisor_key(D: DivisorCurve, emb: Embedding) -> tuple:
    """Canonical key of the embedded divisor on each stratum: the reduced
    basis of the conic ideal plus the normal form of the sheet cubic
    modulo it (the curve is (q = 0, w = g), so the pair (ideal(q),
    g mod q) determines it)."""
    ck = (D.q, D.g, emb)
    hit = _KEY_CACHE.get(ck)
    if hit is not None:
        return hit
    e = EmbeddedDivisor.of(D, emb)
    F = emb.field
    key = []
    for fixed, variables in (((1, None, None), ("y", "z")),
                             ((0, 1, None), ("z",)),
                             ((0, 0, 1), ())):
        ring = PolyRing(F, variables)
        q = _restrict(F, e.q, fixed, ring)
        g = _restrict(F, e.g, fixed, ring)
        gb = groebner(MPolyIdeal(ring, [q] if q else []))
        nf = reduce_poly(ring, g, gb) if gb else g
        key.append(
            (
                tuple(sorted((exp, c) for h in gb for exp, c in h.items())),
                tuple(sorted(nf.items())),
            )
        )
    key = tuple(key)
    _KEY_CACHE[ck] = key
    return key


def _restrict(F, p: dict, fixed: tuple, target: PolyRing):
    """Substitute the fixed coordinates (None = keep as a variable)."""
    var_map = {}
    nxt = 0
    for i, v in enumerate(fixed):
        if v is None:
            var_map[i] = nxt
            nxt += 1
    out = {}
    for exp, c in p.items():
        coef = c
        newexp = [0] * target.n
        dead = False
        for i, e in enumerate(exp):
            if e == 0:
                continue
            if i in var_map:
                newexp[var_map[i]] += e
            else:
                v = fixed[i]
                if v == 0:
                    dead = True
                    break
                for _ in range(e):
                    coef = F.mul(coef, v)
        if not dead:
            target._acc(out, tuple(newexp), coef)
    return out


def _sheet_difference_strata(F, a: EmbeddedDivisor, b: EmbeddedDivisor):
    """Ideals of (q, q', g - g') on the three strata of the plane."""
    strata = []
    for fixed, variables in (((1, None, None), ("y", "z")),
                             ((0, 1, None), ("z",)),
                             ((0, 0, 1), ())):
        ring = PolyRing(F, variables)
        qa = _restrict(F, a.q, fixed, ring)
        qb = _restrict(F, b.q, fixed, ring)
        ga = _restrict(F, a.g, fixed, ring)
        gb = _restrict(F, b.g, fixed, ring)
        diff = ring.sub(ga, gb)
        strata.append(MPolyIdeal(ring, [g for g in (qa, qb, diff) if g]))
    return strata


def intersection_number(D1: DivisorCurve, D2: DivisorCurve, emb: Embedding,
                        cache: "IntersectionCache | None" = None) -> int:
    """D1 . D2 at the given reduction; -2 on the diagonal by adjunction."""
    if divisor_equal(D1, D2, emb):
        return -2
    if cache is not None:
        hit = cache.get(D1.label, D2.label)
        if hit is not None:
            return hit
    value, charts = _intersection_value(D1, D2, emb)
    if cache is not None:
        cache.put(D1.label, D2.label, value, charts)
    return value


def _intersection_value(D1: DivisorCurve, D2: DivisorCurve, emb: Embedding):
    a = EmbeddedDivisor.of(D1, emb)
    b = EmbeddedDivisor.of(D2, emb)
    total = 0
    charts = []
    for ideal in _sheet_difference_strata(emb.field, a, b):
        gb = groebner(ideal)
        deg = zerodim_degree(ideal, gb)
        if deg is None:
            raise CommonComponent(
                f"{D1.label} and {D2.label} share a component at the reduction"
            )
        charts.append(deg)
        total += deg
    return total, charts


def divisor_equal(D1: DivisorCurve, D2: DivisorCurve, emb: Embedding) -> bool:
    """Embedded reduced-basis comparison, confirmed symbolically."""
    if D1.q == D2.q and D1.g == D2.g:
        return True
    if divisor_key(D1, emb) != divisor_key(D2, emb):
        return False
    return divisor_equal_symbolic(D1, D2)


def divisor_equal_symbolic(D1: DivisorCurve, D2: DivisorCurve) -> bool:
    """Proportional conics and sheet cubics congruent modulo the conic."""
    q1, q2 = D1.q_poly(), D2.q_poly()
    if set(q1) != set(q2):
        return False
    exp = next(iter(q1))
    ratio = q2[exp] * q1[exp].inverse()
    for e, c in q1.items():
        if not (q2.get(e) == c * ratio):
            return False
    diff = SYM_XYZ.sub(D1.g_poly(), D2.g_poly())
    rem = reduce_poly(SYM_XYZ, diff, [q1])
    return not rem


def intersection_with_hyperplane(D: DivisorCurve, emb: Embedding, seed: int = 11) -> int:
    """Degree of the curve against the pullback of a line: always 2 for
    a conic half; verified against a randomized line."""
    import random

    rng = random.Random(seed)
    e = EmbeddedDivisor.of(D, emb)
    F = emb.field
    for _ in range(20):
        # line a*x + b*y + c*z with a random nonzero coefficient vector
        line = {
            (1, 0, 0): rng.randrange(F.q),
            (0, 1, 0): rng.randrange(F.q),
            (0, 0, 1): rng.randrange(1, F.q),
        }
        total = 0
        ok = True
        for fixed, variables in (((1, None, None), ("y", "z")),
                                 ((0, 1, None), ("z",)),
                                 ((0, 0, 1), ())):
            ring = PolyRing(F, variables)
            gens = [
                _restrict(F, e.q, fixed, ring),
                _restrict(F, line, fixed, ring),
            ]
            ideal = MPolyIdeal(ring, [g for g in gens if g])
            deg = zerodim_degree(ideal)
            if deg is None:
                ok = False
                break
            total += deg
        if ok and total == 2:
            return 2
        if ok and total != 2:
            # line through a tangency or misses transversality; retry
            continue
    raise CommonComponent(f"could not certify hyperplane degree for {D.label}")


def intersection_matrix(divisors: list, emb: Embedding,
                        cache: "IntersectionCache | None" = None) -> list:
    """Symmetric matrix of pairwise intersection numbers.

    Assumes the list is deduplicated (as orbit_generate guarantees), so
    off-diagonal pairs are distinct curves."""
    n = len(divisors)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = -2
        for j in range(i + 1, n):
            if cache is not None:
                v = cache.get(divisors[i].label, divisors[j].label)
                if v is None:
                    v, charts = _intersection_value(divisors[i], divisors[j], emb)
                    cache.put(divisors[i].label, divisors[j].label, v, charts)
            else:
                v, _ = _intersection_value(divisors[i], divisors[j], emb)
            M[i][j] = M[j][i] = v
    return M


class IntersectionCache:
    """One JSON file per pair, content-addressed by the run parameters."""

    def __init__(self, root: str, emb: Embedding):
        self.root = root
        self.emb = emb
        os.makedirs(root, exist_ok=True)
        self._mem: dict = {}

    def _key(self, l1: str, l2: str) -> tuple:
        a, b = sorted((l1, l2))
        return (a, b)

    def _path(self, key: tuple) -> str:
        emb = self.emb
        payload = json.dumps(
            {
                "labels": list(key),
                "t0": str(emb.t0),
                "p": emb.field.p,
                "m": emb.field.m,
                "modulus": list(emb.field.modulus),
            },
            sort_keys=True,
        )
        h = hashlib.sha256(payload.encode()).hexdigest()[:24]
        return os.path.join(self.root, f"isect_{h}.json")

    def get(self, l1: str, l2: str):
        key = self._key(l1, l2)
        if key in self._mem:
            return self._mem[key]
        path = self._path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                data = json.load(fh)
            value = int(data["value"])
        except (ValueError, KeyError, json.JSONDecodeError):
            return None  # corrupt entries are recomputed, never trusted
        self._mem[key] = value
        return value

    def put(self, l1: str, l2: str, value: int, charts: list):
        key = self._key(l1, l2)
        self._mem[key] = value
        emb = self.emb
        data = {
            "labels": list(key),
            "t0": str(emb.t0),
            "p": emb.field.p,
            "m": emb.field.m,
            "modulus": list(emb.field.modulus),
            "value": value,
            "chart_breakdown": charts,
        }
        with open(self._path(key), "w") as fh:
            json.dump(data, fh, sort_keys=True)


def orbit_generate(seeds: list, emb: Embedding, include_tau: bool = False) -> list:
    """Closure of the seed divisors under the coordinate automorphism
    group (optionally also the Galois generators), deduplicated, each
    element labeled by a shortest generator word."""
    from .surface import SurfAut, apply_automorphism, h_group_elements

    gens = [
        ("pxy", SurfAut.perm((1, 0, 2))),
        ("pxyz", SurfAut.perm((1, 2, 0))),
        ("d111", SurfAut.diag(1, 1, 1)),
        ("d030", SurfAut.diag(0, 3, 0)),
        ("d120", SurfAut.diag(1, 2, 0)),
    ]
    if include_tau:
        gens += [(f"t{i}", SurfAut.tau(i)) for i in range(1, 6)]
    seen: dict = {}
    out: list = []
    frontier: list = []
    for D in seeds:
        key = divisor_key(D, emb)
        if key not in seen:
            seen[key] = D
            out.append(D)
            frontier.append(D)
    while frontier:
        D = frontier.pop(0)
        for name, gaut in gens:
            E = apply_automorphism(gaut, D)
            E = E.relabel(f"{name}*{D.label}" if D.label else name)
            key = divisor_key(E, emb)
            if key not in seen:
                seen[key] = E
                out.append(E)
                frontier.append(E)
            else:
                # embedded collision: confirm symbolically that it is a
                # true duplicate, not a mod-p merge
                if not divisor_equal_symbolic(E, seen[key]):
                    raise CommonComponent(
                        f"mod-p merge of distinct divisors {E.label} vs "
                        f"{seen[key].label}"
                    )
    return out
