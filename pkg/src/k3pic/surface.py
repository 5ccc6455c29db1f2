"""The surface family w^2 = x^6 + y^6 + z^6 + t*x^2*y^2*z^2: divisor
catalog, automorphism and Galois actions, fiber classification,
tri-tangent line counts and the elliptic-fibration identity checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IdentityFails, SingularMember, StructureMismatch
from .exactfield import (
    BETA0,
    BETA1,
    BETA2,
    C0,
    C1,
    DELTA,
    Embedding,
    RatFunc,
    SYM_ONE,
    SYM_T,
    SymElem,
    ZETA3,
    ZETA4,
    ZETA6,
    ZETA12,
    poly,
    sym_embed,
)
from .groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    find_isomorphism,
    is_isomorphic,
    symmetric_group_3,
)
from .mpoly import MPolyIdeal, PolyRing, QQ, QT, SymL, groebner, is_unit_ideal, reduce_poly, zerodim_degree

SYM_XYZ = PolyRing(SymL, ("x", "y", "z"))

X_, Y_, Z_ = SYM_XYZ.var(0), SYM_XYZ.var(1), SYM_XYZ.var(2)


def branch_sextic() -> dict:
    """x^6 + y^6 + z^6 + t*x^2*y^2*z^2 over the symbolic field."""
    return SYM_XYZ.from_terms(
        [
            ((6, 0, 0), SYM_ONE),
            ((0, 6, 0), SYM_ONE),
            ((0, 0, 6), SYM_ONE),
            ((2, 2, 2), SYM_T),
        ]
    )


@dataclass(frozen=True)
class FamilyEquation:
    """A fiber of the family: w^2 = sextic(x, y, z)."""

    t0: object  # Fraction or None for the generic fiber
    sextic: dict  # element of SYM_XYZ

    @property
    def weights(self):
        return (1, 1, 1, 3)


def fiber_equation(t0=None) -> FamilyEquation:
    f = branch_sextic()
    if t0 is not None:
        t0 = Fraction(t0)
        f = {e: c.eval_t(t0) for e, c in f.items()}
        f = {e: c for e, c in f.items() if not c.is_zero()}
    return FamilyEquation(t0=t0, sextic=f)


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivisorCurve:
    """Half of the pullback of a conic bitangent to the branch sextic:
    the curve q(x,y,z) = 0, w = g(x,y,z)."""

    q: tuple  # frozen items of the conic polynomial
    g: tuple  # frozen items of the sheet cubic
    label: str

    @staticmethod
    def make(q: dict, g: dict, label: str) -> "DivisorCurve":
        return DivisorCurve(
            q=tuple(sorted(q.items())), g=tuple(sorted(g.items())), label=label
        )

    def q_poly(self) -> dict:
        return dict(self.q)

    def g_poly(self) -> dict:
        return dict(self.g)

    def relabel(self, label: str) -> "DivisorCurve":
        return DivisorCurve(q=self.q, g=self.g, label=label)


def check_bitangency(D: DivisorCurve) -> bool:
    """f - g^2 must lie in the ideal (q), and q must be a smooth conic."""
    f = branch_sextic()
    g = D.g_poly()
    q = D.q_poly()
    diff = SYM_XYZ.sub(f, SYM_XYZ.mul(g, g))
    rem = reduce_poly(SYM_XYZ, diff, [q])
    if rem:
        return False
    return not conic_matrix_det(q).is_zero()


def conic_matrix_det(q: dict) -> SymElem:
    """Determinant of the symmetric 3x3 matrix of a conic."""
    m = [[SymElem() for _ in range(3)] for _ in range(3)]
    for exp, c in q.items():
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        i, j = idx[0], idx[1]
        if i == j:
            m[i][i] = m[i][i] + c
        else:
            half = c / 2
            m[i][j] = m[i][j] + half
            m[j][i] = m[j][i] + half
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _catalog_constants() -> dict:
    t = SYM_T
    t3p27 = RatFunc(poly([27, 0, 0, 1]))  # t^3 + 27
    a4 = (9 * C0 + 6 * t) * DELTA / (4 * t3p27)
    b4 = -(C0 * C0) - t * C0
    # the delta factor is required for f - g^2 to lie in (q4); without it
    # the sheet cubic fails the bitangency identity
    c4 = (18 - 3 * t * t * C0 - 3 * t * C0 * C0) * DELTA / (8 * t3p27)
    a5 = (
        ZETA12
        * (-ZETA6 + 2)
        * (BETA0 * BETA1 + BETA0 * BETA2 + BETA1 * BETA2 + t)
        / 9
    )
    c5 = ZETA12 * (ZETA6 - 2) / 3
    r5 = (
        ZETA12
        * (ZETA6 - 2)
        * (
            2 * BETA0 * BETA1 * BETA2
            + (2 * t - 3) * BETA0
            + (2 * t - 3 * ZETA3) * BETA1
            + (2 * t + 3 * ZETA6) * BETA2
        )
        / 9
    )
    v5 = -BETA0 - BETA1 - BETA2
    return {
        "a4": a4, "b4": b4, "c4": c4,
        "a5": a5, "c5": c5, "r5": r5, "v5": v5,
    }


_CATALOG = None


def divisor_catalog() -> list:
    """The five seed divisors B1..B5."""
    global _CATALOG
    if _CATALOG is not None:
        return _CATALOG
    R = SYM_XYZ
    k = _catalog_constants()
    one = SYM_ONE
    b1 = DivisorCurve.make(
        R.from_terms([((2, 0, 0), one), ((0, 2, 0), one), ((0, 0, 2), ZETA3)]),
        R.from_terms([((1, 1, 1), BETA1)]),
        "B1",
    )
    b2 = DivisorCurve.make(
        R.from_terms([((2, 0, 0), one), ((0, 2, 0), ZETA3), ((0, 0, 2), ZETA3 * ZETA3)]),
        R.from_terms([((1, 1, 1), BETA0)]),
        "B2",
    )
    b3 = DivisorCurve.make(
        R.from_terms([((1, 1, 0), SymElem.from_scalar(2)), ((0, 0, 2), -C1)]),
        R.from_terms([((3, 0, 0), one), ((0, 3, 0), -one)]),
        "B3",
    )
    t = SYM_T
    q4 = R.from_terms(
        [
            ((2, 0, 0), C0 * DELTA),
            ((1, 1, 0), -2 * (9 * C0 * C0 + 3 * t * C0 - 2 * t * t)),
            ((0, 2, 0), 2 * DELTA),
            ((0, 0, 2), -DELTA),
        ]
    )
    # (c0^2 c1 - 2)/2: the +2 variant has the wrong square against f on q4
    lead4 = (C0 * C0 * C1 - 2) / 2
    g4 = R.from_terms(
        [
            ((3, 0, 0), lead4),
            ((2, 1, 0), k["a4"] * lead4),
            ((1, 2, 0), k["b4"] * lead4),
            ((0, 3, 0), k["c4"] * lead4),
        ]
    )
    b4 = DivisorCurve.make(q4, g4, "B4")
    q5 = R.from_terms(
        [
            ((2, 0, 0), k["a5"]),
            ((0, 2, 0), k["c5"]),
            ((0, 0, 2), k["c5"]),
            ((0, 1, 1), one),
        ]
    )
    g5 = R.from_terms([((3, 0, 0), k["r5"]), ((1, 1, 1), k["v5"])])
    b5 = DivisorCurve.make(q5, g5, "B5")
    _CATALOG = [b1, b2, b3, b4, b5]
    return _CATALOG


# ---------------------------------------------------------------------------
# automorphisms: coordinate maps psi and Galois maps tau
# ---------------------------------------------------------------------------

# action of tau_1..tau_5 on the generators (zeta12, beta0, beta1, beta2, c0)
_TAU_IMAGES = {
    1: (ZETA12**7, BETA0, BETA1, BETA2, C0),
    2: (ZETA12, BETA0, BETA1, BETA2, C1),
    3: (ZETA12**7, -BETA0, BETA1, BETA2, C0),
    4: (ZETA12**11, BETA0, -BETA2, BETA1, C0),
    5: (ZETA12**7, BETA0, BETA1, -BETA2, C0),
}


def tau_images(i: int) -> tuple:
    return _TAU_IMAGES[i]


def apply_field_map(e: SymElem, images: tuple, pow_cache: dict | None = None) -> SymElem:
    """Apply the field automorphism sending the generators to `images`.

    pow_cache may be shared across calls with the same images.
    """
    if pow_cache is None:
        pow_cache = {}
    acc: dict = {}
    for mon, coeff in e.coeffs.items():
        term = SymElem.from_scalar(coeff)
        for gi, exp in enumerate(mon):
            if exp:
                key = (gi, exp)
                p = pow_cache.get(key)
                if p is None:
                    p = images[gi] ** exp
                    pow_cache[key] = p
                term = term * p
        for m, c in term.coeffs.items():
            cur = acc.get(m)
            s = c if cur is None else cur + c
            if s.is_zero():
                acc.pop(m, None)
            else:
                acc[m] = s
    return SymElem(acc)


def compose_field_maps(outer: tuple, inner: tuple) -> tuple:
    """(outer o inner) on generators."""
    return tuple(apply_field_map(img, outer) for img in inner)


_ID_IMAGES = (ZETA12, BETA0, BETA1, BETA2, C0)


@dataclass(frozen=True)
class SurfAut:
    """Word of atomic automorphisms, applied right to left.

    Atoms: ("perm", pi) substitutes variable i -> variable pi[i];
    ("diag", (i,j,k)) substitutes variable m -> zeta6^{v_m} * variable m
    (legal when i+j+k = 0 mod 3); ("tau", n) applies the Galois map
    tau_n to every coefficient.
    """

    atoms: tuple

    @staticmethod
    def identity() -> "SurfAut":
        return SurfAut(())

    @staticmethod
    def perm(pi) -> "SurfAut":
        pi = tuple(pi)
        if sorted(pi) != [0, 1, 2]:
            raise ValueError("permutation must act on (0,1,2)")
        if pi == (0, 1, 2):
            return SurfAut(())
        return SurfAut((("perm", pi),))

    @staticmethod
    def diag(i: int, j: int, k: int) -> "SurfAut":
        v = (i % 6, j % 6, k % 6)
        if sum(v) % 3 != 0:
            raise ValueError("diagonal exponents need i+j+k = 0 mod 3")
        if v == (0, 0, 0):
            return SurfAut(())
        return SurfAut((("diag", v),))

    @staticmethod
    def tau(n: int) -> "SurfAut":
        if n not in _TAU_IMAGES:
            raise ValueError("tau index must be 1..5")
        return SurfAut((("tau", n),))

    def __mul__(self, other: "SurfAut") -> "SurfAut":
        return SurfAut(self.atoms + other.atoms)

    def __pow__(self, n: int) -> "SurfAut":
        out = SurfAut.identity()
        for _ in range(n):
            out = out * self
        return out

    def word(self) -> str:
        if not self.atoms:
            return "id"
        names = []
        for kind, data in self.atoms:
            if kind == "perm":
                names.append("p" + "".join("xyz"[i] for i in data))
            elif kind == "diag":
                names.append("d" + "".join(str(v) for v in data))
            else:
                names.append(f"t{data}")
        return "*".join(names)


_ZETA6_POW = [ZETA6**k for k in range(6)]


def _apply_atom_poly(p: dict, atom: tuple) -> dict:
    kind, data = atom
    if kind == "perm":
        pi = data
        out = {}
        for exp, c in p.items():
            new = [0, 0, 0]
            for i, e in enumerate(exp):
                new[pi[i]] += e
            key = tuple(new)
            cur = out.get(key)
            out[key] = c if cur is None else cur + c
        return {e: c for e, c in out.items() if not c.is_zero()}
    if kind == "diag":
        v = data
        out = {}
        for exp, c in p.items():
            s = sum(vi * ei for vi, ei in zip(v, exp)) % 6
            out[exp] = c * _ZETA6_POW[s] if s else c
        return out
    images = _TAU_IMAGES[data]
    out = {}
    for exp, c in p.items():
        img = apply_field_map(c, images)
        if not img.is_zero():
            out[exp] = img
    return out


def apply_automorphism(a: SurfAut, D: DivisorCurve) -> DivisorCurve:
    q = D.q_poly()
    g = D.g_poly()
    for atom in reversed(a.atoms):
        q = _apply_atom_poly(q, atom)
        g = _apply_atom_poly(g, atom)
    label = D.label if not a.atoms else f"{a.word()}*{D.label}"
    return DivisorCurve.make(q, g, label)


# ---------------------------------------------------------------------------
# the groups H (coordinate automorphisms) and Gal (field automorphisms)
# ---------------------------------------------------------------------------


def _norm_diag(v: tuple) -> tuple:
    cands = [tuple((x + s) % 6 for x in v) for s in (0, 2, 4)]
    return min(cands)


def _compose_pairs(a: tuple, b: tuple) -> tuple:
    """Composition of substitution pairs (pi, v): apply a, then b."""
    pa, va = a
    pb, vb = b
    pi = tuple(pb[pa[i]] for i in range(3))
    v = tuple((va[i] + vb[pa[i]]) % 6 for i in range(3))
    return (pi, _norm_diag(v))


def h_group_elements() -> list:
    """All 144 elements of H as pairs (pi, normalized diagonal triple)."""
    from itertools import permutations

    out = []
    for pi in permutations(range(3)):
        seen = set()
        for i in range(6):
            for j in range(6):
                for k in range(6):
                    if (i + j + k) % 3 == 0:
                        v = _norm_diag((i, j, k))
                        if v not in seen:
                            seen.add(v)
                            out.append((pi, v))
    return out


def pair_to_aut(elem: tuple) -> SurfAut:
    pi, v = elem
    return SurfAut.perm(pi) * SurfAut.diag(*v)


def h_group() -> FiniteGroup:
    elems = h_group_elements()
    ident = ((0, 1, 2), (0, 0, 0))
    g = FiniteGroup.from_elements(elems, _compose_pairs, ident)
    return g


def _pair_substitution_of_aut(a: SurfAut) -> tuple:
    """Collapse a psi-only word to its substitution pair."""
    cur = ((0, 1, 2), (0, 0, 0))
    for atom in reversed(a.atoms):
        kind, data = atom
        if kind == "perm":
            nxt = (data, (0, 0, 0))
        elif kind == "diag":
            nxt = ((0, 1, 2), data)
        else:
            raise ValueError("Galois atoms have no substitution pair")
        cur = _compose_pairs(cur, nxt)
    return cur


_GALOIS_CACHE = None


def galois_group_elements() -> tuple:
    """Closure of tau_1..tau_5 as field automorphisms.

    Returns (images list, words list, table group).  Element 0 is the
    identity.  Each non-identity element arises as gen o parent during
    the BFS, so the full Cayley table follows from the generator rows.
    """
    global _GALOIS_CACHE
    if _GALOIS_CACHE is not None:
        return _GALOIS_CACHE
    gens = [(_TAU_IMAGES[i], f"t{i}") for i in range(1, 6)]
    gen_caches = [dict() for _ in gens]
    elements = [_ID_IMAGES]
    words = ["id"]
    parent = [(-1, -1)]  # (generator index, parent element index)
    seen = {_img_key(_ID_IMAGES): 0}
    head = 0
    while head < len(elements):
        cur = elements[head]
        curw = words[head]
        for gi, (img, name) in enumerate(gens):
            new = tuple(
                apply_field_map(x, img, gen_caches[gi]) for x in cur
            )
            key = _img_key(new)
            if key not in seen:
                seen[key] = len(elements)
                elements.append(new)
                words.append(name if curw == "id" else f"{name}*{curw}")
                parent.append((gi, head))
        head += 1
    n = len(elements)
    gen_rows = []
    for gi, (img, name) in enumerate(gens):
        row = []
        for j in range(n):
            prod = tuple(
                apply_field_map(x, img, gen_caches[gi]) for x in elements[j]
            )
            row.append(seen[_img_key(prod)])
        gen_rows.append(row)
    rows: list = [None] * n
    rows[0] = list(range(n))
    for i in range(1, n):
        gi, par = parent[i]
        prow = rows[par]
        grow = gen_rows[gi]
        rows[i] = [grow[prow[j]] for j in range(n)]
    _GALOIS_CACHE = (elements, words, FiniteGroup(rows, names=words))
    return _GALOIS_CACHE


def _img_key(images: tuple) -> tuple:
    return tuple(
        tuple(sorted((m, c.num, c.den) for m, c in img.coeffs.items()))
        for img in images
    )


def _sigma_model_group() -> FiniteGroup:
    """S3 acting on the quotient of {(a,b,c) in (Z/6)^3 : a+b+c = 0 mod 3}
    by the diagonal third roots of unity, by permuting coordinates."""
    from itertools import permutations

    elems = []
    for pi in permutations(range(3)):
        seen = set()
        for i in range(6):
            for j in range(6):
                for k in range(6):
                    if (i + j + k) % 3 == 0:
                        v = _norm_diag((i, j, k))
                        if v not in seen:
                            seen.add(v)
                            elems.append((pi, v))

    def mul(x, y):
        (p1, n1), (p2, n2) = x, y
        pi = tuple(p1[p2[i]] for i in range(3))
        moved = tuple(n1[p2[i]] for i in range(3))
        v = _norm_diag(tuple((a + b) % 6 for a, b in zip(moved, n2)))
        return (pi, v)

    return FiniteGroup.from_elements(elems, mul, ((0, 1, 2), (0, 0, 0)))


def group_abstract_check() -> dict:
    """Certify the abstract structure of H1, H2, H and the Galois group."""
    report = {}
    h1 = FiniteGroup.from_elements(
        [(pi, (0, 0, 0)) for pi in __import__("itertools").permutations(range(3))],
        _compose_pairs,
        ((0, 1, 2), (0, 0, 0)),
    )
    if not is_isomorphic(h1, symmetric_group_3()):
        raise StructureMismatch("H1 is not S3")
    report["H1"] = {"order": h1.n, "isomorphic_to": "S3"}

    h2_elems = [e for e in h_group_elements() if e[0] == (0, 1, 2)]
    h2 = FiniteGroup.from_elements(h2_elems, _compose_pairs, ((0, 1, 2), (0, 0, 0)))
    inv = h2.abelian_invariants()
    if inv != [2, 2, 6]:
        raise StructureMismatch(f"H2 invariants {inv} != [2, 2, 6]")
    report["H2"] = {"order": h2.n, "abelian_invariants": inv}

    h = h_group()
    if h.n != 144:
        raise StructureMismatch(f"|H| = {h.n} != 144")
    model = _sigma_model_group()
    if not is_isomorphic(h, model):
        raise StructureMismatch("H is not the semidirect product S3 x| N")
    report["H"] = {"order": h.n, "isomorphic_to": "S3 semidirect ((Z/2)^2 x Z/6)"}

    _, _, gal = galois_group_elements()
    if gal.n != 96:
        raise StructureMismatch(f"|Gal| = {gal.n} != 96")
    target = direct_product(symmetric_group_3(), cyclic_group(2), dihedral_group(4))
    if not is_isomorphic(gal, target):
        raise StructureMismatch("Gal is not S3 x Z/2 x D4")
    gal_ab = gal.abelianization_invariants()
    target_ab = target.abelianization_invariants()
    if gal_ab != target_ab:
        raise StructureMismatch("abelianization mismatch")
    report["Gal"] = {
        "order": gal.n,
        "isomorphic_to": "S3 x Z/2 x D4",
        "abelianization": gal_ab,
    }
    return report


# ---------------------------------------------------------------------------
# fiber classification
# ---------------------------------------------------------------------------


@dataclass
class FiberReport:
    t0: object
    smooth: bool
    singular_degree: int
    nodes: list  # dicts with j, k and certification flags


_CHARTS3 = (
    # (kept variable indices, fixed assignments {var: 1 or 0})
    ((1, 2), {0: 1}),
    ((2,), {0: 0, 1: 1}),
    ((), {0: 0, 1: 0, 2: 1}),
)


def _sextic_over(domain, t0_val):
    ring = PolyRing(domain, ("x", "y", "z"))
    one = domain.one
    return ring, ring.from_terms(
        [
            ((6, 0, 0), one),
            ((0, 6, 0), one),
            ((0, 0, 6), one),
            ((2, 2, 2), t0_val),
        ]
    )


def _partials(ring: PolyRing, f: dict) -> list:
    out = []
    dom = ring.domain
    for v in range(ring.n):
        d = {}
        for exp, c in f.items():
            if exp[v]:
                ne = list(exp)
                ne[v] -= 1
                coeff = dom.mul(c, dom.from_int(exp[v]))
                ring._acc(d, tuple(ne), coeff)
        out.append(d)
    return out


def _chart_ideals(ring: PolyRing, gens: list):
    """Restrict generators to the three disjoint strata of P^2."""
    out = []
    for kept, fixed in _CHARTS3:
        sub = PolyRing(ring.domain, tuple(ring.variables[i] for i in kept))
        var_map = {v: i for i, v in enumerate(kept)}
        values = {v: (ring.domain.one if val else ring.domain.zero)
                  for v, val in fixed.items()}
        out.append(
            MPolyIdeal(sub, [ring.restrict(g, sub, var_map, values) for g in gens])
        )
    return out


def classify_fiber(t0, emb: Embedding | None = None) -> FiberReport:
    """Smoothness/singularity of the branch sextic at t = t0.

    Rational t0 is handled exactly over Q; a symbolic (constant) t0 works
    over the finite field of the supplied embedding, with the twelve
    candidate nodes certified exactly in the symbolic field.
    """
    symbolic = isinstance(t0, SymElem)
    if symbolic:
        if emb is None:
            raise ValueError("symbolic t0 needs an embedding")
        dom = emb.field
        tv = sym_embed(t0, emb)
        t0sym = t0
    else:
        dom = QQ
        tv = Fraction(t0)
        t0sym = SymElem.from_scalar(Fraction(t0))
    ring, f = _sextic_over(dom, tv)
    jac = _partials(ring, f)
    degree = 0
    smooth = True
    for ideal in _chart_ideals(ring, jac):
        gb = groebner(ideal)
        d = zerodim_degree(ideal, gb)
        if d is None:
            raise SingularMember("singular locus is positive-dimensional")
        if d:
            smooth = False
            degree += d
    if smooth:
        return FiberReport(t0=t0, smooth=True, singular_degree=0, nodes=[])
    nodes = _certify_nodes(t0sym)
    return FiberReport(t0=t0, smooth=False, singular_degree=degree, nodes=nodes)


def _certify_nodes(t0sym: SymElem) -> list:
    """Check the candidate singular points (1 : z6^j : z6^k) exactly.

    A point qualifies when the sextic and its gradient vanish and the
    2x2 Hessian in the affine chart x = 1 is nonsingular (rank 2), which
    is the ordinary-double-point certification for the double cover.
    """
    f = branch_sextic()
    R = SYM_XYZ
    # substitute t -> t0 symbolically
    f0 = {}
    for e, c in f.items():
        if _has_t(c):
            f0[e] = t0sym
        else:
            f0[e] = c
    partials = _partials(R, f0)
    hess = [[_partials(R, partials[i])[j] for j in (1, 2)] for i in (1, 2)]
    nodes = []
    for j in range(6):
        for k in range(6):
            pt = (SYM_ONE, _ZETA6_POW[j], _ZETA6_POW[k])
            if not _eval_sym_poly(f0, pt).is_zero():
                continue
            if any(not _eval_sym_poly(p, pt).is_zero() for p in partials):
                continue
            h11 = _eval_sym_poly(hess[0][0], pt)
            h12 = _eval_sym_poly(hess[0][1], pt)
            h22 = _eval_sym_poly(hess[1][1], pt)
            det = h11 * h22 - h12 * h12
            nodes.append({"j": j, "k": k, "node": not det.is_zero()})
    return nodes


def _has_t(c: SymElem) -> bool:
    return any(
        len(rf.num) > 1 or len(rf.den) > 1 for rf in c.coeffs.values()
    )


def _eval_sym_poly(p: dict, pt: tuple) -> SymElem:
    total = SymElem()
    for exp, c in p.items():
        term = c
        for v, e in zip(pt, exp):
            for _ in range(e):
                term = term * v
        total = total + term
    return total


# ---------------------------------------------------------------------------
# tri-tangent lines
# ---------------------------------------------------------------------------


def tritangent_count(t0, emb: Embedding):
    """Number of lines meeting the branch sextic everywhere with even
    multiplicity, at the reduction given by emb.

    A line is tri-tangent iff the restricted binary sextic S is the
    square of a binary cubic.  The cubic's coefficients are eliminated
    in closed form, stratified by its leading coefficient: with
    A = 4 s0 s2 - s1^2 and B = 8 s0^2 s3 - 4 s0 s1 s2 + s1^3, the locus
    s0 != 0 is cut out by A^2 + 4 s1 B - 64 s0^3 s4, A B - 64 s0^4 s5
    and B^2 - 256 s0^5 s6; deeper strata peel off leading zeros.
    Counts carry the multiplicity of the eliminated scheme.
    """
    F = emb.field
    t0v = _frac_image_of(F, Fraction(t0))
    total = 0
    details = []
    for chart in ("z=ax+by", "y=ax", "x=0"):
        deg = _tritangent_chart_count(F, t0v, chart)
        if deg is None:
            return None, [{"chart": chart, "positive_dimensional": True}]
        details.append({"chart": chart, "count": deg})
        total += deg
    return total, details


def _frac_image_of(F, x: Fraction) -> int:
    num = F.from_int(x.numerator % F.p)
    den = F.from_int(x.denominator % F.p)
    return F.mul(num, F.inv(den))


def _restricted_sextic_coeffs(F, t0v, chart: str):
    """Coefficients s_0..s_6 of f restricted to the line chart, as
    polynomials in the line parameters (a, b) / (a,) / ()."""
    if chart == "z=ax+by":
        R = PolyRing(F, ("x", "y", "a", "b"))
        x, y, a, b = (R.var(i) for i in range(4))
        fx, fy, fz = x, y, R.add(R.mul(a, x), R.mul(b, y))
        params = (2, 3)
    elif chart == "y=ax":
        R = PolyRing(F, ("x", "y", "a"))
        x, y, a = (R.var(i) for i in range(3))
        fx, fy, fz = x, R.mul(a, x), y
        params = (2,)
    else:
        R = PolyRing(F, ("x", "y"))
        x, y = R.var(0), R.var(1)
        fx, fy, fz = R.zero_poly(), x, y
        params = ()
    sextic = R.add(
        R.add(R.pow(fx, 6), R.pow(fy, 6)),
        R.add(
            R.pow(fz, 6),
            R.scale(R.mul(R.pow(fx, 2), R.mul(R.pow(fy, 2), R.pow(fz, 2))), t0v),
        ),
    )
    out_ring = PolyRing(F, tuple(R.variables[i] for i in params))
    remap = {v: i for i, v in enumerate(params)}
    coeffs = [out_ring.zero_poly() for _ in range(7)]
    for exp, c in sextic.items():
        i = exp[1]  # y-degree picks the coefficient slot
        newexp = [0] * out_ring.n
        for v, e in enumerate(exp):
            if v in remap:
                newexp[remap[v]] = e
        out_ring._acc(coeffs[i], tuple(newexp), c)
    return out_ring, coeffs


def _square_strata(R: PolyRing, s: list):
    """Stratified equations for 'binary sextic is a square of a cubic',
    one (equations, degenerate-lead) pair per leading-coefficient
    stratum of the cubic."""

    def quartic_conditions(u):
        Ap = R.sub(R.scale(R.mul(u[0], u[2]), R.domain.from_int(4)), R.mul(u[1], u[1]))
        e3 = R.sub(
            R.mul(u[1], Ap),
            R.scale(R.mul(R.mul(u[0], u[0]), u[3]), R.domain.from_int(8)),
        )
        e4 = R.sub(
            R.mul(Ap, Ap),
            R.scale(R.mul(R.pow(u[0], 3), u[4]), R.domain.from_int(64)),
        )
        return [e3, e4]

    A = R.sub(R.scale(R.mul(s[0], s[2]), R.domain.from_int(4)), R.mul(s[1], s[1]))
    B = R.add(
        R.sub(
            R.scale(R.mul(R.mul(s[0], s[0]), s[3]), R.domain.from_int(8)),
            R.scale(R.mul(R.mul(s[0], s[1]), s[2]), R.domain.from_int(4)),
        ),
        R.pow(s[1], 3),
    )
    e4 = R.add(
        R.sub(R.mul(A, A), R.scale(R.mul(R.pow(s[0], 3), s[4]), R.domain.from_int(64))),
        R.scale(R.mul(s[1], B), R.domain.from_int(4)),
    )
    e5 = R.sub(R.mul(A, B), R.scale(R.mul(R.pow(s[0], 4), s[5]), R.domain.from_int(64)))
    e6 = R.sub(R.mul(B, B), R.scale(R.mul(R.pow(s[0], 5), s[6]), R.domain.from_int(256)))
    strata = [([e4, e5, e6], s[0])]
    # cubic with p = 0: sextic = y^2 * quartic, quartic a square
    strata.append(([s[0], s[1]] + quartic_conditions(s[2:]), s[2]))
    # p = q = 0: sextic = y^4 (rx + sy)^2
    disc = R.sub(
        R.scale(R.mul(s[4], s[6]), R.domain.from_int(4)), R.mul(s[5], s[5])
    )
    strata.append(([s[0], s[1], s[2], s[3], disc], s[4]))
    # p = q = r = 0: sextic = s6 y^6
    strata.append(([s[0], s[1], s[2], s[3], s[4], s[5]], s[6]))
    return strata


def _tritangent_chart_count(F, t0v, chart: str):
    R, s = _restricted_sextic_coeffs(F, t0v, chart)
    # localize each stratum away from its degenerate locus by the
    # Rabinowitsch variable u: adding u*lead - 1 keeps multiplicities
    ext = PolyRing(F, R.variables + ("u",))
    uvar = ext.var(ext.n - 1)

    def lift(p):
        return {e + (0,): c for e, c in p.items()}

    total = 0
    for eqs, lead in _square_strata(R, s):
        gens = [lift(e) for e in eqs if e]
        if len(gens) < len(eqs):
            # an identically-zero equation never obstructs
            pass
        loc = ext.sub(ext.mul(uvar, lift(lead)), ext.const(F.one))
        deg = zerodim_degree(MPolyIdeal(ext, gens + [loc]))
        if deg is None:
            return None
        total += deg
    return total


# ---------------------------------------------------------------------------
# the 4-parameter family normalization
# ---------------------------------------------------------------------------


@dataclass
class NormalizedMember:
    """t-value of the one-parameter member isomorphic to
    w^2 = a x^6 + b y^6 + c z^6 + d x^2 y^2 z^2."""

    rational: Fraction | None
    cube_of_scale: Fraction  # (abc): e = d * (abc)^(1/3)
    e_cubed: Fraction

    @property
    def is_rational(self) -> bool:
        return self.rational is not None


def _cube_root_exact(x: Fraction):
    if x == 0:
        return Fraction(0)
    sign = 1 if x > 0 else -1
    num, den = abs(x.numerator), x.denominator
    rn = round(num ** (1 / 3))
    rd = round(den ** (1 / 3))
    for n in (rn - 1, rn, rn + 1):
        for d in (rd - 1, rd, rd + 1):
            if n >= 0 and d > 0 and n**3 == num and d**3 == den:
                return Fraction(sign * n, d)
    return None


def normalize_family_member(a, b, c, d) -> NormalizedMember:
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    if a * b * c == 0:
        raise ValueError("a, b, c must be nonzero")
    abc = a * b * c
    e3 = d**3 * abc
    if e3 == -27:
        raise SingularMember("normalized member has t^3 = -27")
    root = _cube_root_exact(abc)
    rational = d * root if root is not None else None
    return NormalizedMember(rational=rational, cube_of_scale=abc, e_cubed=e3)


# ---------------------------------------------------------------------------
# elliptic fibration identities
# ---------------------------------------------------------------------------


def verify_inose() -> bool:
    """Three polynomial identities behind the isogeny to an elliptic
    K3 with a product-of-elliptic-curves Kummer model."""
    t = RatFunc.t()

    # (1) substitution into v^2 = u^3 + t s^2 u^2 + s^5 (1+s)^2
    R = PolyRing(QT, ("x", "w", "r"))
    x, w, r = R.var(0), R.var(1), R.var(2)
    r3 = R.pow(r, 3)
    r3p1 = R.add(r3, R.const(QT.one))
    u = R.mul(x, R.mul(R.pow(r, 4), r3p1))
    v = R.mul(w, R.mul(R.pow(r, 6), r3p1))
    s = r3
    lhs = R.sub(
        R.pow(v, 2),
        R.add(
            R.add(R.pow(u, 3), R.scale(R.mul(R.pow(s, 2), R.pow(u, 2)), t)),
            R.mul(R.pow(s, 5), R.pow(R.add(R.const(QT.one), s), 2)),
        ),
    )
    source = R.sub(
        R.pow(w, 2),
        R.add(
            R.add(R.mul(r3p1, R.pow(x, 3)), R.scale(R.mul(R.pow(r, 2), R.pow(x, 2)), t)),
            r3,
        ),
    )
    rhs = R.mul(R.scale(R.mul(R.pow(r, 12), R.pow(r3p1, 2)), QT.one), source)
    if not R.equal(lhs, rhs):
        raise IdentityFails("fibration substitution identity fails")

    # (2) completing the cube: shift u -> u - s^2 t / 3
    R2 = PolyRing(QT, ("s", "u"))
    s2, u2 = R2.var(0), R2.var(1)
    shift = R2.sub(u2, R2.scale(R2.pow(s2, 2), t / 3))
    lhs2 = R2.add(
        R2.add(R2.pow(shift, 3), R2.scale(R2.mul(R2.pow(s2, 2), R2.pow(shift, 2)), t)),
        R2.mul(R2.pow(s2, 5), R2.pow(R2.add(R2.const(QT.one), s2), 2)),
    )
    t3p27 = t * t * t + 27
    rhs2 = R2.add(
        R2.sub(R2.pow(u2, 3), R2.scale(R2.mul(R2.pow(s2, 4), u2), t * t / 3)),
        R2.mul(
            R2.pow(s2, 5),
            R2.add(
                R2.add(R2.pow(s2, 2), R2.scale(s2, t3p27 * Fraction(2, 27))),
                R2.const(QT.one),
            ),
        ),
    )
    if not R2.equal(lhs2, rhs2):
        raise IdentityFails("cube-completion identity fails")

    # (3) the Kummer parameter match for j = -(4t)^3
    A = t * t / 9
    B = -(t * t * t + 27) / 27
    j = RatFunc.const(-64) * t * t * t
    if not (A * A * A == j * j / (12**6)):
        raise IdentityFails("A^3 = j^2/12^6 fails")
    if not (B * B == (1 - j / (12**3)) * (1 - j / (12**3))):
        raise IdentityFails("B^2 = (1 - j/12^3)^2 fails")
    return True
