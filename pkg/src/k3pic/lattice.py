"""Integer lattices: invariants, discriminant groups/forms, the standard
named lattices, and the even-indefinite classification criterion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Degenerate, NotEven, NotFullRank, TooLarge
from .intmat import (
    bareiss_det,
    identity,
    inverse_rational,
    mat_mul,
    signature_symmetric,
    smith_normal_form,
    transpose,
)


@dataclass(frozen=True)
class IntLattice:
    """Free Z-module with a nondegenerate symmetric Gram matrix."""

    gram: tuple

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        for row in g:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return bareiss_det([list(r) for r in self.gram])

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def dot(self, u, v) -> int:
        return sum(
            u[i] * self.gram[i][j] * v[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )


def invariants(L: IntLattice) -> tuple:
    """(rank, det, (pos, neg), even?); raises Degenerate when det = 0."""
    d = L.det()
    if d == 0:
        raise Degenerate("lattice form is degenerate")
    sig = signature_symmetric([list(r) for r in L.gram])
    return L.rank, d, sig, L.is_even()


_E8_EDGES = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))


def named_lattice(name: str, n: int = 0, m: int = 1) -> IntLattice:
    """U, A_n(m) or E_8(m); m scales the form."""
    if name == "U":
        return IntLattice(((0, 1), (1, 0)))
    if name == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * m
            if i + 1 < n:
                g[i][i + 1] = g[i + 1][i] = -m
        return IntLattice(tuple(tuple(r) for r in g))
    if name == "E8":
        g = [[0] * 8 for _ in range(8)]
        for i in range(8):
            g[i][i] = 2 * m
        for i, j in _E8_EDGES:
            g[i][j] = g[j][i] = -m
        return IntLattice(tuple(tuple(r) for r in g))
    raise ValueError(f"unknown lattice name {name!r}")


def direct_sum(*lattices: IntLattice) -> IntLattice:
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        r = L.rank
        for i in range(r):
            for j in range(r):
                g[off + i][off + j] = L.gram[i][j]
        off += r
    return IntLattice(tuple(tuple(r) for r in g))


@dataclass
class DiscGroup:
    """L*/L: invariant factors > 1 and generators as rational vectors in
    the lattice basis."""

    invariant_factors: list
    generators: list  # each a tuple of Fractions

    @property
    def order(self) -> int:
        o = 1
        for d in self.invariant_factors:
            o *= d
        return o

    def min_generators(self) -> int:
        return len(self.invariant_factors)


def discriminant_group(L: IntLattice) -> DiscGroup:
    d = L.det()
    if d == 0:
        raise Degenerate("lattice form is degenerate")
    diag, _, V = smith_normal_form([list(r) for r in L.gram])
    n = L.rank
    factors = []
    gens = []
    for i, di in enumerate(diag):
        if di > 1:
            factors.append(di)
            gens.append(tuple(Fraction(V[r][i], di) for r in range(n)))
    return DiscGroup(invariant_factors=factors, generators=gens)


@dataclass
class DiscForm:
    """Finite quadratic form on the discriminant group of an even lattice.

    q values live in Q/2Z (kept as Fractions in [0, 2)), b values in Q/Z
    (Fractions in [0, 1)).  Values are evaluated on the DiscGroup
    generators; general elements follow from q(x+y) = q(x)+q(y)+2b(x,y).
    """

    invariant_factors: list
    q_gens: list
    b_matrix: list

    def q_of(self, coeffs: tuple) -> Fraction:
        total = Fraction(0)
        k = len(self.invariant_factors)
        for i in range(k):
            total += coeffs[i] * coeffs[i] * self.q_gens[i]
            for j in range(i + 1, k):
                total += 2 * coeffs[i] * coeffs[j] * self.b_matrix[i][j]
        return total % 2

    def b_of(self, u: tuple, v: tuple) -> Fraction:
        k = len(self.invariant_factors)
        total = Fraction(0)
        for i in range(k):
            for j in range(k):
                total += u[i] * v[j] * self.b_matrix[i][j]
        return total % 1


def discriminant_form(L: IntLattice, group: DiscGroup | None = None) -> DiscForm:
    if not L.is_even():
        raise NotEven("discriminant quadratic form needs an even lattice")
    if group is None:
        group = discriminant_group(L)
    gens = group.generators
    k = len(gens)
    gram = L.gram

    def pair(u, v):
        return sum(
            u[i] * gram[i][j] * v[j] for i in range(L.rank) for j in range(L.rank)
        )

    q = [pair(g, g) % 2 for g in gens]
    b = [[pair(gens[i], gens[j]) % 1 for j in range(k)] for i in range(k)]
    return DiscForm(invariant_factors=list(group.invariant_factors), q_gens=q, b_matrix=b)


def _group_elements(factors: list):
    """All elements of Z/d1 x ... x Z/dk as coefficient tuples."""
    elems = [()]
    for d in factors:
        elems = [e + (a,) for e in elems for a in range(d)]
    return elems


def _element_order(factors: list, elem: tuple) -> int:
    from math import gcd

    o = 1
    for d, a in zip(factors, elem):
        oi = d // gcd(d, a)
        o = o * oi // gcd(o, oi)
    return o


def finite_qform_isomorphic(f1: DiscForm, f2: DiscForm, max_order: int = 100000) -> bool:
    """Brute-force isometry search between two finite quadratic forms."""
    if f1.invariant_factors != f2.invariant_factors:
        return False
    factors = f1.invariant_factors
    order = 1
    for d in factors:
        order *= d
    if order > max_order:
        raise TooLarge(f"discriminant group of order {order} beyond brute force")
    if not factors:
        return True
    elems = _group_elements(factors)
    k = len(factors)
    # candidate images per generator: matching annihilator and q value
    cands = []
    for i in range(k):
        gi = tuple(1 if j == i else 0 for j in range(k))
        qi = f1.q_of(gi)
        di = factors[i]
        ci = [
            e
            for e in elems
            if _element_order(factors, e) != 0
            and all((di * a) % d == 0 for d, a in zip(factors, e))
            and f2.q_of(e) == qi
        ]
        cands.append(ci)

    def gen_b(i, j, images):
        return f2.b_of(images[i], images[j])

    def subgroup_order(images):
        seen = {tuple([0] * k)}
        frontier = [tuple([0] * k)]
        while frontier:
            x = frontier.pop()
            for img in images:
                y = tuple((a + b) % d for a, b, d in zip(x, img, factors))
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return len(seen)

    target_b = [
        [
            f1.b_of(
                tuple(1 if a == i else 0 for a in range(k)),
                tuple(1 if a == j else 0 for a in range(k)),
            )
            for j in range(k)
        ]
        for i in range(k)
    ]

    def backtrack(i, images):
        if i == k:
            return subgroup_order(images) == order
        for e in cands[i]:
            ok = all(
                f2.b_of(images[j], e) == target_b[j][i] for j in range(i)
            )
            if ok and backtrack(i + 1, images + [e]):
                return True
        return False

    return backtrack(0, [])


@dataclass
class NikulinResult:
    status: str  # "certified" | "inapplicable"
    equivalent: bool | None
    detail: dict

    @property
    def certified_true(self) -> bool:
        return self.status == "certified" and self.equivalent is True


def nikulin_equivalent(L1: IntLattice, L2: IntLattice) -> NikulinResult:
    """Isometry decision for even lattices via rank/signature/discriminant
    form, valid in the indefinite range rank > l(A) + 2.  Identical Gram
    matrices short-circuit to a positive answer."""
    if L1.gram == L2.gram:
        return NikulinResult("certified", True, {"reason": "identical gram"})
    r1, d1, s1, e1 = invariants(L1)
    r2, d2, s2, e2 = invariants(L2)
    detail: dict = {
        "rank": (r1, r2),
        "det": (d1, d2),
        "signature": (s1, s2),
        "even": (e1, e2),
    }
    if (r1, s1) != (r2, s2) or abs(d1) != abs(d2) or e1 != e2:
        return NikulinResult("certified", False, detail)
    if not (e1 and e2):
        return NikulinResult("inapplicable", None, detail)
    g1 = discriminant_group(L1)
    g2 = discriminant_group(L2)
    detail["disc_group"] = (g1.invariant_factors, g2.invariant_factors)
    if g1.invariant_factors != g2.invariant_factors:
        return NikulinResult("certified", False, detail)
    ell = g1.min_generators()
    detail["ell"] = ell
    detail["margin"] = (ell, r1 - 2)
    indefinite = s1[0] > 0 and s1[1] > 0
    if not indefinite or r1 <= ell + 2:
        return NikulinResult("inapplicable", None, detail)
    same_form = finite_qform_isomorphic(discriminant_form(L1, g1), discriminant_form(L2, g2))
    return NikulinResult("certified", same_form, detail)


def index_relation(sub_basis: list, L: IntLattice) -> int:
    """Index of the full-rank sublattice spanned by the given basis rows
    (coordinates in the basis of L); asserts the squared-index
    determinant law."""
    n = L.rank
    if len(sub_basis) != n:
        raise NotFullRank("sublattice basis must have full rank")
    B = [list(row) for row in sub_basis]
    idx = bareiss_det(B)
    if idx == 0:
        raise NotFullRank("sublattice basis is singular")
    idx = abs(idx)
    sub_gram = mat_mul(mat_mul(B, [list(r) for r in L.gram]), transpose(B))
    assert bareiss_det(sub_gram) == idx * idx * L.det()
    return idx
