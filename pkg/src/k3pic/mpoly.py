"""Multivariate polynomials and Groebner bases over exact coefficient fields.

Polynomials are dicts {exponent tuple: coefficient}; the coefficient
field is abstracted behind a small domain object so the same engine
runs over F_{p^m} (packed ints), Q (Fraction), Q(t) (RatFunc) and the
symbolic field L (SymElem).  Monomial order is graded reverse
lexicographic unless asked otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qpoly import RatFunc
from .symfield import SymElem


class QQ:
    """Fraction domain."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def from_int(n):
        return Fraction(n)


class QT:
    """Q(t) domain."""

    zero = RatFunc.const(0)
    one = RatFunc.const(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return a.inverse()

    @staticmethod
    def from_int(n):
        return RatFunc.const(n)


class SymL:
    """Domain wrapper for the symbolic field L."""

    zero = SymElem()
    one = SymElem.from_scalar(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return a.inverse()

    @staticmethod
    def from_int(n):
        return SymElem.from_scalar(n)


def grevlex_key(exp: tuple) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp: tuple) -> tuple:
    return exp


_ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class PolyRing:
    """Polynomial ring: a domain, a variable list and a monomial order."""

    def __init__(self, domain, variables, order: str = "grevlex"):
        self.domain = domain
        self.variables = tuple(variables)
        self.n = len(self.variables)
        self.order = order
        self.key = _ORDERS[order]

    # -- construction ---------------------------------------------------

    def zero_poly(self) -> dict:
        return {}

    def const(self, c) -> dict:
        if c == self.domain.zero:
            return {}
        return {(0,) * self.n: c}

    def var(self, i: int) -> dict:
        e = [0] * self.n
        e[i] = 1
        return {tuple(e): self.domain.one}

    def term(self, exp: tuple, c) -> dict:
        if c == self.domain.zero:
            return {}
        return {tuple(exp): c}

    def from_terms(self, terms) -> dict:
        out = {}
        for exp, c in terms:
            self._acc(out, tuple(exp), c)
        return out

    # -- arithmetic -------------------------------------------------------

    def _acc(self, d: dict, exp: tuple, c):
        cur = d.get(exp)
        if cur is None:
            if c != self.domain.zero:
                d[exp] = c
        else:
            s = self.domain.add(cur, c)
            if s == self.domain.zero:
                del d[exp]
            else:
                d[exp] = s

    def add(self, f: dict, g: dict) -> dict:
        out = dict(f)
        for exp, c in g.items():
            self._acc(out, exp, c)
        return out

    def sub(self, f: dict, g: dict) -> dict:
        out = dict(f)
        dom = self.domain
        for exp, c in g.items():
            self._acc(out, exp, dom.neg(c))
        return out

    def neg(self, f: dict) -> dict:
        dom = self.domain
        return {exp: dom.neg(c) for exp, c in f.items()}

    def mul(self, f: dict, g: dict) -> dict:
        dom = self.domain
        out = {}
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                self._acc(out, exp, dom.mul(c1, c2))
        return out

    def mul_term(self, f: dict, exp: tuple, c) -> dict:
        dom = self.domain
        return {
            tuple(a + b for a, b in zip(e, exp)): dom.mul(cf, c)
            for e, cf in f.items()
        }

    def scale(self, f: dict, c) -> dict:
        dom = self.domain
        if c == dom.zero:
            return {}
        return {e: dom.mul(cf, c) for e, cf in f.items()}

    def pow(self, f: dict, n: int) -> dict:
        acc = self.const(self.domain.one)
        for _ in range(n):
            acc = self.mul(acc, f)
        return acc

    def equal(self, f: dict, g: dict) -> bool:
        return f == g

    # -- leading data ----------------------------------------------------

    def lm(self, f: dict) -> tuple:
        return max(f, key=self.key)

    def lt(self, f: dict) -> tuple:
        m = self.lm(f)
        return m, f[m]

    def monic(self, f: dict) -> dict:
        if not f:
            return f
        _, c = self.lt(f)
        if c == self.domain.one:
            return f
        return self.scale(f, self.domain.inv(c))

    # -- substitution ------------------------------------------------------

    def substitute(self, f: dict, images: dict) -> dict:
        """Map variable index -> polynomial (in this same ring)."""
        out = self.zero_poly()
        cache = {}
        for exp, c in f.items():
            termpoly = self.const(c)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                img = images.get(i)
                if img is None:
                    termpoly = self.mul_term(
                        termpoly,
                        tuple(e if j == i else 0 for j in range(self.n)),
                        self.domain.one,
                    )
                else:
                    key = (i, e)
                    powed = cache.get(key)
                    if powed is None:
                        powed = self.pow(img, e)
                        cache[key] = powed
                    termpoly = self.mul(termpoly, powed)
            out = self.add(out, termpoly)
        return out

    def restrict(self, f: dict, target: "PolyRing", var_map: dict, values: dict) -> dict:
        """Project into a smaller ring: var_map maps old index -> new index,
        values maps old index -> constant of the domain."""
        dom = self.domain
        out = {}
        for exp, c in f.items():
            coef = c
            newexp = [0] * target.n
            dead = False
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                if i in var_map:
                    newexp[var_map[i]] += e
                else:
                    v = values[i]
                    if v == dom.zero:
                        dead = True
                        break
                    for _ in range(e):
                        coef = dom.mul(coef, v)
            if not dead:
                target._acc(out, tuple(newexp), coef)
        return out

    def render(self, f: dict) -> str:
        if not f:
            return "0"
        parts = []
        for exp in sorted(f, key=self.key, reverse=True):
            factors = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors) if factors else "1"
            parts.append(f"({f[exp]})*{mono}")
        return " + ".join(parts)


@dataclass
class MPolyIdeal:
    ring: PolyRing
    gens: list

    def __post_init__(self):
        self.gens = [g for g in self.gens if g]


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm_exp(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_poly(ring: PolyRing, f: dict, basis: list) -> dict:
    """Full normal form of f modulo the basis (multivariate division)."""
    dom = ring.domain
    key = ring.key
    lts = [(ring.lm(g), g, dom.inv(g[ring.lm(g)])) for g in basis if g]
    rem = {}
    work = dict(f)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for lm, g, ilc in lts:
            if _divides(lm, m):
                hit = (lm, g, ilc)
                break
        if hit is None:
            rem[m] = c
            continue
        lm, g, ilc = hit
        shift = tuple(a - b for a, b in zip(m, lm))
        factor = dom.mul(c, ilc)
        for e, cf in g.items():
            exp = tuple(a + b for a, b in zip(e, shift))
            if exp == m:
                continue
            ring._acc(work, exp, dom.neg(dom.mul(cf, factor)))
    return rem


def spoly(ring: PolyRing, f: dict, g: dict) -> dict:
    dom = ring.domain
    lmf, cf = ring.lt(f)
    lmg, cg = ring.lt(g)
    lcm = _lcm_exp(lmf, lmg)
    mf = ring.mul_term(f, tuple(a - b for a, b in zip(lcm, lmf)), dom.inv(cf))
    mg = ring.mul_term(g, tuple(a - b for a, b in zip(lcm, lmg)), dom.inv(cg))
    return ring.sub(mf, mg)


def groebner(ideal: MPolyIdeal) -> list:
    """Reduced Groebner basis by Buchberger's algorithm.

    Uses the coprimality and chain criteria; plenty at the 2-4 variables
    this package ever feeds it.
    """
    ring = ideal.ring
    basis = [ring.monic(g) for g in ideal.gens if g]
    if not basis:
        return []
    lms = [ring.lm(g) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def chain_discard(i, j):
        lcm = _lcm_exp(lms[i], lms[j])
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(lms[k], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    return True
        return False

    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: ring.key(_lcm_exp(lms[ij[0]], lms[ij[1]])),
        )
        pairs.discard((i, j))
        lcm = _lcm_exp(lms[i], lms[j])
        if lcm == tuple(a + b for a, b in zip(lms[i], lms[j])):
            continue  # coprime leading monomials
        if chain_discard(i, j):
            continue
        s = reduce_poly(ring, spoly(ring, basis[i], basis[j]), basis)
        if not s:
            continue
        s = ring.monic(s)
        basis.append(s)
        lms.append(ring.lm(s))
        new = len(basis) - 1
        for k in range(new):
            pairs.add((k, new))

    # inter-reduce to the unique reduced basis
    reduced = []
    for i, g in enumerate(basis):
        others = [basis[k] for k in range(len(basis)) if k != i and basis[k]]
        r = reduce_poly(ring, g, others)
        basis[i] = r
    final = [ring.monic(g) for g in basis if g]
    # drop duplicates and sort for determinism
    seen = []
    for g in sorted(final, key=lambda h: ring.key(ring.lm(h))):
        if not any(ring.equal(g, h) for h in seen):
            seen.append(g)
    return seen


def is_unit_ideal(ring: PolyRing, gb: list) -> bool:
    return any(set(g) == {(0,) * ring.n} for g in gb)


def zerodim_degree(ideal: MPolyIdeal, gb: list | None = None):
    """Dimension of the quotient ring as a vector space, or None if the
    ideal is not zero-dimensional.  This equals the degree of the scheme
    the ideal cuts out, counted with multiplicity and independent of the
    field of definition."""
    ring = ideal.ring
    if gb is None:
        gb = groebner(ideal)
    if not gb:
        return None  # zero ideal: whole ring
    if is_unit_ideal(ring, gb):
        return 0
    lms = [ring.lm(g) for g in gb]
    bounds = []
    for i in range(ring.n):
        pure = [
            lm[i]
            for lm in lms
            if all(e == 0 for j, e in enumerate(lm) if j != i)
        ]
        if not pure:
            return None
        bounds.append(min(pure))
    # count standard monomials inside the bounding box
    count = 0
    stack = [(0, ())]
    while stack:
        i, exp = stack.pop()
        if i == ring.n:
            if not any(_divides(lm, exp) for lm in lms):
                count += 1
            continue
        for e in range(bounds[i]):
            stack.append((i + 1, exp + (e,)))
    return count
