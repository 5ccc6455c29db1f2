"""The degree-96 splitting field of the divisor-catalog constants.

Everything lives in L = Q(t)(z, b0, b1, b2, c) where

    z   is a primitive 12th root of unity   (z^4 = z^2 - 1),
    bi  are square roots of t + 3*w3^i      (w3 = z^4 = z^2 - 1),
    c   is a root of x^3 + t*x^2 + 4        (c^3 = -t*c^2 - 4).

Elements are kept in normal form on the 96 monomials
z^a * b0^e0 * b1^e1 * b2^e2 * c^e  (a < 4, ei < 2, e < 3) with Q(t)
coefficients.  The three rewriting rules above each lower a single
generator exponent, so normalization terminates and the normal form is
unique.

Inversion works down the field tower
Q(t) < +z < +b0 < +b1 < +b2 < +c by extended Euclid at each level;
every extension step has full degree (4*2*2*2*3 = 96), so each level is
a field and leading coefficients are invertible.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionRequested, NotInvertible
from .qpoly import RF_ONE, RF_ZERO, RF_T, RatFunc, poly

# exponent bounds for (zeta12, beta0, beta1, beta2, c0)
_BOUNDS = (4, 2, 2, 2, 3)

# t + 3*w3^i expressed on the zeta-basis (coefficient of z^0 and z^2)
_T = poly([0, 1])
_BSQ = {
    # beta_i^2 -> {zeta_exp: Q[t] coefficient}
    0: {0: poly([3, 1])},            # t + 3
    1: {0: poly([-3, 1]), 2: poly([3])},   # t - 3 + 3 z^2
    2: {0: poly([0, 1]), 2: poly([-3])},   # t - 3 z^2
}

_reduce_cache: dict = {}


def _reduce_monomial(mon: tuple) -> tuple:
    """Rewrite a raw exponent tuple into normal form.

    Returns a tuple of (normal_monomial, Q[t]-coefficient-tuple) pairs.
    """
    cached = _reduce_cache.get(mon)
    if cached is not None:
        return cached
    from .qpoly import padd, pmul, pscale

    work = {mon: poly([1])}
    out = {}
    while work:
        m, coeff = work.popitem()
        a, e0, e1, e2, e = m
        if a >= 4:
            # z^4 = z^2 - 1
            base = (a - 4, e0, e1, e2, e)
            for da, s in ((2, 1), (0, -1)):
                key = (base[0] + da,) + base[1:]
                _acc(work, key, pscale(coeff, Fraction(s)))
        elif e0 >= 2:
            for za, cf in _BSQ[0].items():
                key = (a + za, e0 - 2, e1, e2, e)
                _acc(work, key, pmul(coeff, cf))
        elif e1 >= 2:
            for za, cf in _BSQ[1].items():
                key = (a + za, e0, e1 - 2, e2, e)
                _acc(work, key, pmul(coeff, cf))
        elif e2 >= 2:
            for za, cf in _BSQ[2].items():
                key = (a + za, e0, e1, e2 - 2, e)
                _acc(work, key, pmul(coeff, cf))
        elif e >= 3:
            # c^3 = -t*c^2 - 4
            _acc(work, (a, e0, e1, e2, e - 1), pmul(coeff, poly([0, -1])))
            _acc(work, (a, e0, e1, e2, e - 3), pscale(coeff, Fraction(-4)))
        else:
            _acc(out, m, coeff)
    result = tuple((m, c) for m, c in sorted(out.items()) if c)
    _reduce_cache[mon] = result
    return result


def _acc(d: dict, key: tuple, val: tuple):
    from .qpoly import padd

    cur = d.get(key)
    if cur is None:
        if val:
            d[key] = val
    else:
        s = padd(cur, val)
        if s:
            d[key] = s
        else:
            del d[key]


class SymElem:
    """Normal-form element of L with Q(t) coefficients on the 96 monomials."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = coeffs or {}

    @staticmethod
    def from_scalar(c) -> "SymElem":
        c = _as_rf(c)
        if c.is_zero():
            return SymElem()
        return SymElem({(0, 0, 0, 0, 0): c})

    @staticmethod
    def generator(index: int) -> "SymElem":
        mon = [0, 0, 0, 0, 0]
        mon[index] = 1
        return SymElem({tuple(mon): RF_ONE})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_scalar(self) -> bool:
        return all(m == (0, 0, 0, 0, 0) for m in self.coeffs)

    def scalar_part(self) -> RatFunc:
        return self.coeffs.get((0, 0, 0, 0, 0), RF_ZERO)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = _as_sym(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        other = _as_sym(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            cur = out.get(m)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return SymElem(out)

    __radd__ = __add__

    def __neg__(self):
        return SymElem({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = _as_sym(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_sym(other) - self

    def __mul__(self, other):
        other = _as_sym(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                c12 = c1 * c2
                raw = (
                    m1[0] + m2[0],
                    m1[1] + m2[1],
                    m1[2] + m2[2],
                    m1[3] + m2[3],
                    m1[4] + m2[4],
                )
                for nm, pc in _reduce_monomial(raw):
                    cur = out.get(nm)
                    term = c12 * RatFunc(pc, _normalized=True)
                    s = term if cur is None else cur + term
                    if s.is_zero():
                        out.pop(nm, None)
                    else:
                        out[nm] = s
        return SymElem(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = SYM_ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __truediv__(self, other):
        """Division by a scalar only; general inverses are .inverse()."""
        if isinstance(other, (int, Fraction, RatFunc)):
            c = _as_rf(other)
            if c.is_zero():
                raise ZeroDivisionError("division by zero scalar")
            inv = c.inverse()
            return SymElem({m: cf * inv for m, cf in self.coeffs.items()})
        if isinstance(other, SymElem) and other.is_scalar():
            return self / other.scalar_part()
        raise DivisionRequested(
            "general division of symbolic field elements; use .inverse()"
        )

    def inverse(self) -> "SymElem":
        if self.is_zero():
            raise NotInvertible("inverting 0")
        if self.is_scalar():
            return SymElem.from_scalar(self.scalar_part().inverse())
        inv = _tree_to_sym(_tower_inv(_sym_to_tree(self), 5))
        if not (inv * self == SYM_ONE):
            raise NotInvertible("inverse verification failed")  # internal error
        return inv

    def eval_t(self, t0) -> "SymElem":
        """Specialize t -> t0 (rational); coefficients become constants."""
        out = {}
        for m, c in self.coeffs.items():
            v = c.eval(Fraction(t0))
            if v != 0:
                out[m] = RatFunc.const(v)
        return SymElem(out)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = ("z12", "b0", "b1", "b2", "c0")
        parts = []
        for m, c in sorted(self.coeffs.items()):
            factors = [
                f"{n}^{e}" if e > 1 else n for n, e in zip(names, m) if e > 0
            ]
            head = "*".join(factors) if factors else "1"
            parts.append(f"({c})*{head}")
        return " + ".join(parts)


def _as_rf(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    return NotImplemented


def _as_sym(x):
    if isinstance(x, SymElem):
        return x
    rf = _as_rf(x)
    if rf is NotImplemented:
        return NotImplemented
    return SymElem.from_scalar(rf)


def normalize(expr) -> SymElem:
    """Coerce an int / Fraction / RatFunc / SymElem into normal form.

    Arithmetic on SymElem values normalizes incrementally, so expression
    trees built from the exported generators are already normal; this is
    the coercion entry point for scalars.
    """
    e = _as_sym(expr)
    if e is NotImplemented:
        raise TypeError(f"cannot normalize {type(expr).__name__} into the field")
    return e


# ---------------------------------------------------------------------------
# tower inversion
#
# Levels: 0 = Q(t); 1 adds z (deg 4); 2 adds b0 (deg 2); 3 adds b1 (deg 2);
# 4 adds b2 (deg 2); 5 adds c (deg 3).  A level-k element is a tuple of
# level-(k-1) elements of length _BOUNDS-degree of that level.
# ---------------------------------------------------------------------------

_LEVEL_DEG = {1: 4, 2: 2, 3: 2, 4: 2, 5: 3}


def _lzero(level: int):
    if level == 0:
        return RF_ZERO
    return tuple(_lzero(level - 1) for _ in range(_LEVEL_DEG[level]))


def _lone(level: int):
    if level == 0:
        return RF_ONE
    z = _lzero(level - 1)
    return (_lone(level - 1),) + tuple(z for _ in range(_LEVEL_DEG[level] - 1))


def _lis_zero(level: int, u) -> bool:
    if level == 0:
        return u.is_zero()
    return all(_lis_zero(level - 1, c) for c in u)


def _ladd(level: int, u, v):
    if level == 0:
        return u + v
    return tuple(_ladd(level - 1, a, b) for a, b in zip(u, v))


def _lneg(level: int, u):
    if level == 0:
        return -u
    return tuple(_lneg(level - 1, a) for a in u)


def _lmul(level: int, u, v):
    if level == 0:
        return u * v
    deg = _LEVEL_DEG[level]
    prod = [_lzero(level - 1) for _ in range(2 * deg - 1)]
    for i, a in enumerate(u):
        if _lis_zero(level - 1, a):
            continue
        for j, b in enumerate(v):
            if _lis_zero(level - 1, b):
                continue
            prod[i + j] = _ladd(level - 1, prod[i + j], _lmul(level - 1, a, b))
    # reduce modulo the level's defining polynomial
    red = _level_reduction(level)
    for k in range(2 * deg - 2, deg - 1, -1):
        c = prod[k]
        if _lis_zero(level - 1, c):
            continue
        prod[k] = _lzero(level - 1)
        for i, r in enumerate(red):
            if r is not None:
                prod[k - deg + i] = _ladd(
                    level - 1, prod[k - deg + i], _lmul(level - 1, c, r)
                )
    return tuple(prod[:deg])


_red_cache: dict = {}


def _level_reduction(level: int):
    """x^deg = sum red[i] x^i at this level (None entries are zero)."""
    cached = _red_cache.get(level)
    if cached is not None:
        return cached
    if level == 1:
        # z^4 = z^2 - 1
        red = (RatFunc.const(-1), RF_ZERO, RF_ONE, RF_ZERO)
    elif level in (2, 3, 4):
        i = level - 2
        const = _lzero(level - 1)
        # embed the zeta-expression for beta_i^2 at level-(level-1)
        expr = _BSQ[i]
        lvl1 = [RF_ZERO, RF_ZERO, RF_ZERO, RF_ZERO]
        for za, cf in expr.items():
            lvl1[za] = RatFunc(cf, _normalized=True)
        const = _lift(tuple(lvl1), 1, level - 1)
        red = (const, _lzero(level - 1))
    else:  # level 5: c^3 = -t c^2 - 4
        mt = _lift_scalar(-RF_T, 4)
        m4 = _lift_scalar(RatFunc.const(-4), 4)
        red = (m4, _lzero(4), mt)
    _red_cache[level] = red
    return red


def _lift_scalar(c: RatFunc, to_level: int):
    if to_level == 0:
        return c
    lower = _lift_scalar(c, to_level - 1)
    z = _lzero(to_level - 1)
    return (lower,) + tuple(z for _ in range(_LEVEL_DEG[to_level] - 1))


def _lift(u, from_level: int, to_level: int):
    if from_level == to_level:
        return u
    z = _lzero(from_level)
    lifted = (u,) + tuple(z for _ in range(_LEVEL_DEG[from_level + 1] - 1))
    return _lift(lifted, from_level + 1, to_level)


def _linv(level: int, u):
    if level == 0:
        return u.inverse()
    deg = _LEVEL_DEG[level]
    red = _level_reduction(level)
    # modulus as coefficient list over level-1: x^deg - sum red[i] x^i
    f = [
        _lneg(level - 1, r) if r is not None else _lzero(level - 1)
        for r in red
    ] + [_lone(level - 1)]
    a = list(u)
    # extended Euclid: s*a + t*f = gcd; track s only
    r0, r1 = f, a
    s0, s1 = [_lzero(level - 1)], [_lone(level - 1)]
    while _poly_deg(level - 1, r1) >= 0:
        q, rem = _poly_divmod(level - 1, r0, r1)
        r0, r1 = r1, rem
        s_new = _poly_sub(level - 1, s0, _poly_mul(level - 1, q, s1))
        s0, s1 = s1, s_new
    # r0 is the gcd: nonzero constant
    if _poly_deg(level - 1, r0) != 0:
        raise NotInvertible("zero divisor in tower inversion")  # cannot happen
    c_inv = _linv(level - 1, r0[0])
    inv = [_lmul(level - 1, c_inv, s) for s in s0]
    inv += [_lzero(level - 1)] * (deg - len(inv))
    return tuple(inv[:deg])


def _poly_deg(level: int, f: list) -> int:
    d = len(f) - 1
    while d >= 0 and _lis_zero(level, f[d]):
        d -= 1
    return d


def _poly_mul(level: int, f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [_lzero(level) for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if _lis_zero(level, a):
            continue
        for j, b in enumerate(g):
            out[i + j] = _ladd(level, out[i + j], _lmul(level, a, b))
    return out


def _poly_sub(level: int, f: list, g: list) -> list:
    n = max(len(f), len(g))
    z = _lzero(level)
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else z
        b = g[i] if i < len(g) else z
        out.append(_ladd(level, a, _lneg(level, b)))
    return out


def _poly_divmod(level: int, f: list, g: list):
    dg = _poly_deg(level, g)
    if dg < 0:
        raise ZeroDivisionError("division by zero polynomial in tower")
    lead_inv = _linv(level, g[dg])
    r = list(f)
    df = _poly_deg(level, r)
    q = [_lzero(level) for _ in range(max(df - dg + 1, 0))]
    while df >= dg:
        c = _lmul(level, r[df], lead_inv)
        q[df - dg] = c
        for i in range(dg + 1):
            r[df - dg + i] = _ladd(
                level, r[df - dg + i], _lneg(level, _lmul(level, c, g[i]))
            )
        df = _poly_deg(level, r)
    return q, r


def _sym_to_tree(e: SymElem):
    tree = [[[[[RF_ZERO for _ in range(4)] for _ in range(2)] for _ in range(2)]
             for _ in range(2)] for _ in range(3)]
    for (a, e0, e1, e2, ec), c in e.coeffs.items():
        tree[ec][e2][e1][e0][a] = c
    return tuple(
        tuple(
            tuple(tuple(tuple(l1) for l1 in l2) for l2 in l3) for l3 in l4
        )
        for l4 in tree
    )


def _tree_to_sym(tree) -> SymElem:
    out = {}
    for ec, l4 in enumerate(tree):
        for e2, l3 in enumerate(l4):
            for e1, l2 in enumerate(l3):
                for e0, l1 in enumerate(l2):
                    for a, c in enumerate(l1):
                        if not c.is_zero():
                            out[(a, e0, e1, e2, ec)] = c
    return SymElem(out)


def _tower_inv(tree, level: int):
    return _linv(level, tree)


# ---------------------------------------------------------------------------
# generators and derived constants
# ---------------------------------------------------------------------------

SYM_ZERO = SymElem()
SYM_ONE = SymElem.from_scalar(1)
SYM_T = SymElem.from_scalar(RF_T)

ZETA12 = SymElem.generator(0)
BETA0 = SymElem.generator(1)
BETA1 = SymElem.generator(2)
BETA2 = SymElem.generator(3)
C0 = SymElem.generator(4)

ZETA6 = ZETA12 * ZETA12
ZETA4 = ZETA12 ** 3
ZETA3 = ZETA12 ** 4

# delta = 4*zeta4*b0*b1*b2, a square root of -16(t^3+27)
DELTA = 4 * ZETA4 * BETA0 * BETA1 * BETA2


def _build_c1_c2():
    # the other two roots of x^3 + t x^2 + 4:
    #   c_{1,2} = (-t - c0 +- eps)/2 with eps = delta / (c0*(3c0 + 2t))
    eps = DELTA * (C0 * (3 * C0 + 2 * SYM_T)).inverse()
    c1 = (-SYM_T - C0 + eps) / 2
    c2 = (-SYM_T - C0 - eps) / 2
    return eps, c1, c2


EPSILON, C1, C2 = _build_c1_c2()
