"""Univariate polynomials over Q and the rational function field Q(t).

Polynomials are immutable tuples of Fractions, low degree first, no
trailing zeros.  RatFunc keeps numerator/denominator coprime with a
monic denominator, so equality is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

ZERO = Fraction(0)
ONE = Fraction(1)


def poly(coeffs: Iterable) -> tuple:
    """Build a normalized coefficient tuple (strip trailing zeros)."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


P_ZERO = poly([])
P_ONE = poly([1])
P_T = poly([0, 1])


def pdeg(f: tuple) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def padd(f: tuple, g: tuple) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    cs = list(f)
    for i, c in enumerate(g):
        cs[i] += c
    return poly(cs)


def pneg(f: tuple) -> tuple:
    return tuple(-c for c in f)


def psub(f: tuple, g: tuple) -> tuple:
    return padd(f, pneg(g))


def pmul(f: tuple, g: tuple) -> tuple:
    if not f or not g:
        return P_ZERO
    cs = [ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            cs[i + j] += a * b
    return poly(cs)


def pscale(f: tuple, c: Fraction) -> tuple:
    if c == 0:
        return P_ZERO
    return tuple(a * c for a in f)


def pdivmod(f: tuple, g: tuple) -> tuple:
    """Euclidean division; g must be nonzero."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    glead = g[-1]
    while len(r) >= len(g):
        c = r[-1] / glead
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] -= c * b
        while r and r[-1] == 0:
            r.pop()
    return poly(q), poly(r)


def pgcd(f: tuple, g: tuple) -> tuple:
    """Monic gcd."""
    while g:
        f, g = g, pdivmod(f, g)[1]
    if not f:
        return P_ZERO
    return pscale(f, 1 / f[-1])


def peval(f: tuple, x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(f):
        acc = acc * x + c
    return acc


def pstr(f: tuple, var: str = "t") -> str:
    if not f:
        return "0"
    parts = []
    for i, c in enumerate(f):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*{var}" if c != 1 else var)
        else:
            parts.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
    return " + ".join(parts).replace("+ -", "- ")


class RatFunc:
    """Element of Q(t): num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE, _normalized=False):
        if not isinstance(num, tuple):
            num = poly([num]) if not isinstance(num, (list,)) else poly(num)
        if not isinstance(den, tuple):
            den = poly([den]) if not isinstance(den, (list,)) else poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(t)")
        if not _normalized:
            if num:
                g = pgcd(num, den)
                if pdeg(g) > 0:
                    num = pdivmod(num, g)[0]
                    den = pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = pscale(num, 1 / lead)
                    den = pscale(den, 1 / lead)
            else:
                den = P_ONE
        self.num = num
        self.den = den

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(poly([c]), P_ONE, _normalized=True)

    @staticmethod
    def t() -> "RatFunc":
        return RatFunc(P_T, P_ONE, _normalized=True)

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == P_ONE and self.den == P_ONE

    def is_poly(self) -> bool:
        return self.den == P_ONE

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(padd(self.num, other.num), self.den)
        return RatFunc(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_ratfunc(other) - self

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == P_ONE and other.den == P_ONE:
            return RatFunc(pmul(self.num, other.num), P_ONE, _normalized=True)
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(pmul(self.num, other.den), pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverting 0 in Q(t)")
        return RatFunc(self.den, self.num)

    def eval(self, t0: Fraction) -> Fraction:
        """Evaluate at a rational point; raises ZeroDivisionError on a pole."""
        d = peval(self.den, Fraction(t0))
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at t={t0}")
        return peval(self.num, Fraction(t0)) / d

    def __repr__(self):
        if self.den == P_ONE:
            return pstr(self.num)
        return f"({pstr(self.num)})/({pstr(self.den)})"

    def to_string(self) -> str:
        return repr(self)


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    return NotImplemented


RF_ZERO = RatFunc.const(0)
RF_ONE = RatFunc.const(1)
RF_T = RatFunc.t()
