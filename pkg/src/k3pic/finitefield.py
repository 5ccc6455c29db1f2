"""Finite fields F_{p^m} with a packed-integer element encoding.

An element c_0 + c_1*a + ... + c_{m-1}*a^{m-1} (a = class of x modulo
the defining polynomial) is encoded as the integer c_0 + c_1*p + ... +
c_{m-1}*p^{m-1}.  That makes the natural integer order a total order on
field elements, which the embedding machinery uses for deterministic
root choices.

For table-sized fields (q <= 2^20) multiplication and inversion go
through discrete-log tables; larger fields fall back to polynomial
arithmetic.
"""

from __future__ import annotations

from .errors import NotPrime, NoIrreducibleFound, ZeroPolynomial

_TABLE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_prime(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


class FieldDesc:
    """F_{p^m} given by p, m and a monic irreducible modulus over F_p.

    modulus is a coefficient tuple (c_0, ..., c_{m-1}, 1), low degree first.
    """

    def __init__(self, p: int, m: int, modulus: tuple):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self._red = tuple((-c) % p for c in modulus[:-1])  # x^m = sum _red[i] x^i
        self.zero = 0
        self.one = 1
        self._log = None
        self._exp = None
        self._neg = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding ------------------------------------------------------

    def encode(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + (c % self.p)
        return v

    def decode(self, e: int) -> tuple:
        cs = []
        for _ in range(self.m):
            e, r = divmod(e, self.p)
            cs.append(r)
        return tuple(cs)

    def from_int(self, n: int) -> int:
        return n % self.p

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        v, mult = 0, 1
        for _ in range(self.m):
            v += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return v

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._neg_direct(a)

    def _neg_direct(self, a: int) -> int:
        p = self.p
        v, mult = 0, 1
        for _ in range(self.m):
            v += ((-a) % p) * mult
            a //= p
            mult *= p
        return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_direct(a, b)

    def _mul_direct(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        fa, fb = self.decode(a), self.decode(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(fa):
            if x:
                for j, y in enumerate(fb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, r in enumerate(self._red):
                    if r:
                        prod[k - m + i] = (prod[k - m + i] + c * r) % p
        return self.encode(prod[:m])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting 0 in finite field")
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        n %= self.q - 1
        if n == 0:
            return 1
        acc = 1
        while n:
            if n & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            n >>= 1
        return acc

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("order of 0 undefined")
        n = self.q - 1
        order = n
        for d in _prime_factors(n):
            while order % d == 0 and self.pow(a, order // d) == 1:
                order //= d
        return order

    def elements(self):
        return range(self.q)

    # -- tables --------------------------------------------------------

    def _build_tables(self):
        q = self.q
        g = self._find_generator()
        exp = [1] * (2 * (q - 1))
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_direct(acc, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log
        # log[0] is junk; mul() never reads it for zero operands
        self._neg = [self._neg_direct(a) for a in range(q)]

    def _find_generator(self) -> int:
        n = self.q - 1
        facs = _prime_factors(n)
        for cand in range(2, self.q):
            if all(self.pow(cand, n // f) != 1 for f in facs):
                return cand
        raise NoIrreducibleFound("no multiplicative generator found")  # unreachable

    def __repr__(self):
        return f"F_{self.p}^{self.m}(modulus={self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldDesc)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))


def _prime_factors(n: int) -> list:
    facs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            facs.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        facs.append(n)
    return facs


def _poly_is_irreducible(p: int, coeffs: tuple) -> bool:
    """Rabin test for a monic polynomial over F_p (coeffs low-first, monic)."""
    m = len(coeffs) - 1
    if m == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False
    tmp = FieldDesc.__new__(FieldDesc)
    tmp.p = p
    tmp.m = m
    tmp.q = p**m
    tmp.modulus = coeffs
    tmp._red = tuple((-c) % p for c in coeffs[:-1])
    tmp._log = tmp._exp = tmp._neg = None
    # x^(p^d) mod f for d = 1..m via repeated Frobenius on the class of x
    x = p  # encoding of x
    frob = x
    for d in range(1, m):
        frob = tmp.pow(frob, p)
        if m % d == 0:
            # gcd(x^(p^d) - x, f) must be 1
            if _ff_poly_gcd_nontrivial(p, coeffs, frob, tmp):
                return False
    frob = tmp.pow(frob, p)  # now x^(p^m)
    return frob == x


def _ff_poly_gcd_nontrivial(p: int, f: tuple, elem: int, tmp: FieldDesc) -> bool:
    """True iff gcd(f, rep(elem) - x) is nonconstant over F_p."""
    g = list(tmp.decode(elem))
    g[1] = (g[1] - 1) % p
    while g and g[-1] == 0:
        g.pop()
    a = [c % p for c in f]
    b = g
    while b:
        # a mod b
        binv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = (a[-1] * binv) % p
            k = len(a) - len(b)
            for i, bc in enumerate(b):
                a[i + k] = (a[i + k] - c * bc) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) > 1


def ff_make(p: int, m: int) -> FieldDesc:
    """Construct F_{p^m} with the canonical (smallest) irreducible modulus.

    Candidate moduli x^m + c_{m-1}x^{m-1} + ... + c_0 are scanned in
    increasing order of the packed integer c_0 + c_1 p + ... .
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > 1 << 32:
        raise ValueError("field too large for exhaustive-search arithmetic")
    if m == 1:
        return FieldDesc(p, 1, (0, 1))
    for e in range(p**m):
        cs = []
        v = e
        for _ in range(m):
            v, r = divmod(v, p)
            cs.append(r)
        coeffs = tuple(cs) + (1,)
        if _poly_is_irreducible(p, coeffs):
            return FieldDesc(p, m, coeffs)
    raise NoIrreducibleFound(f"no irreducible of degree {m} over F_{p}")


def poly_roots(field: FieldDesc, coeffs) -> list:
    """All roots in the field, with multiplicity, by exhaustive scan.

    coeffs: polynomial over the field, low degree first, packed encoding.
    """
    cs = [c for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ZeroPolynomial("root-finding on the zero polynomial")
    roots = []
    for r in field.elements():
        # deflate repeatedly while r remains a root
        while True:
            acc = 0
            for c in reversed(cs):
                acc = field.add(field.mul(acc, r), c)
            if acc != 0 or len(cs) <= 1:
                break
            # synthetic division by (x - r)
            out = [0] * (len(cs) - 1)
            carry = cs[-1]
            for i in range(len(cs) - 2, -1, -1):
                out[i] = carry
                carry = field.add(cs[i], field.mul(carry, r))
            cs = out
            roots.append(r)
        if len(cs) <= 1:
            break
    return sorted(roots)
