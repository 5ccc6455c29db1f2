"""Exact arithmetic front end: Q(t), finite fields, the symbolic field L,
and embeddings of L into F_{p^m} at a chosen specialization t -> t0.

Re-exports the polynomial / finite-field / symbolic primitives so
downstream modules import from one place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadReduction, NoPrimeFound, SingularMember
from .finitefield import FieldDesc, ff_make, is_prime, next_prime, poly_roots
from .qpoly import RF_ONE, RF_T, RF_ZERO, RatFunc, poly
from .symfield import (
    BETA0,
    BETA1,
    BETA2,
    C0,
    C1,
    C2,
    DELTA,
    EPSILON,
    SYM_ONE,
    SYM_T,
    SYM_ZERO,
    SymElem,
    ZETA3,
    ZETA4,
    ZETA6,
    ZETA12,
    normalize,
)

__all__ = [
    "FieldDesc", "ff_make", "poly_roots", "is_prime", "next_prime",
    "RatFunc", "RF_ZERO", "RF_ONE", "RF_T", "poly",
    "SymElem", "normalize", "SYM_ZERO", "SYM_ONE", "SYM_T",
    "ZETA12", "ZETA6", "ZETA4", "ZETA3", "BETA0", "BETA1", "BETA2",
    "C0", "C1", "C2", "DELTA", "EPSILON",
    "Embedding", "sym_embed", "embedding_search", "good_primes",
]

# cyclotomic polynomial of order 12: x^4 - x^2 + 1
_PHI12 = (1, 0, -1, 0, 1)


@dataclass(frozen=True)
class Embedding:
    """Images of the five field generators in F_{p^m} at t = t0."""

    field: FieldDesc
    t0: Fraction
    zeta12: int
    beta: tuple  # images of beta0, beta1, beta2
    c0: int

    @property
    def t0_image(self) -> int:
        F = self.field
        num = Fraction(self.t0).numerator % F.p
        den = Fraction(self.t0).denominator % F.p
        if den == 0:
            raise BadReduction(f"t0 = {self.t0} has denominator divisible by {F.p}")
        return F.mul(F.from_int(num), F.inv(F.from_int(den)))

    def gen_image(self, index: int) -> int:
        if index == 0:
            return self.zeta12
        if index in (1, 2, 3):
            return self.beta[index - 1]
        return self.c0

    def assert_valid(self):
        F = self.field
        if F.order(self.zeta12) != 12:
            raise BadReduction("zeta12 image does not have order 12")
        t0 = self.t0_image
        z3 = F.pow(self.zeta12, 4)
        for i in range(3):
            lhs = F.mul(self.beta[i], self.beta[i])
            rhs = F.add(t0, F.mul(F.from_int(3), F.pow(z3, i)))
            if lhs != rhs:
                raise BadReduction(f"beta{i} image fails beta^2 = t0 + 3*zeta3^{i}")
        c = self.c0
        hval = F.add(
            F.add(F.pow(c, 3), F.mul(t0, F.mul(c, c))), F.from_int(4)
        )
        if hval != 0:
            raise BadReduction("c0 image is not a root of x^3 + t0*x^2 + 4")


def _frac_image(F: FieldDesc, x: Fraction) -> int:
    x = Fraction(x)
    den = x.denominator % F.p
    if den == 0:
        raise BadReduction(f"denominator of {x} vanishes mod {F.p}")
    return F.mul(F.from_int(x.numerator % F.p), F.inv(F.from_int(den)))


def _ratfunc_image(F: FieldDesc, r: RatFunc, t0img: int) -> int:
    den = 0
    for c in reversed(r.den):
        den = F.add(F.mul(den, t0img), _frac_image(F, c))
    if den == 0:
        raise BadReduction(f"denominator {r.den} vanishes at the specialization")
    num = 0
    for c in reversed(r.num):
        num = F.add(F.mul(num, t0img), _frac_image(F, c))
    return F.mul(num, F.inv(den))


def sym_embed(e: SymElem, emb: Embedding) -> int:
    """Ring homomorphism L -> F_{p^m}: t -> t0, generators -> their images."""
    F = emb.field
    t0img = emb.t0_image
    gens = (emb.zeta12, emb.beta[0], emb.beta[1], emb.beta[2], emb.c0)
    acc = 0
    for mon, coeff in e.coeffs.items():
        v = _ratfunc_image(F, coeff, t0img)
        for g, exp in zip(gens, mon):
            for _ in range(exp):
                v = F.mul(v, g)
        acc = F.add(acc, v)
    return acc


def good_primes(t0: Fraction, p_min: int, count: int = 1) -> list:
    """Primes of good reduction for the fiber at t0, smallest first.

    Skips 2 and 3 unconditionally, primes dividing the denominator of
    t0, and primes dividing the numerator of t0^3 + 27 (which covers the
    discriminant -16(t0^3+27) of x^3 + t0 x^2 + 4 as well).
    """
    t0 = Fraction(t0)
    disc = t0**3 + 27
    if disc == 0:
        raise SingularMember(f"t0 = {t0} gives a singular member (t0^3 = -27)")
    out = []
    p = max(p_min, 2)
    while len(out) < count:
        p = next_prime(p)
        if (
            p not in (2, 3)
            and t0.denominator % p != 0
            and disc.numerator % p != 0
        ):
            out.append(p)
        p += 1
    return out


def _try_embedding(t0: Fraction, p: int, m: int) -> Embedding | None:
    F = ff_make(p, m)
    if (F.q - 1) % 12 != 0:
        return None
    t0img = _frac_image(F, t0)
    # zeta12: smallest root of the order-12 cyclotomic polynomial
    phi_roots = poly_roots(F, [F.from_int(c % p) for c in _PHI12])
    if not phi_roots:
        return None
    z12 = phi_roots[0]
    z3 = F.pow(z12, 4)
    betas = []
    for i in range(3):
        rhs = F.add(t0img, F.mul(F.from_int(3), F.pow(z3, i)))
        roots = poly_roots(F, [F.neg(rhs), 0, 1])
        if not roots:
            return None
        betas.append(roots[0])
    hroots = poly_roots(F, [F.from_int(4), 0, t0img, 1])
    if not hroots:
        return None
    emb = Embedding(field=F, t0=t0, zeta12=z12, beta=tuple(betas), c0=hroots[0])
    emb.assert_valid()
    return emb


def embedding_search(t0, p_min: int, p_max: int = 100000) -> tuple:
    """Smallest good prime p >= p_min where all five generators land in
    F_{p^m} with m <= 2, with deterministic (smallest-element) root
    choices.  Returns (FieldDesc, Embedding)."""
    t0 = Fraction(t0)
    if t0**3 + 27 == 0:
        raise SingularMember(f"t0 = {t0} is a singular member of the family")
    p = p_min
    while p <= p_max:
        cands = good_primes(t0, p, count=1)
        q = cands[0]
        if q > p_max:
            break
        for m in (1, 2):
            emb = _try_embedding(t0, q, m)
            if emb is not None:
                return emb.field, emb
        p = q + 1
    raise NoPrimeFound(f"no usable prime in [{p_min}, {p_max}] for t0 = {t0}")
