"""Finite group plumbing: Cayley-table groups, closure enumeration,
subgroup lattices, abelian invariants and isomorphism testing.

Used to certify the abstract structure of the automorphism and Galois
groups and to drive the cohomology subgroup sweep.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import ClosureBudgetExceeded, StructureMismatch, TooLarge


class FiniteGroup:
    """A finite group as elements 0..n-1 with a multiplication table.

    Index 0 is always the identity.  Optional names give readable labels.
    """

    def __init__(self, table: list, names: list | None = None):
        self.table = [list(row) for row in table]
        self.n = len(table)
        self.names = names or [str(i) for i in range(self.n)]
        self._orders = None
        self._inverses = None

    @staticmethod
    def from_elements(elements: list, mul, identity) -> "FiniteGroup":
        """Build a table group from hashable elements and a product map."""
        elems = list(elements)
        if identity in elems:
            elems.remove(identity)
        elems = [identity] + elems
        index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        table = [[0] * n for _ in range(n)]
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i][j] = index[mul(a, b)]
        g = FiniteGroup(table, names=[repr(e) for e in elems])
        g.elements = elems
        return g

    def __len__(self):
        return self.n

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        if self._inverses is None:
            self._inverses = [0] * self.n
            for i in range(self.n):
                self._inverses[i] = self.table[i].index(0)
        return self._inverses[a]

    def elem_order(self, a: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.n
        if self._orders[a] == 0:
            x, k = a, 1
            while x != 0:
                x = self.table[x][a]
                k += 1
            self._orders[a] = k
        return self._orders[a]

    def order_profile(self) -> dict:
        prof: dict = {}
        for a in range(self.n):
            o = self.elem_order(a)
            prof[o] = prof.get(o, 0) + 1
        return prof

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.n)
            for b in range(a + 1, self.n)
        )

    def conjugacy_classes(self) -> list:
        seen = [False] * self.n
        classes = []
        for a in range(self.n):
            if seen[a]:
                continue
            cls = set()
            for g in range(self.n):
                x = self.table[self.table[g][a]][self.inverse(g)]
                cls.add(x)
            for x in cls:
                seen[x] = True
            classes.append(frozenset(cls))
        return classes

    def class_of(self, a: int) -> frozenset:
        return frozenset(
            self.table[self.table[g][a]][self.inverse(g)] for g in range(self.n)
        )

    def closure(self, gens) -> frozenset:
        seen = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def generating_set(self, subset=None) -> list:
        """Small (greedy) generating set of the subgroup given by subset."""
        if subset is None:
            subset = frozenset(range(self.n))
        rest = sorted(subset, key=self.elem_order, reverse=True)
        gens: list = []
        cur = frozenset({0})
        for a in rest:
            if a not in cur:
                gens.append(a)
                cur = self.closure(gens)
                if cur == subset:
                    break
        return gens

    def subgroups(self, cap: int = 10000) -> list:
        """All subgroups, as frozensets, by closing cyclic subgroups under joins."""
        cyclics = {self.closure([a]) for a in range(self.n)}
        subs = set(cyclics)
        subs.add(frozenset({0}))
        frontier = list(subs)
        while frontier:
            s = frontier.pop()
            for c in cyclics:
                if c <= s:
                    continue
                j = self.closure(set(s) | set(c))
                if j not in subs:
                    if len(subs) >= cap:
                        raise TooLarge(f"subgroup enumeration beyond cap {cap}")
                    subs.add(j)
                    frontier.append(j)
        return sorted(subs, key=lambda s: (len(s), sorted(s)))

    def is_normal(self, subset: frozenset) -> bool:
        for g in range(self.n):
            gi = self.inverse(g)
            for a in subset:
                if self.table[self.table[g][a]][gi] not in subset:
                    return False
        return True

    def normal_subgroups(self, cap: int = 10000) -> list:
        return [s for s in self.subgroups(cap) if self.is_normal(s)]

    def commutator_subgroup(self) -> frozenset:
        comms = set()
        for a in range(self.n):
            for b in range(self.n):
                c = self.table[
                    self.table[self.table[a][b]][self.inverse(a)]
                ][self.inverse(b)]
                comms.add(c)
        return self.closure(comms)

    def quotient(self, normal: frozenset) -> "FiniteGroup":
        cosets = []
        index = {}
        for a in range(self.n):
            if a in index:
                continue
            coset = frozenset(self.table[a][h] for h in normal)
            k = len(cosets)
            cosets.append(coset)
            for x in coset:
                index[x] = k
        # identity coset must sit at position 0
        e = index[0]
        if e != 0:
            cosets[0], cosets[e] = cosets[e], cosets[0]
            index = {x: (0 if k == e else e if k == 0 else k)
                     for x, k in index.items()}
        m = len(cosets)
        table = [[0] * m for _ in range(m)]
        reps = [min(c) for c in cosets]
        for i in range(m):
            for j in range(m):
                table[i][j] = index[self.table[reps[i]][reps[j]]]
        return FiniteGroup(table)

    def abelian_invariants(self) -> list:
        """Invariant factors d_1 | d_2 | ... for an abelian group, from
        the counts of elements killed by each prime power."""
        if not self.is_abelian():
            raise StructureMismatch("abelian_invariants needs an abelian group")
        n = self.n
        if n == 1:
            return []
        from math import gcd

        # prime-power exponent multiset per prime
        primes = set()
        m = n
        d = 2
        while d * d <= m:
            if m % d == 0:
                primes.add(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            primes.add(m)
        per_prime: dict = {}
        orders = [self.elem_order(a) for a in range(n)]
        for p in sorted(primes):
            # c_j = number of x with x^(p^j) = e  ->  exponent multiset
            exps = []
            j = 1
            prev = sum(1 for o in orders if pow(p, 0) % o == 0)
            prev = 1
            while True:
                pj = p**j
                cj = sum(1 for o in orders if pj % o == 0)
                # log_p(cj/prev) = number of cyclic p-factors with exponent >= j
                k = 0
                ratio = cj // prev
                while ratio > 1:
                    ratio //= p
                    k += 1
                if k == 0:
                    break
                exps.append(k)
                prev = cj
                j += 1
            # exps[j-1] = #factors with exponent >= j; convert to multiset
            factors = []
            for jj in range(len(exps), 0, -1):
                count = exps[jj - 1] - (exps[jj] if jj < len(exps) else 0)
                factors.extend([p**jj] * count)
            per_prime[p] = sorted(factors, reverse=True)
        k = max(len(v) for v in per_prime.values())
        inv = []
        for i in range(k):
            f = 1
            for p, v in per_prime.items():
                if i < len(v):
                    f *= v[i]
            inv.append(f)
        return sorted(inv)

    def abelianization_invariants(self) -> list:
        return self.quotient(self.commutator_subgroup()).abelian_invariants()


# -- isomorphism testing ----------------------------------------------------


def _fingerprints(G: FiniteGroup) -> list:
    classes = G.conjugacy_classes()
    cls_of = {}
    for c in classes:
        for x in c:
            cls_of[x] = len(c)
    return [(G.elem_order(a), cls_of[a]) for a in range(G.n)]


def find_isomorphism(G: FiniteGroup, H: FiniteGroup):
    """Generator-image backtracking; returns a full map list or None."""
    if G.n != H.n:
        return None
    if G.order_profile() != H.order_profile():
        return None
    fg = _fingerprints(G)
    fh = _fingerprints(H)
    if sorted(fg) != sorted(fh):
        return None
    gens = G.generating_set()
    cands = [[b for b in range(H.n) if fh[b] == fg[a]] for a in gens]

    def words_table(gens_imgs):
        """Extend gen images to a full map by BFS; None on inconsistency."""
        phi = {0: 0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g, img in zip(gens, gens_imgs):
                y = G.table[x][g]
                fy = H.table[phi[x]][img]
                if y in phi:
                    if phi[y] != fy:
                        return None
                else:
                    phi[y] = fy
                    frontier.append(y)
        if len(phi) != G.n or len(set(phi.values())) != H.n:
            return None
        # homomorphism check on all pairs
        for a in range(G.n):
            fa = phi[a]
            ta = G.table[a]
            tha = H.table[fa]
            for b in range(G.n):
                if phi[ta[b]] != tha[phi[b]]:
                    return None
        return [phi[a] for a in range(G.n)]

    def backtrack(i, chosen):
        if i == len(gens):
            return words_table(chosen)
        for b in cands[i]:
            res = backtrack(i + 1, chosen + [b])
            if res is not None:
                return res
        return None

    return backtrack(0, [])


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


# -- model groups -----------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def symmetric_group_3() -> FiniteGroup:
    perms = [p for p in permutations(range(3))]
    perms.sort(key=lambda p: p != (0, 1, 2))

    def mul(a, b):  # (a*b)(x) = a(b(x))
        return tuple(a[b[i]] for i in range(3))

    return FiniteGroup.from_elements(perms, mul, (0, 1, 2))


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: elements (r, s) with s in {0,1}."""
    elems = [(r, s) for s in (0, 1) for r in range(n)]

    def mul(a, b):
        r1, s1 = a
        r2, s2 = b
        # (r1,s1)*(r2,s2): reflections conjugate rotations to inverses
        if s1 == 0:
            return ((r1 + r2) % n, s2)
        return ((r1 - r2) % n, 1 - s2)

    return FiniteGroup.from_elements(elems, mul, (0, 0))


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    sizes = [g.n for g in groups]
    total = 1
    for s in sizes:
        total *= s

    def unpack(i):
        out = []
        for s in reversed(sizes):
            i, r = divmod(i, s)
            out.append(r)
        return list(reversed(out))

    def pack(parts):
        i = 0
        for s, p in zip(sizes, parts):
            i = i * s + p
        return i

    table = [[0] * total for _ in range(total)]
    for i in range(total):
        pi = unpack(i)
        for j in range(total):
            pj = unpack(j)
            table[i][j] = pack([g.table[a][b] for g, a, b in zip(groups, pi, pj)])
    return FiniteGroup(table)


# -- matrix group closure ---------------------------------------------------


def matrix_group_closure(generators: list, names: list | None = None,
                         cap: int = 100000):
    """BFS closure of integer matrix generators.

    Returns (elements, words): elements as int numpy arrays, words as
    strings over the generator names.  Identity is first.
    """
    if not generators:
        raise ValueError("need at least one generator")
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    n = gens[0].shape[0]
    if names is None:
        names = [f"g{i}" for i in range(len(gens))]
    ident = np.eye(n, dtype=np.int64)
    elements = [ident]
    words = [""]
    seen = {ident.tobytes(): 0}
    head = 0
    while head < len(elements):
        cur = elements[head]
        curword = words[head]
        for g, name in zip(gens, names):
            new = g @ cur
            key = new.tobytes()
            if key not in seen:
                if len(elements) >= cap:
                    raise ClosureBudgetExceeded(
                        f"matrix group closure exceeded cap {cap}"
                    )
                seen[key] = len(elements)
                elements.append(new)
                words.append(name if not curword else f"{name}*{curword}")
        head += 1
    return elements, words


def matrix_group_to_table(elements: list) -> FiniteGroup:
    """Cayley table of a closed set of integer matrices (identity first)."""
    index = {e.tobytes(): i for i, e in enumerate(elements)}
    n = len(elements)
    table = [[0] * n for _ in range(n)]
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i][j] = index[(a @ b).tobytes()]
    return FiniteGroup(table)
