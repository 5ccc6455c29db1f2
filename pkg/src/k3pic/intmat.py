"""Exact integer/rational matrix utilities.

Matrices are lists of lists of ints (or Fractions for the rational
solvers).  Everything here is exact; no floating point.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: list, B: list) -> list:
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    oi[j] += a * Bt[j]
    return out


def mat_vec(A: list, v: list) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A: list) -> list:
    return [list(col) for col in zip(*A)]


def mat_eq(A: list, B: list) -> bool:
    return A == B


def bareiss_det(M: list) -> int:
    """Fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [[int(x) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M: list, need_u: bool = True, need_v: bool = True):
    """U * M * V = D diagonal with d_1 | d_2 | ... (nonnegative).

    Returns (diag, U, V); U and/or V are None when not requested.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m) if need_u else None
    V = identity(n) if need_v else None
    t = 0
    while t < min(m, n):
        # locate a pivot: smallest nonzero absolute value in the submatrix
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best):
                    best = abs(a)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            if need_u:
                U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            if need_v:
                for row in V:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        for j in range(t, n):
                            A[i][j] -= q * A[t][j]
                        if need_u:
                            for j in range(m):
                                U[i][j] -= q * U[t][j]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        if need_u:
                            U[t], U[i] = U[i], U[t]
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for i in range(t, m):
                            A[i][j] -= q * A[i][t]
                        if need_v:
                            for i in range(n):
                                V[i][j] -= q * V[i][t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        if need_v:
                            for row in V:
                                row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if not dirty:
                break
        # divisibility: pivot must divide the rest of the submatrix
        d = A[t][t]
        fix = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % d:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            for j in range(t, n):
                A[t][j] += A[fix][j]
            if need_u:
                for j in range(m):
                    U[t][j] += U[fix][j]
            continue
        t += 1
    diag = []
    for i in range(min(m, n)):
        d = A[i][i]
        if d < 0:
            d = -d
            if need_u:
                for j in range(m):
                    U[i][j] = -U[i][j]
        diag.append(d)
    return diag, U, V


def kernel_basis(M: list) -> list:
    """Basis of the integer kernel {x : M x = 0}; saturated by construction."""
    m = len(M)
    n = len(M[0]) if m else 0
    if m == 0 or n == 0:
        return [list(row) for row in identity(n)]
    diag, _, V = smith_normal_form(M, need_u=False, need_v=True)
    rank = sum(1 for d in diag if d != 0)
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


def solve_rational(A: list, b: list):
    """One rational solution of A x = b, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


def rank_rational(A: list) -> int:
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] for row in A]
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        for i in range(r + 1, m):
            if M[i][c] != 0:
                f = M[i][c] / pv
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == m:
            break
    return r


def inverse_rational(A: list) -> list:
    """Exact inverse of a nonsingular integer/rational matrix."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pr is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[pr] = M[pr], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def signature_symmetric(G: list) -> tuple:
    """(positive, negative) inertia of a nondegenerate symmetric matrix,
    by rational congruence diagonalization."""
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    pos = neg = 0
    for k in range(n):
        # need a nonzero diagonal pivot; fix one up if necessary
        if A[k][k] == 0:
            swap = next(
                (i for i in range(k + 1, n) if A[i][i] != 0), None
            )
            if swap is not None:
                A[k], A[swap] = A[swap], A[k]
                for row in A:
                    row[k], row[swap] = row[swap], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    continue  # zero row: degenerate direction
                # row/col addition creates 2*A[k][j] on the diagonal
                for c in range(n):
                    A[k][c] += A[j][c]
                for r in range(n):
                    A[r][k] += A[r][j]
        pivot = A[k][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / pivot
                for c in range(k, n):
                    A[i][c] -= f * A[k][c]
                for r in range(k, n):
                    A[r][i] -= f * A[r][k]
    return pos, neg


# -- mod-p linear algebra ---------------------------------------------------


def nullspace_mod_p(M: list, p: int) -> list:
    """Basis of the right kernel of M over F_p (row vectors returned)."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[x % p for x in row] for row in M]
    pivots = {}
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if A[i][c] % p), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots[c] = r
        r += 1
        if r == m:
            break
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for c, row in pivots.items():
            v[c] = (-A[row][fc]) % p
        basis.append(v)
    return basis


def rank_mod_p(M: list, p: int) -> int:
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[x % p for x in row] for row in M]
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], p - 2, p)
        for i in range(r + 1, m):
            if A[i][c]:
                f = (A[i][c] * inv) % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def span_dim_mod_p(vectors: list, p: int) -> int:
    return rank_mod_p([list(v) for v in vectors], p)


def charpoly(M: list) -> list:
    """Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier
    recursion; exact over Fractions.  Returned low degree first."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]  # leading coefficient of x^n
    Mk = [[Fraction(0)] * n for _ in range(n)]
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        # Mk = A*(Mk + c_{k-1} I)
        B = [[Mk[i][j] + coeffs[-1] * I[i][j] for j in range(n)] for i in range(n)]
        Mk = [[sum(A[i][t] * B[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        c = -sum(Mk[i][i] for i in range(n)) / k
        coeffs.append(c)
    return list(reversed(coeffs))
