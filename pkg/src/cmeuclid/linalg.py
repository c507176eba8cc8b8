"""Exact integer/rational linear algebra on small matrices.

Everything here is dimension-agnostic but tuned for the 4x4 case: HNF for
module bookkeeping, Bareiss determinants, Fraction inverses, Gram-space LLL,
and a Fincke-Pohst enumerator that takes a rational center so cosets
xi + Z^n can be searched exactly.
"""

from __future__ import annotations

from fractions import Fraction


def mat_mul(A, B):
    n, m, p = len(A), len(B[0]), len(B)
    return [[sum(A[i][k] * B[k][j] for k in range(p)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][k] * v[k] for k in range(len(v))) for i in range(len(A))]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det_int(M) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(M)
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if A[i][i] == 0:
            piv = next((r for r in range(i + 1, n) if A[r][i] != 0), None)
            if piv is None:
                return 0
            A[i], A[piv] = A[piv], A[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                A[r][c] = (A[r][c] * A[i][i] - A[r][i] * A[i][c]) // prev
            A[r][i] = 0
        prev = A[i][i]
    return sign * A[n - 1][n - 1]


def det_frac(M) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            det = -det
        det *= A[i][i]
        for r in range(i + 1, n):
            f = A[r][i] / A[i][i]
            if f:
                for c in range(i, n):
                    A[r][c] -= f * A[i][c]
    return det


def hnf(rows) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows dropped, pivots positive."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list[int]] = []
    work = rows
    col = 0
    while col < n and work:
        pivots = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not pivots:
            col += 1
            continue
        # gcd elimination in this column
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            p = pivots[0]
            new_p = [p]
            for r in pivots[1:]:
                q = r[col] // p[col]
                r2 = [a - q * b for a, b in zip(r, p)]
                if r2[col] != 0:
                    new_p.append(r2)
                elif any(r2):
                    rest.append(r2)
            pivots = new_p
        piv = pivots[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        work = rest
        col += 1
    # reduce entries above each pivot, ascending so fixed columns stay fixed
    # (row i is zero in every earlier pivot column)
    for i in range(1, len(out)):
        p = next(j for j, v in enumerate(out[i]) if v)
        for k in range(i):
            q = out[k][p] // out[i][p]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], out[i])]
    return out


def mat_inv_frac(M) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i in range(n)]
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[i], A[piv] = A[piv], A[i]
        d = A[i][i]
        A[i] = [x / d for x in A[i]]
        for r in range(n):
            if r != i and A[r][i]:
                f = A[r][i]
                A[r] = [x - f * y for x, y in zip(A[r], A[i])]
    return [row[n:] for row in A]


def _gso_from_gram(G):
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    # <b_i, b_j*> computed recursively from the Gram matrix alone
    ip = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = Fraction(G[i][j])
            for k in range(j):
                s -= mu[j][k] * ip[i][k]
            ip[i][j] = s
            if j < i:
                mu[i][j] = s / B[j]
        B[i] = ip[i][i]
        if B[i] <= 0:
            raise ValueError("Gram matrix not positive definite")
    return mu, B


def lll_gram(G, delta=Fraction(3, 4)):
    """LLL-reduce a positive definite integer Gram matrix.

    Returns (G2, U) with G2 = U G U^T and U unimodular.
    """
    n = len(G)
    G = [[x for x in row] for row in G]
    U = identity(n)

    def size_reduce(k, j, mu):
        r = round(mu[k][j])
        if r:
            for c in range(n):
                G[k][c] -= r * G[j][c]
            for c in range(n):
                G[c][k] -= r * G[c][j]
            for c in range(n):
                U[k][c] -= r * U[j][c]

    k = 1
    while k < n:
        mu, B = _gso_from_gram(G)
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                size_reduce(k, j, mu)
                mu, B = _gso_from_gram(G)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            k = max(k - 1, 1)
    return G, U


_COMPLETION_CACHE: dict = {}


def _completion(G):
    # quadratic completion: Q(v) = sum_i q[i][i] (v_i + sum_{j>i} q[i][j] v_j)^2
    n = len(G)
    key = tuple(tuple(Fraction(x) for x in row) for row in G)
    hit = _COMPLETION_CACHE.get(key)
    if hit is not None:
        return hit
    q = [[Fraction(G[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for r in range(i + 1, n):
            for c in range(r, n):
                q[r][c] -= q[r][i] * q[i][c]
    if len(_COMPLETION_CACHE) > 64:
        _COMPLETION_CACHE.clear()
    _COMPLETION_CACHE[key] = q
    return q


def fincke_pohst(G, bound, center=None, limit=None):
    """All integer x with (x-c)^T G (x-c) <= bound, exact arithmetic.

    G must be positive definite (ints or Fractions). Enumerates each
    coordinate outward from the real center, so no floating point and no
    missed boundary cases. `limit` caps the result count (raises if hit).
    """
    n = len(G)
    if center is None:
        center = [Fraction(0)] * n
    center = [Fraction(c) for c in center]
    q = _completion(G)
    bound = Fraction(bound)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i, T):
        # T = remaining budget at level i
        if i < 0:
            out.append(tuple(x))
            if limit is not None and len(out) > limit:
                raise OverflowError("enumeration limit exceeded")
            return
        s = Fraction(0)
        for j in range(i + 1, n):
            s += q[i][j] * (x[j] - center[j])
        c = center[i] - s
        k0 = round(c)
        qi = q[i][i]
        # integer probe: qi (k - c)^2 <= T with c = a/b, qi = qn/qd,
        # T = Tn/Td becomes qn Td (k b - a)^2 <= Tn qd b^2
        a, b = c.numerator, c.denominator
        qn, qd = qi.numerator, qi.denominator
        Tn, Td = T.numerator, T.denominator
        lhs_mul = qn * Td
        rhs = Tn * qd * b * b

        def step(k):
            d = k * b - a
            used = lhs_mul * d * d
            if used > rhs:
                return False
            x[i] = k
            rec(i - 1, Fraction(rhs - used, Td * qd * b * b))
            return True

        k = k0
        while step(k):
            k += 1
        k = k0 - 1
        while step(k):
            k -= 1

    rec(n - 1, bound)
    return out
