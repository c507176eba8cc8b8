"""Integral ideals of quartic CM fields as HNF lattices.

An ideal is stored as a 4x4 upper triangular integer matrix whose rows are
coordinates (over the field's integral basis) of a Z-basis.  Rational primes
are factored by decomposing the 4-dimensional F_p-algebra O/p: the
nilradical is ker(Frobenius^2) (Frobenius is F_p-linear and p^2 >= 4 kills
every nilpotent in dimension 4), the semisimple quotient is split into
fields with minimal-polynomial idempotents, and each factorization is
checked against prod P_i^{e_i} = (p) before being returned.

Principality tests are rigorous in both directions: a generator of I can be
scaled by units of the real quadratic subfield into T2 <= 2 sqrt(N(I)) *
(eps + 1/eps), so an exhaustive Fincke-Pohst enumeration below that bound
either finds a generator or proves there is none.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .arith import factorize
from .intervals import Iv
from .linalg import fincke_pohst, hnf
from .quadratic import fundamental_unit

__all__ = ["Ideal", "rational_ideal", "module_from_rows",
           "prime_ideals_above", "is_principal", "ideals_of_norm",
           "unit_images_mod", "residue_search"]


# -- linear algebra over F_p -------------------------------------------------

def _rref_modp(rows, p):
    m = [[x % p for x in r] for r in rows]
    cols = len(m[0]) if m else 0
    piv = []
    r = 0
    for c in range(cols):
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                t = m[i][c]
                m[i] = [(a - t * b) % p for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    return m[:r], piv


def _nullspace_modp(mat, p):
    """Right kernel of mat over F_p."""
    rr, piv = _rref_modp(mat, p)
    cols = len(mat[0])
    free = [c for c in range(cols) if c not in piv]
    out = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-rr[i][fc]) % p
        out.append(v)
    return out


def _solve_modp(mat_cols, target, p):
    """x with sum x_i * mat_cols[i] = target over F_p, or None."""
    n = len(mat_cols)
    rows = len(target)
    aug = [[mat_cols[j][i] % p for j in range(n)] + [target[i] % p]
           for i in range(rows)]
    rr, piv = _rref_modp(aug, p)
    x = [0] * n
    for i, pc in enumerate(piv):
        if pc == n:
            return None
        x[pc] = rr[i][n]
    for i in range(len(rr)):
        s = sum(rr[i][j] * x[j] for j in range(n)) % p
        if s != rr[i][n] % p:
            return None
    return x


# -- polynomials over F_p (coefficient lists, low degree first) --------------

def _pstrip(f, p):
    f = [c % p for c in f]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f or [0]


def _pmul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _pstrip(out, p)


def _pdivmod(f, g, p):
    g = _pstrip(g, p)
    rem = [c % p for c in f]
    q = [0] * max(1, len(rem) - len(g) + 1)
    inv = pow(g[-1], p - 2, p)
    while len(rem) >= len(g) and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        c = rem[-1] * inv % p
        sh = len(rem) - len(g)
        q[sh] = c
        for i, b in enumerate(g):
            rem[sh + i] = (rem[sh + i] - c * b) % p
        rem.pop()
    return _pstrip(q, p), _pstrip(rem, p)


def _pmod(f, g, p):
    return _pdivmod(f, g, p)[1]


def _pdiv_exact(f, g, p):
    q, r = _pdivmod(f, g, p)
    assert r == [0]
    return q


def _pgcd(f, g, p):
    f, g = _pstrip(f, p), _pstrip(g, p)
    while g != [0]:
        f, g = g, _pmod(f, g, p)
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def _pxgcd(f, g, p):
    """(d, u) with d = gcd(f, g) monic and u*f = d mod g."""
    r0, r1 = _pstrip(f, p), _pstrip(g, p)
    s0, s1 = [1], [0]
    while r1 != [0]:
        q, rem = _pdivmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return [c * inv % p for c in r0], [c * inv % p for c in s0]


def _psub(f, g, p):
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    return _pstrip([(a - b) % p for a, b in zip(f, g)], p)


def _ppow_poly(e, h, modf, p):
    out = [1]
    base = _pmod(h, modf, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), modf, p)
        base = _pmod(_pmul(base, base, p), modf, p)
        e >>= 1
    return out


def _factor_squarefree_modp(f, p, rng):
    """Irreducible factors of a squarefree monic f over F_p (deg <= 4)."""
    f = _pstrip(f, p)
    if len(f) - 1 <= 1:
        return [f]
    if p < 50:
        # trial division by all monic polynomials of ascending degree
        out = []
        g = f
        d = 1
        while 2 * d <= len(g) - 1:
            for code in range(p ** d):
                cand = []
                t = code
                for _ in range(d):
                    cand.append(t % p)
                    t //= p
                cand.append(1)
                while len(g) - 1 >= 2 * d and _pmod(g, cand, p) == [0]:
                    out.append(cand)
                    g = _pdiv_exact(g, cand, p)
                if len(g) - 1 < 2 * d:
                    break
            d += 1
        if len(g) > 1:
            out.append(g)
        return out
    # p odd, larger: strip roots, then handle a residual quartic
    out = []
    g = f
    for r in range(p):
        while len(g) > 1 and sum(c * pow(r, i, p) for i, c in enumerate(g)) % p == 0:
            out.append([(-r) % p, 1])
            q = list(g)
            for i in range(len(q) - 2, -1, -1):
                q[i] = (q[i] + q[i + 1] * r) % p
            g = _pstrip(q[1:], p)
        if len(g) == 1:
            break
    deg = len(g) - 1
    if deg in (2, 3):
        out.append(g)  # rootless degree <= 3 is irreducible
    elif deg == 4:
        d = _pgcd(_psub(_ppow_poly(p * p, [0, 1], g, p), [0, 1], p), g, p)
        if len(d) == 1:
            out.append(g)  # irreducible quartic
        else:
            # rootless with all roots in F_{p^2}: two irreducible quadratics
            while True:
                h = [rng.randrange(p) for _ in range(4)] + [1]
                w = _psub(_ppow_poly((p * p - 1) // 2, h, g, p), [1], p)
                cand = _pgcd(w, g, p)
                if 0 < len(cand) - 1 < 4:
                    out.append(cand)
                    out.append(_pdiv_exact(g, cand, p))
                    break
    return out


# -- the F_p algebra O/p ------------------------------------------------------

def _field_one(K):
    if hasattr(K, "from_rational"):
        return K.from_rational(1)
    return K.element(1, 0, 0, 0)


class _ModpAlgebra:
    def __init__(self, K, p):
        self.p = p
        tab = K.mult_table()
        self.tab = [[[t % p for t in tab[i][j]] for j in range(4)]
                    for i in range(4)]
        c = K.to_coords(_field_one(K))
        assert all(x.denominator == 1 for x in c)
        self.one = [int(x) % p for x in c]

    def mul(self, u, v):
        p = self.p
        out = [0] * 4
        for i in range(4):
            if u[i]:
                for j in range(4):
                    if v[j]:
                        c = u[i] * v[j]
                        t = self.tab[i][j]
                        for k in range(4):
                            out[k] = (out[k] + c * t[k]) % p
        return out

    def pow(self, u, e):
        out = list(self.one)
        base = list(u)
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out


# -- ideals -------------------------------------------------------------------

class Ideal:
    __slots__ = ("K", "hnf")

    def __init__(self, K, rows):
        self.K = K
        H = hnf(rows)
        assert len(H) == 4, "not a full-rank lattice"
        self.hnf = H

    def norm(self) -> int:
        n = 1
        for r in self.hnf:
            n *= next(x for x in r if x)
        return n

    def contains(self, coords) -> bool:
        c = [Fraction(x) for x in coords]
        if any(x.denominator != 1 for x in c):
            return False
        c = [int(x) for x in c]
        # upper triangular rows: column i is settled by row i alone
        for i in range(4):
            if c[i] == 0:
                continue
            r = self.hnf[i]
            if c[i] % r[i]:
                return False
            q = c[i] // r[i]
            c = [a - q * b for a, b in zip(c, r)]
        return all(x == 0 for x in c)

    def reduce(self, coords) -> tuple:
        """Canonical residue mod the ideal: 0 <= c_i < hnf[i][i]."""
        c = [Fraction(x) for x in coords]
        if any(x.denominator != 1 for x in c):
            raise ValueError("integral coordinates required")
        c = [int(x) for x in c]
        for i in range(4):
            q = c[i] // self.hnf[i][i]
            if q:
                c = [a - q * b for a, b in zip(c, self.hnf[i])]
        return tuple(c)

    def mul(self, other: "Ideal") -> "Ideal":
        K = self.K
        rows = []
        for a in self.hnf:
            ea = K.from_coords([Fraction(x) for x in a])
            for b in other.hnf:
                eb = K.from_coords([Fraction(x) for x in b])
                c = K.to_coords(K.mul(ea, eb))
                assert all(x.denominator == 1 for x in c)
                rows.append([int(x) for x in c])
        return Ideal(K, rows)

    def pow(self, e: int) -> "Ideal":
        out = rational_ideal(self.K, 1)
        for _ in range(e):
            out = out.mul(self)
        return out

    def conj(self) -> "Ideal":
        K = self.K
        rows = []
        for a in self.hnf:
            c = K.to_coords(K.cm_conj(K.from_coords([Fraction(x) for x in a])))
            assert all(x.denominator == 1 for x in c)
            rows.append([int(x) for x in c])
        return Ideal(K, rows)

    def t2_gram(self):
        G = self.K.t2_gram()
        H = self.hnf
        return [[sum(H[i][a] * G[a][b] * H[j][b] for a in range(4) for b in range(4))
                 for j in range(4)] for i in range(4)]

    def residue_map_deg1(self, p: int):
        """For a degree-1 prime over p: images in F_p of the basis elements."""
        one = _ModpAlgebra(self.K, p).one
        out = []
        for j in range(4):
            for c in range(p):
                v = [0] * 4
                v[j] = 1
                if self.contains([a - c * b for a, b in zip(v, one)]):
                    out.append(c)
                    break
            else:
                raise ValueError("not a degree-1 prime")
        return out

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.K is other.K and self.hnf == other.hnf

    def __hash__(self):
        return hash((id(self.K), tuple(map(tuple, self.hnf))))

    def __repr__(self):
        return f"Ideal({self.K!r}, N={self.norm()})"


def rational_ideal(K, n: int) -> Ideal:
    n = abs(n)
    return Ideal(K, [[n if i == j else 0 for j in range(4)] for i in range(4)])


def module_from_rows(K, rows) -> Ideal:
    return Ideal(K, rows)


def prime_ideals_above(K, p: int):
    """Factor (p) in O_K; returns [(Ideal, e, f), ...], verified."""
    key = (repr(K), p)
    if key in _decomp_cache:
        return _decomp_cache[key]
    A = _ModpAlgebra(K, p)
    # nilradical = ker(Frob^2); Frobenius is F_p-linear
    frob2 = []
    for j in range(4):
        v = [0] * 4
        v[j] = 1
        frob2.append(A.pow(v, p * p))
    nil = _nullspace_modp([[frob2[j][i] for j in range(4)] for i in range(4)], p)
    nilmat, nilpiv = _rref_modp(nil, p) if nil else ([], [])
    # complement coordinates span the semisimple quotient A/nil
    ssbasis = []
    for c in range(4):
        if c not in nilpiv:
            v = [0] * 4
            v[c] = 1
            ssbasis.append(v)
    ssdim = len(ssbasis)

    def reduce_ss(v):
        """ssbasis coords of v modulo the nilradical"""
        cols = [list(b) for b in ssbasis] + [list(b) for b in nilmat]
        x = _solve_modp(cols, v, p)
        assert x is not None
        return x[:ssdim]

    def ss_to_a(v):
        out = [0] * 4
        for coef, sb in zip(v, ssbasis):
            for i in range(4):
                out[i] = (out[i] + coef * sb[i]) % p
        return out

    rng = random.Random(repr((p, repr(K), 0xA5C3)))

    def split_fields(basis, ident):
        """basis: rows (ssbasis coords) spanning a unital subalgebra of the
        semisimple quotient; ident: its identity in basis coords.  Returns
        the field-factor bases (ssbasis coords)."""
        k = len(basis)
        if k == 1:
            return [basis]

        def sub_lift(v):
            ss = [0] * ssdim
            for coef, b in zip(v, basis):
                for i in range(ssdim):
                    ss[i] = (ss[i] + coef * b[i]) % p
            return ss

        def mul_in(u, v):
            w = reduce_ss(A.mul(ss_to_a(sub_lift(u)), ss_to_a(sub_lift(v))))
            x = _solve_modp([list(b) for b in basis], w, p)
            assert x is not None
            return x

        def minpoly(a):
            pows = [list(ident)]
            cur = list(ident)
            for _ in range(k):
                cur = mul_in(cur, a)
                pows.append(cur)
            for d in range(1, k + 1):
                sol = _solve_modp([list(pows[i]) for i in range(d)], pows[d], p)
                if sol is not None:
                    return _pstrip([(-c) % p for c in sol] + [1], p)
            raise AssertionError

        def split_by(a, m, fac):
            out = []
            for fi in fac:
                mi = _pdiv_exact(m, fi, p)
                _, u = _pxgcd(mi, fi, p)
                epoly = _pmod(_pmul(mi, u, p), m, p)
                acc = list(ident)
                e_i = [0] * k
                for c in epoly:
                    if c:
                        e_i = [(r + c * x) % p for r, x in zip(e_i, acc)]
                    acc = mul_in(acc, a)
                rows = [mul_in(e_i, [1 if i == j else 0 for i in range(k)])
                        for j in range(k)]
                rr, _ = _rref_modp(rows, p)
                piece = [sub_lift(r) for r in rr]
                sub_ident = _solve_modp([list(r) for r in piece],
                                        sub_lift(e_i), p)
                assert sub_ident is not None
                out.extend(split_fields(piece, sub_ident))
            return out

        tries = [[1 if i == j else 0 for i in range(k)] for j in range(k)]
        for _ in range(60):
            for a in tries:
                m = minpoly(a)
                fac = _factor_squarefree_modp(m, p, rng)
                if len(fac) > 1:
                    return split_by(a, m, fac)
                if len(m) - 1 == k:
                    return [basis]  # irreducible full-degree minpoly: a field
            tries = [[rng.randrange(p) for _ in range(k)] for _ in range(4)]
        raise AssertionError("field splitting did not terminate")

    top = [[1 if i == j else 0 for i in range(ssdim)] for j in range(ssdim)]
    top_ident = _solve_modp(top, reduce_ss(A.one), p) if ssdim else None
    fields = split_fields(top, top_ident) if ssdim else []

    result = []
    for piece in fields:
        fdeg = len(piece)
        # maximal ideal: (p) + nilradical + every other field factor
        rows = [[p if i == j else 0 for j in range(4)] for i in range(4)]
        for v in nilmat:
            rows.append([x % p for x in v])
        for other in fields:
            if other is piece:
                continue
            for v in other:
                rows.append(ss_to_a(v))
        P = Ideal(K, rows)
        assert P.norm() == p ** fdeg
        result.append([P, 0, fdeg])

    # ramification indices via valuations, then verify the factorization
    target = rational_ideal(K, p)
    for ent in result:
        P = ent[0]
        e = 1
        Pk = P
        while True:
            Pk = Pk.mul(P)
            if all(Pk.contains(r) for r in target.hnf):
                e += 1
            else:
                break
        ent[1] = e
    assert sum(e * f for _, e, f in result) == 4, (p, result)
    prod = rational_ideal(K, 1)
    for P, e, _ in result:
        prod = prod.mul(P.pow(e))
    assert prod.hnf == target.hnf, f"decomposition of {p} failed verification"
    out = [(P, e, f) for P, e, f in result]
    _decomp_cache[key] = out
    return out


_decomp_cache: dict = {}


# -- principality --------------------------------------------------------------

def _sqrt_upper(n: int) -> Fraction:
    return Iv.from_int(n).sqrt(64).hi()


def _unit_value_upper(d: int) -> Fraction:
    """Rational upper bound for the fundamental unit of Q(sqrt d) as a real."""
    u = fundamental_unit(d)
    s_hi = Iv.from_int(d).sqrt(96).hi()
    val = (Fraction(abs(u.x)) + Fraction(abs(u.y)) * s_hi) / 2
    return val if val > 1 else 1 / val


def is_principal(I: Ideal):
    """(True, generator coords) or (False, None), by exhaustive search.

    Any generator can be scaled by real-subfield units into the ellipsoid
    T2(x) <= 2 sqrt(N) (eps + 1/eps); an empty search there is a proof of
    non-principality.
    """
    K = I.K
    N = I.norm()
    eps = _unit_value_upper(K.r3)
    B = int(2 * _sqrt_upper(N) * (eps + 1)) + 1
    G = I.t2_gram()
    H = I.hnf
    for v in fincke_pohst(G, B):
        if not any(v):
            continue
        coords = [sum(v[i] * H[i][j] for i in range(4)) for j in range(4)]
        if K.norm(K.from_coords(coords)) == N:
            return True, coords
    return False, None


# -- residue classes ------------------------------------------------------------

def ideals_of_norm(K, n: int) -> list[Ideal]:
    """All integral ideals of norm n, from the factorizations of (p)."""
    if n < 1:
        raise ValueError("norm must be positive")
    out = [rational_ideal(K, 1)]
    for p, e in sorted(factorize(n).items()):
        primes = prime_ideals_above(K, p)
        vecs = []

        def rec(i, rem, cur):
            if i == len(primes):
                if rem == 0:
                    vecs.append(tuple(cur))
                return
            f = primes[i][2]
            for a in range(rem // f + 1):
                rec(i + 1, rem - a * f, cur + [a])

        rec(0, e, [])
        if not vecs:
            return []
        layer = []
        for v in vecs:
            J = rational_ideal(K, 1)
            for (P, _, _), a in zip(primes, v):
                for _ in range(a):
                    J = J.mul(P)
            layer.append(J)
        out = [a.mul(b) for a in out for b in layer]
    assert all(J.norm() == n for J in out)
    assert len(set(out)) == len(out)
    return out


def unit_images_mod(K, I: Ideal) -> dict:
    """One unit per residue class of the image of O_K^* in O/I.

    Closure under multiplication by the torsion generator and the
    infinite-order generator reaches the whole image: in the finite
    quotient, inverses are positive powers.
    """
    from .units import unit_data
    ud = unit_data(K)
    eta = ud.sqrt_witness if ud.q == 2 else ud.eps_elem
    one = _field_one(K)
    start = I.reduce(K.to_coords(one))
    seen = {start: one}
    frontier = [(start, one)]
    while frontier:
        _, elt = frontier.pop()
        for g in (ud.generator, eta):
            ne = K.mul(elt, g)
            nr = I.reduce(K.to_coords(ne))
            if nr not in seen:
                seen[nr] = ne
                frontier.append((nr, ne))
    return seen


def residue_search(K, modulus: Ideal, cls, norm_bound: int, parity: str = "any"):
    """Elements x with x = cls mod modulus and 0 < |N(x)| < norm_bound.

    Complete up to units congruent to 1: any y in the class with
    |N(y)| = nn generates an ideal of norm nn, is a unit multiple of that
    ideal's enumerated generator, and swapping the unit for its residue
    class representative keeps the congruence. So the returned list is
    empty iff the class contains no such element at all, and every entry
    is an exact witness. parity="odd" skips even norms (the caller must
    separately know every element of the class has odd norm for emptiness
    to mean anything there). Returns (element, norm) pairs, smallest
    norm first.
    """
    if parity not in ("any", "odd"):
        raise ValueError(f"unknown parity filter: {parity}")
    ccoords = K.to_coords(cls)
    if any(Fraction(x).denominator != 1 for x in ccoords):
        raise ValueError("class representative must be integral")
    target = modulus.reduce(ccoords)
    units = unit_images_mod(K, modulus)
    found = {}
    for nn in range(1, norm_bound):
        if parity == "odd" and nn % 2 == 0:
            continue
        for J in ideals_of_norm(K, nn):
            ok, g = is_principal(J)
            if not ok:
                continue
            ge = K.from_coords([Fraction(v) for v in g])
            for u in units.values():
                x = K.mul(u, ge)
                if modulus.reduce(K.to_coords(x)) == target:
                    found[x] = nn
    return sorted(found.items(), key=lambda kv: (kv[1], kv[0]))
