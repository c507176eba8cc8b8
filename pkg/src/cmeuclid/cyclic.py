"""Cyclic quartic CM fields.

There are exactly seven totally imaginary cyclic quartic fields with class
number one; their conductors are 5, 13, 29, 37, 53, 61 (primes = 5 mod 8)
and 16.  For a prime conductor p the field is the degree-4 subfield of
Q(zeta_p) and the four Gaussian periods form an integral basis.  For
conductor 16 the field is Q(theta) with theta^4 + 4 theta^2 + 2 = 0 and
the power basis is integral (the polynomial discriminant 2048 equals the
field discriminant).

Elements are 4-tuples of Fractions over the integral basis.  The exposed
interface matches BiquadField so minima/covering code is field-agnostic:
mul, trace, cm_conj, xxbar -> (a, b) with x*conj(x) = a + b*sqrt(r3),
norm = a^2 - r3*b^2, gram_ab, t2_gram, basis_embeddings.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .arith import factorize, is_prime
from .intervals import Iv, cos2pi, sin2pi
from .linalg import det_int

Vec = tuple[Fraction, Fraction, Fraction, Fraction]

CYCLIC_CM_CONDUCTORS = (5, 13, 16, 29, 37, 53, 61)


def _primitive_root(p: int) -> int:
    fac = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise AssertionError(p)


class CyclicField:
    def __init__(self, f: int):
        if f not in CYCLIC_CM_CONDUCTORS:
            raise ValueError(f"not a conductor of a cyclic quartic CM field with h=1: {f}")
        self.conductor = f
        self.kind = "cyclic"
        if f == 16:
            self.r3 = 2
            self._init_power16()
        else:
            self.r3 = f
            self._init_periods(f)
        self._tvec = tuple(sum(self._table[j][i][i] for i in range(4)) for j in range(4))
        self.disc = self._disc()
        assert self.disc == (2048 if f == 16 else f ** 3)
        self._gram = None

    # -- construction ------------------------------------------------------

    def _init_periods(self, p: int):
        assert is_prime(p) and p % 8 == 5
        g = _primitive_root(p)
        dlog = [0] * p
        t = 1
        for k in range(p - 1):
            dlog[t] = k
            t = t * g % p
        coset = [dlog[t] % 4 for t in range(p)]  # coset[0] unused
        self._cosets = [tuple(t for t in range(1, p) if coset[t] == j) for j in range(4)]
        # eta_i*eta_j = z*1 + sum N_k eta_k; the pair count is H-invariant so
        # it is constant on cosets: N_k = cnt_k / |H|.  1 = -(eta_0+..+eta_3).
        e = (p - 1) // 4
        tab = []
        for i in range(4):
            row = []
            for j in range(4):
                cnt = [0, 0, 0, 0]
                z = 0
                for s in self._cosets[i]:
                    for t in self._cosets[j]:
                        u = (s + t) % p
                        if u == 0:
                            z += 1
                        else:
                            cnt[coset[u]] += 1
                assert all(c % e == 0 for c in cnt)
                row.append(tuple(c // e - z for c in cnt))
            tab.append(row)
        self._table = tab
        self._one = (Fraction(-1),) * 4
        self._p = p
        self.kernel = frozenset(pow(x, 4, p) for x in range(1, p))

    def _init_power16(self):
        # reduce theta^d via theta^4 = -4 theta^2 - 2
        def reduce(c: list) -> tuple:
            c = c + [0] * (7 - len(c))
            for d in range(6, 3, -1):
                c[d - 2] += -4 * c[d]
                c[d - 4] += -2 * c[d]
                c[d] = 0
            return tuple(c[:4])

        tab = []
        for i in range(4):
            row = []
            for j in range(4):
                c = [0] * (i + j + 1)
                c[i + j] = 1
                row.append(reduce(c))
            tab.append(row)
        self._table = tab
        self._one = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
        # sigma(theta) = theta^3 + 3 theta maps the polynomial to its
        # conjugate root with sigma(sqrt 2) = -sqrt 2, sigma^2 = -id on theta
        s1 = (Fraction(0), Fraction(3), Fraction(0), Fraction(1))
        s2 = self._raw_mul(s1, s1)
        s3 = self._raw_mul(s2, s1)
        self._sigma_mat = [self._one, s1, s2, s3]
        self.kernel = frozenset({1, 7})

    def _raw_mul(self, u, v) -> Vec:
        tab = self._table
        out = [Fraction(0)] * 4
        for i in range(4):
            if u[i] == 0:
                continue
            for j in range(4):
                if v[j] == 0:
                    continue
                c = u[i] * v[j]
                t = tab[i][j]
                for k in range(4):
                    if t[k]:
                        out[k] += c * t[k]
        return tuple(out)

    def _disc(self) -> int:
        # trace form on the integral basis
        m = [[sum(self._table[i][j][k] * self._tvec[k] for k in range(4))
              for j in range(4)] for i in range(4)]
        assert all(x == int(x) for row in m for x in row)
        return abs(det_int([[int(x) for x in row] for row in m]))

    # -- arithmetic --------------------------------------------------------

    def element(self, a, b, c, d) -> Vec:
        return (Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def from_rational(self, q) -> Vec:
        return self.smul(Fraction(q), self._one)

    def mul(self, u: Vec, v: Vec) -> Vec:
        return self._raw_mul(u, v)

    def add(self, u: Vec, v: Vec) -> Vec:
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u: Vec, v: Vec) -> Vec:
        return tuple(a - b for a, b in zip(u, v))

    def smul(self, s, u: Vec) -> Vec:
        return tuple(s * a for a in u)

    def neg(self, u: Vec) -> Vec:
        return tuple(-a for a in u)

    def pow(self, u: Vec, k: int) -> Vec:
        out = self._one
        b = u
        while k:
            if k & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            k >>= 1
        return out

    def galois_sigma(self, u: Vec) -> Vec:
        if self.conductor == 16:
            out = [Fraction(0)] * 4
            for k in range(4):
                if u[k]:
                    for j in range(4):
                        out[j] += u[k] * self._sigma_mat[k][j]
            return tuple(out)
        return (u[3], u[0], u[1], u[2])

    def cm_conj(self, u: Vec) -> Vec:
        if self.conductor == 16:
            return (u[0], -u[1], u[2], -u[3])
        return (u[2], u[3], u[0], u[1])

    def trace(self, u: Vec) -> Fraction:
        return sum(a * t for a, t in zip(u, self._tvec))

    def _fixed_decompose(self, v: Vec) -> tuple[Fraction, Fraction]:
        """Split an element of the real quadratic subfield as a + b*sqrt(r3)."""
        if self.conductor == 16:
            assert v[1] == 0 and v[3] == 0, v
            return v[0] - 2 * v[2], v[2]
        assert v[0] == v[2] and v[1] == v[3], v
        return Fraction(-(v[0] + v[1]), 2), Fraction(v[0] - v[1], 2)

    def xxbar(self, u: Vec) -> tuple[Fraction, Fraction]:
        return self._fixed_decompose(self.mul(u, self.cm_conj(u)))

    def norm(self, u) -> Fraction:
        a, b = self.xxbar(tuple(Fraction(x) for x in u))
        return a * a - self.r3 * b * b

    def t2(self, u: Vec) -> Fraction:
        a, _ = self.xxbar(u)
        return 4 * a

    # -- coordinates (the working basis is the integral basis) --------------

    def to_coords(self, u: Vec) -> list[Fraction]:
        return [Fraction(x) for x in u]

    def from_coords(self, c) -> Vec:
        return tuple(Fraction(x) for x in c)

    def is_integral(self, u: Vec) -> bool:
        return all(Fraction(x).denominator == 1 for x in u)

    # -- norm form ----------------------------------------------------------

    def gram_ab(self):
        """Rational Grams with x*conj(x) = (c^T A c) + (c^T B c) sqrt(r3)."""
        if self._gram is None:
            e = [self.element(*(1 if t == j else 0 for t in range(4))) for j in range(4)]
            A = [[Fraction(0)] * 4 for _ in range(4)]
            B = [[Fraction(0)] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(4):
                    h = self.add(self.mul(e[i], self.cm_conj(e[j])),
                                 self.mul(e[j], self.cm_conj(e[i])))
                    a, b = self._fixed_decompose(h)
                    A[i][j] = a / 2
                    B[i][j] = b / 2
            self._gram = (A, B)
        return self._gram

    def t2_gram(self) -> list[list[int]]:
        A, _ = self.gram_ab()
        G = [[4 * A[i][j] for j in range(4)] for i in range(4)]
        assert all(x.denominator == 1 for row in G for x in row)
        return [[int(x) for x in row] for row in G]

    def mult_table(self):
        return [[list(self._table[i][j]) for j in range(4)] for i in range(4)]

    # -- embeddings ----------------------------------------------------------

    def basis_embeddings(self, prec: int = 96):
        """Per complex embedding (phi1, phi2 = phi1 o sigma), enclosures
        (re, im) of each integral basis element."""
        if self.conductor == 16:
            s2 = Iv.from_int(2).sqrt(prec)
            s = Iv.from_int(2).sub(s2, prec).sqrt(prec)  # theta = i*s, s > 0
            zero = Iv.from_int(0)
            re2 = s2.sub(Iv.from_int(2), prec)
            emb1 = [(Iv.from_int(1), zero), (zero, s), (re2, zero),
                    (zero, re2.mul(s, prec))]
            emb2 = []
            for k in range(4):
                re, im = zero, zero
                for j in range(4):
                    c = self._sigma_mat[k][j]
                    if c:
                        re = re.add(emb1[j][0].mul(Iv.from_fraction(c, prec), prec), prec)
                        im = im.add(emb1[j][1].mul(Iv.from_fraction(c, prec), prec), prec)
                emb2.append((re, im))
            return [emb1, emb2]
        p = self._p
        emb1 = []
        for j in range(4):
            re, im = Iv.from_int(0), Iv.from_int(0)
            for t in self._cosets[j]:
                q = Fraction(t, p)
                re = re.add(cos2pi(q, prec), prec)
                im = im.add(sin2pi(q, prec), prec)
            emb1.append((re, im))
        emb2 = [emb1[(j + 1) % 4] for j in range(4)]
        return [emb1, emb2]

    def residue_degree(self, q: int) -> int:
        """Order of the unramified prime q in (Z/f)* modulo the field kernel."""
        f = self.conductor
        if q % 2 == 0 if f == 16 else q % f == 0:
            raise ValueError(f"{q} ramifies in conductor {f}")
        t = q % f
        for k in range(1, 5):
            if pow(q, k, f) in self.kernel:
                return k
        raise AssertionError((f, q))

    def ideal_norm_exists(self, n: int) -> bool:
        """Whether some integral ideal has norm |n|: each unramified prime
        must enter in a multiple of its residue degree; the single (totally
        ramified) conductor prime is unconstrained."""
        n = abs(n)
        if n == 0:
            return False
        for p, e in factorize(n).items():
            ram = (p == 2) if self.conductor == 16 else (p == self.conductor)
            if not ram and e % self.residue_degree(p):
                return False
        return True

    def __repr__(self):
        return f"CyclicField({self.conductor})"


@lru_cache(maxsize=None)
def cyclic_field(f: int) -> CyclicField:
    return CyclicField(f)
