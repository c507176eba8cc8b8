"""Bicyclic quartic CM-fields Q(sqrt m, sqrt n).

Internal basis B0 = (1, S1, S2, S3) with S1^2 = r1, S2^2 = r2 the two
negative radicands and S3 = S1*S2/f, S3^2 = r3 > 0. The real quadratic
subfield is always Q(S3). Complex conjugation is the Galois element
(-1, -1), so x*conj(x) = a + b*S3 lands in the real subfield and
N(x) = a^2 - r3*b^2 is exact rational arithmetic throughout.

The integral basis starts from products of the three quadratic-subfield
generators and is saturated at 2 until the discriminant equals the product
of the subfield discriminants.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .arith import squarefree_decompose
from .intervals import Iv
from .linalg import det_frac, hnf, mat_inv_frac
from .quadratic import QuadElt, disc_of

Vec = tuple[Fraction, Fraction, Fraction, Fraction]


def _poly_mul_x_minus(poly: list[Fraction], r: int) -> list[Fraction]:
    out = [Fraction(0)] * (len(poly) + 1)
    for k, a in enumerate(poly):
        out[k] += a * (-r)
        out[k + 1] += a
    return out


def _lagrange_charpoly(vals: list[Fraction]) -> list[Fraction]:
    # monic quartic recovered from its values at 0..4
    coeffs = [Fraction(0)] * 5
    for i, v in enumerate(vals):
        num = [Fraction(1)]
        den = Fraction(1)
        for j in range(5):
            if j != i:
                num = _poly_mul_x_minus(num, j)
                den *= i - j
        for k in range(5):
            coeffs[k] += v * num[k] / den
    return coeffs


class BiquadField:
    def __init__(self, m: int, n: int):
        for v in (m, n):
            if v in (0, 1):
                raise ValueError("radicand must be squarefree and != 0, 1")
            s, fsq = squarefree_decompose(v)
            if fsq != 1:
                raise ValueError("radicand must be squarefree")
        if m == n:
            raise ValueError("radicands must generate distinct subfields")
        m3, _ = squarefree_decompose(m * n)
        if m3 == 1:
            raise ValueError("radicands must generate distinct subfields")
        triple = sorted({m, n, m3})
        pos = [r for r in triple if r > 0]
        if len(pos) != 1:
            raise ValueError("not a CM field: need exactly one real subfield")
        self.m, self.n = m, n
        self.r3 = pos[0]
        negs = sorted((r for r in triple if r < 0), key=abs)
        self.r1, self.r2 = negs
        self.f = math.isqrt(self.r1 * self.r2 // self.r3)
        assert self.f * self.f * self.r3 == self.r1 * self.r2
        self.g1 = self.r1 // self.f
        self.g2 = self.r2 // self.f
        self.disc_target = disc_of(self.r1) * disc_of(self.r2) * disc_of(self.r3)
        self._build_integral_basis()
        self.disc = self._disc_of(self.basis)
        assert self.disc == self.disc_target
        self._winv = mat_inv_frac([list(b) for b in self.basis])
        self._gram_ab = None
        self._mult_table = None

    # B0 arithmetic

    def element(self, a, b, c, d) -> Vec:
        return (Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def from_rational(self, q) -> Vec:
        return (Fraction(q), Fraction(0), Fraction(0), Fraction(0))

    def neg(self, u: Vec) -> Vec:
        return tuple(-a for a in u)

    def mul(self, u: Vec, v: Vec) -> Vec:
        u0, u1, u2, u3 = u
        v0, v1, v2, v3 = v
        return (
            u0 * v0 + self.r1 * u1 * v1 + self.r2 * u2 * v2 + self.r3 * u3 * v3,
            u0 * v1 + u1 * v0 + self.g2 * (u2 * v3 + u3 * v2),
            u0 * v2 + u2 * v0 + self.g1 * (u1 * v3 + u3 * v1),
            u0 * v3 + u3 * v0 + self.f * (u1 * v2 + u2 * v1),
        )

    def add(self, u: Vec, v: Vec) -> Vec:
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u: Vec, v: Vec) -> Vec:
        return tuple(a - b for a, b in zip(u, v))

    def smul(self, s, u: Vec) -> Vec:
        s = Fraction(s)
        return tuple(s * a for a in u)

    def galois(self, u: Vec, e1: int, e2: int) -> Vec:
        return (u[0], e1 * u[1], e2 * u[2], e1 * e2 * u[3])

    def cm_conj(self, u: Vec) -> Vec:
        return self.galois(u, -1, -1)

    def trace(self, u: Vec) -> Fraction:
        return 4 * u[0]

    def xxbar(self, u: Vec) -> tuple[Fraction, Fraction]:
        p = self.mul(u, self.cm_conj(u))
        assert p[1] == 0 and p[2] == 0
        return p[0], p[3]

    def norm(self, u: Vec) -> Fraction:
        a, b = self.xxbar(u)
        return a * a - self.r3 * b * b

    def t2(self, u: Vec) -> Fraction:
        return 4 * self.xxbar(u)[0]

    def relative_norm(self, u: Vec, d: int) -> QuadElt:
        """N down to the quadratic subfield Q(sqrt d), for integral u."""
        if d == self.r1:
            v = self.mul(u, self.galois(u, 1, -1))
            a, b, z1, z2 = v[0], v[1], v[2], v[3]
        elif d == self.r2:
            v = self.mul(u, self.galois(u, -1, 1))
            a, b, z1, z2 = v[0], v[2], v[1], v[3]
        elif d == self.r3:
            v = self.mul(u, self.cm_conj(u))
            a, b, z1, z2 = v[0], v[3], v[1], v[2]
        else:
            raise ValueError(f"{d} is not a quadratic subfield radicand")
        assert z1 == 0 and z2 == 0
        x, y = 2 * a, 2 * b
        if x.denominator != 1 or y.denominator != 1:
            raise ValueError("relative norm left the maximal order")
        return QuadElt(d, int(x), int(y))

    def pow(self, u: Vec, k: int) -> Vec:
        r = self.element(1, 0, 0, 0)
        while k:
            if k & 1:
                r = self.mul(r, u)
            u = self.mul(u, u)
            k >>= 1
        return r

    # integral basis

    def _disc_of(self, basis) -> int:
        G = [[4 * self.mul(bi, bj)[0] for bj in basis] for bi in basis]
        d = det_frac(G)
        assert d.denominator == 1
        return int(d)

    def _build_integral_basis(self):
        def w(r, idx):
            v = [Fraction(0)] * 4
            if r % 4 == 1:
                v[0] = Fraction(1, 2)
                v[idx] = Fraction(1, 2)
            else:
                v[idx] = Fraction(1)
            return tuple(v)

        w1, w2, w3 = w(self.r1, 1), w(self.r2, 2), w(self.r3, 3)
        gens = [self.element(1, 0, 0, 0), w1, w2, w3,
                self.mul(w1, w2), self.mul(w1, w3), self.mul(w2, w3),
                self.mul(self.mul(w1, w2), w3)]
        basis = self._hnf_module(gens)
        target = self.disc_target
        for _ in range(12):
            d = self._disc_of(basis)
            assert d % target == 0
            if d == target:
                break
            winv = mat_inv_frac([list(b) for b in basis])
            enlarged = False
            for mask in range(1, 16):
                x = (Fraction(0),) * 4
                for i in range(4):
                    if mask >> i & 1:
                        x = self.add(x, basis[i])
                x = self.smul(Fraction(1, 2), x)
                if self._is_integral_elt(x, basis, winv):
                    basis = self._hnf_module(list(basis) + [x])
                    enlarged = True
                    break
            assert enlarged, "saturation stalled before reaching target discriminant"
        self.basis = basis

    def _hnf_module(self, gens) -> list[Vec]:
        den = 1
        for g in gens:
            for c in g:
                den = den * c.denominator // math.gcd(den, c.denominator)
        rows = [[int(c * den) for c in g] for g in gens]
        H = hnf(rows)
        assert len(H) == 4
        return [tuple(Fraction(v, den) for v in row) for row in H]

    def _is_integral_elt(self, x: Vec, basis, winv) -> bool:
        # multiplication-by-x matrix in the given basis; x is integral iff
        # its characteristic polynomial has integer coefficients
        M = []
        for b in basis:
            xb = self.mul(x, b)
            M.append([sum(xb[k] * winv[k][i] for k in range(4)) for i in range(4)])
        vals = []
        for lam in range(5):
            A = [[(lam if i == j else 0) - M[j][i] for i in range(4)] for j in range(4)]
            vals.append(det_frac(A))
        return all(c.denominator == 1 for c in _lagrange_charpoly(vals))

    # coordinates over the integral basis

    def to_coords(self, u: Vec) -> list[Fraction]:
        return [sum(u[k] * self._winv[k][i] for k in range(4)) for i in range(4)]

    def from_coords(self, c) -> Vec:
        out = (Fraction(0),) * 4
        for ci, b in zip(c, self.basis):
            out = self.add(out, self.smul(ci, b))
        return out

    def is_integral(self, u: Vec) -> bool:
        return all(c.denominator == 1 for c in self.to_coords(u))

    # norm as a pair of real-subfield quadratic forms

    def gram_ab(self):
        """Symmetric rational A, B with x*conj(x) = (cAc) + (cBc) S3."""
        if self._gram_ab is None:
            A = [[Fraction(0)] * 4 for _ in range(4)]
            B = [[Fraction(0)] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(4):
                    p = self.mul(self.basis[i], self.cm_conj(self.basis[j]))
                    q = self.mul(self.basis[j], self.cm_conj(self.basis[i]))
                    A[i][j] = (p[0] + q[0]) / 2
                    B[i][j] = (p[3] + q[3]) / 2
            self._gram_ab = (A, B)
        return self._gram_ab

    def t2_gram(self) -> list[list[int]]:
        A, _ = self.gram_ab()
        G = [[4 * A[i][j] for j in range(4)] for i in range(4)]
        assert all(v.denominator == 1 for row in G for v in row)
        return [[int(v) for v in row] for row in G]

    def mult_table(self):
        """c[i][j] = integer coordinates of basis[i]*basis[j]."""
        if self._mult_table is None:
            tab = []
            for i in range(4):
                row = []
                for j in range(4):
                    co = self.to_coords(self.mul(self.basis[i], self.basis[j]))
                    assert all(v.denominator == 1 for v in co)
                    row.append([int(v) for v in co])
                tab.append(row)
            self._mult_table = tab
        return self._mult_table

    # embeddings

    def basis_embeddings(self, prec: int = 96):
        """Per complex embedding (phi1, phi2), enclosures (re, im) of each
        integral basis element."""
        s1 = Iv.from_int(-self.r1).sqrt(prec)
        s2 = Iv.from_int(-self.r2).sqrt(prec)
        s3 = Iv.from_int(self.r3).sqrt(prec)
        out = []
        for e2 in (1, -1):
            emb = []
            for w in self.basis:
                a, b, c, d = (Iv.from_fraction(x, prec) for x in w)
                # phi(S3) = -e2 * sqrt(r3); phi(S1) = i s1, phi(S2) = e2 i s2
                re = a.sub(d.mul(s3, prec).mul_int(e2, prec), prec)
                im = b.mul(s1, prec).add(c.mul(s2, prec).mul_int(e2, prec), prec)
                emb.append((re, im))
            out.append(emb)
        return out

    def __repr__(self):
        return f"BiquadField({self.m}, {self.n})"


@lru_cache(maxsize=None)
def biquad_field(m: int, n: int) -> BiquadField:
    return BiquadField(m, n)
