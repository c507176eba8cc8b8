"""Dyadic interval arithmetic with outward rounding.

An Iv holds integers (a, b, e) for the closed interval [a*2^e, b*2^e].
All operations round outward to a requested mantissa precision, so every
enclosure is sound regardless of precision choice.
"""

from __future__ import annotations

import math
from fractions import Fraction

DEFAULT_PREC = 64


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


class Iv:
    __slots__ = ("a", "b", "e")

    def __init__(self, a: int, b: int, e: int):
        if a > b:
            raise ValueError("empty interval")
        self.a = a
        self.b = b
        self.e = e

    # construction

    @staticmethod
    def from_int(n: int) -> "Iv":
        return Iv(n, n, 0)

    @staticmethod
    def from_fraction(q, prec: int = DEFAULT_PREC) -> "Iv":
        q = Fraction(q)
        s = prec + q.denominator.bit_length()
        num = q.numerator << s
        return _norm((num // q.denominator), _ceil_div(num, q.denominator), -s, prec)

    @staticmethod
    def from_fractions(lo, hi, prec: int = DEFAULT_PREC) -> "Iv":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        s = prec + max(lo.denominator.bit_length(), hi.denominator.bit_length())
        a = (lo.numerator << s) // lo.denominator
        b = _ceil_div(hi.numerator << s, hi.denominator)
        return _norm(a, b, -s, prec)

    # inspection

    def to_fractions(self) -> tuple[Fraction, Fraction]:
        if self.e >= 0:
            return Fraction(self.a << self.e), Fraction(self.b << self.e)
        d = 1 << (-self.e)
        return Fraction(self.a, d), Fraction(self.b, d)

    def lo(self) -> Fraction:
        return self.to_fractions()[0]

    def hi(self) -> Fraction:
        return self.to_fractions()[1]

    def mid(self) -> Fraction:
        lo, hi = self.to_fractions()
        return (lo + hi) / 2

    def width(self) -> Fraction:
        lo, hi = self.to_fractions()
        return hi - lo

    def is_point(self) -> bool:
        return self.a == self.b

    def contains(self, q) -> bool:
        lo, hi = self.to_fractions()
        return lo <= q <= hi

    def contains_zero(self) -> bool:
        return self.a <= 0 <= self.b

    def lt(self, q) -> bool:
        return self.hi() < q

    def gt(self, q) -> bool:
        return self.lo() > q

    def mig(self) -> Fraction:
        """Distance from 0 to the interval (0 if it contains 0)."""
        if self.contains_zero():
            return Fraction(0)
        lo, hi = self.to_fractions()
        return lo if lo > 0 else -hi

    def mag(self) -> Fraction:
        lo, hi = self.to_fractions()
        return max(-lo, hi)

    def __repr__(self):
        lo, hi = self.to_fractions()
        return f"Iv[{float(lo):.6g}, {float(hi):.6g}]"

    # arithmetic

    def neg(self) -> "Iv":
        return Iv(-self.b, -self.a, self.e)

    def add(self, o: "Iv", prec: int = DEFAULT_PREC) -> "Iv":
        e = min(self.e, o.e)
        a = (self.a << (self.e - e)) + (o.a << (o.e - e))
        b = (self.b << (self.e - e)) + (o.b << (o.e - e))
        return _norm(a, b, e, prec)

    def sub(self, o: "Iv", prec: int = DEFAULT_PREC) -> "Iv":
        return self.add(o.neg(), prec)

    def mul(self, o: "Iv", prec: int = DEFAULT_PREC) -> "Iv":
        p1 = self.a * o.a
        p2 = self.a * o.b
        p3 = self.b * o.a
        p4 = self.b * o.b
        return _norm(min(p1, p2, p3, p4), max(p1, p2, p3, p4), self.e + o.e, prec)

    def sqr(self, prec: int = DEFAULT_PREC) -> "Iv":
        if self.a >= 0:
            lo, hi = self.a * self.a, self.b * self.b
        elif self.b <= 0:
            lo, hi = self.b * self.b, self.a * self.a
        else:
            lo, hi = 0, max(self.a * self.a, self.b * self.b)
        return _norm(lo, hi, 2 * self.e, prec)

    def mul_int(self, n: int, prec: int = DEFAULT_PREC) -> "Iv":
        if n >= 0:
            return _norm(self.a * n, self.b * n, self.e, prec)
        return _norm(self.b * n, self.a * n, self.e, prec)

    def div_int(self, n: int, prec: int = DEFAULT_PREC) -> "Iv":
        if n == 0:
            raise ZeroDivisionError
        s = prec + 4
        a, b = self.a << s, self.b << s
        if n < 0:
            a, b, n = -b, -a, -n
        return _norm(a // n, _ceil_div(b, n), self.e - s, prec)

    def div(self, o: "Iv", prec: int = DEFAULT_PREC) -> "Iv":
        if o.contains_zero():
            raise ZeroDivisionError("divisor interval contains 0")
        # exact endpoint quotients, then one outward rounding; shifting
        # integer mantissas instead underflows when the divisor mantissa
        # is much wider than the dividend's
        slo, shi = self.to_fractions()
        olo, ohi = o.to_fractions()
        qs = (slo / olo, slo / ohi, shi / olo, shi / ohi)
        return Iv.from_fractions(min(qs), max(qs), prec)

    def sqrt(self, prec: int = DEFAULT_PREC) -> "Iv":
        if self.a < 0:
            raise ValueError("sqrt of interval with negative part")
        s = max(0, 2 * prec - self.a.bit_length(), 2 * prec - self.b.bit_length())
        if (self.e - s) % 2:
            s += 1
        lo = math.isqrt(self.a << s)
        hi_m = math.isqrt(self.b << s)
        if hi_m * hi_m < (self.b << s):
            hi_m += 1
        return _norm(lo, hi_m, (self.e - s) // 2, prec)

    def scale2(self, k: int) -> "Iv":
        return Iv(self.a, self.b, self.e + k)

    def hull(self, o: "Iv") -> "Iv":
        e = min(self.e, o.e)
        return Iv(
            min(self.a << (self.e - e), o.a << (o.e - e)),
            max(self.b << (self.e - e), o.b << (o.e - e)),
            e,
        )

    # operator sugar at default precision (tests, non-critical paths)

    def __add__(self, o):
        return self.add(o)

    def __sub__(self, o):
        return self.sub(o)

    def __mul__(self, o):
        return self.mul(o)

    def __neg__(self):
        return self.neg()


def _norm(a: int, b: int, e: int, prec: int) -> Iv:
    bits = max(abs(a), abs(b)).bit_length()
    if bits > prec:
        k = bits - prec
        a >>= k
        b = -((-b) >> k)
        e += k
    if a == 0 and b == 0:
        e = 0
    return Iv(a, b, e)


_PI_CACHE: dict[int, Iv] = {}


def pi_interval(prec: int = DEFAULT_PREC) -> Iv:
    """Enclosure of pi via Machin's formula with exact partial sums."""
    if prec in _PI_CACHE:
        return _PI_CACHE[prec]

    def atan_inv(x: int, bits: int) -> tuple[Fraction, Fraction]:
        # atan(1/x) as exact alternating partial sum plus remainder bound
        s = Fraction(0)
        k = 0
        while True:
            d = (2 * k + 1) * x ** (2 * k + 1)
            if Fraction(1, d) < Fraction(1, 1 << bits):
                return s, Fraction(1, d)
            s += Fraction((-1) ** k, d)
            k += 1

    w = prec + 16
    s5, r5 = atan_inv(5, w)
    s239, r239 = atan_inv(239, w)
    lo = 16 * (s5 - r5) - 4 * (s239 + r239)
    hi = 16 * (s5 + r5) - 4 * (s239 - r239)
    piv = Iv.from_fractions(lo, hi, prec)
    _PI_CACHE[prec] = piv
    return piv


def _sincos_2pi(q: Fraction, prec: int) -> tuple[Iv, Iv]:
    w = prec + 24
    q = q - math.floor(q)  # both series are 1-periodic in q
    x = pi_interval(w).mul(Iv.from_fraction(2 * q, w), w)
    x2 = x.sqr(w)
    x2m = x2.mag()
    one = Iv.from_int(1)
    c = one
    s = one
    tc = one
    ts = one
    k = 0
    tail = Fraction(1, 1 << (prec + 8))
    while True:
        k += 1
        tc = tc.mul(x2, w).div_int((2 * k - 1) * (2 * k), w)
        ts = ts.mul(x2, w).div_int((2 * k) * (2 * k + 1), w)
        if k % 2:
            c = c.sub(tc, w)
            s = s.sub(ts, w)
        else:
            c = c.add(tc, w)
            s = s.add(ts, w)
        # once the term ratio is below 1/2 the tail is under twice the next term
        if (2 * k + 1) * (2 * k + 2) > 2 * x2m and max(tc.mag(), ts.mag()) < tail:
            break
    slack = Iv.from_fractions(-2 * tail, 2 * tail, w)
    cos_iv = c.add(slack, prec)
    sin_iv = x.mul(s.add(slack, w), prec)
    return sin_iv, cos_iv


def cos2pi(q: Fraction, prec: int = DEFAULT_PREC) -> Iv:
    """Enclosure of cos(2*pi*q) for rational q."""
    return _sincos_2pi(Fraction(q), prec)[1]


def sin2pi(q: Fraction, prec: int = DEFAULT_PREC) -> Iv:
    """Enclosure of sin(2*pi*q) for rational q."""
    return _sincos_2pi(Fraction(q), prec)[0]
