"""Quadratic fields: elements, units, class numbers, norm representation.

Elements of Q(sqrt d) are stored in half coordinates (x + y*sqrt(d))/2 so the
maximal order is uniform across d mod 4. Class numbers come from binary
quadratic forms (reduced-form count for d < 0, rho-cycle count for d > 0);
principality tests recover generators by tracking SL2 transforms, which keeps
norm-representation exact even when the fundamental unit is astronomically
large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import iroot, is_prime, is_square, kronecker


def disc_of(d: int) -> int:
    if d in (0, 1):
        raise ValueError("not a quadratic field")
    return d if d % 4 == 1 else 4 * d


@dataclass(frozen=True)
class QuadElt:
    """(x + y*sqrt(d))/2, constrained to the maximal order."""

    d: int
    x: int
    y: int

    def __post_init__(self):
        if self.d % 4 == 1:
            if (self.x - self.y) % 2:
                raise ValueError("not integral")
        elif self.x % 2 or self.y % 2:
            raise ValueError("not integral")

    def norm(self) -> int:
        n4 = self.x * self.x - self.d * self.y * self.y
        assert n4 % 4 == 0
        return n4 // 4

    def trace(self) -> int:
        return self.x

    def conj(self) -> "QuadElt":
        return QuadElt(self.d, self.x, -self.y)

    def neg(self) -> "QuadElt":
        return QuadElt(self.d, -self.x, -self.y)

    def add(self, o: "QuadElt") -> "QuadElt":
        return QuadElt(self.d, self.x + o.x, self.y + o.y)

    def sub(self, o: "QuadElt") -> "QuadElt":
        return QuadElt(self.d, self.x - o.x, self.y - o.y)

    def mul(self, o: "QuadElt") -> "QuadElt":
        xx = self.x * o.x + self.d * self.y * o.y
        yy = self.x * o.y + self.y * o.x
        assert xx % 2 == 0 and yy % 2 == 0
        return QuadElt(self.d, xx // 2, yy // 2)

    def pow(self, k: int) -> "QuadElt":
        if k < 0:
            raise ValueError("negative power")
        r = QuadElt(self.d, 2, 0)
        b = self
        while k:
            if k & 1:
                r = r.mul(b)
            b = b.mul(b)
            k >>= 1
        return r

    def is_unit(self) -> bool:
        return self.norm() in (1, -1)


def roots_of_unity(d: int) -> list[QuadElt]:
    if d == -1:
        return [QuadElt(-1, 2, 0), QuadElt(-1, -2, 0), QuadElt(-1, 0, 2), QuadElt(-1, 0, -2)]
    if d == -3:
        return [QuadElt(-3, x, y) for x, y in
                ((2, 0), (-2, 0), (1, 1), (-1, -1), (-1, 1), (1, -1))]
    return [QuadElt(d, 2, 0), QuadElt(d, -2, 0)]


def splitting(d: int, p: int) -> str:
    k = kronecker(disc_of(d), p)
    return "split" if k == 1 else "inert" if k == -1 else "ramified"


# units


def pell_pm1(d: int) -> tuple[int, int, int]:
    """Minimal (x, y, s) with x^2 - d y^2 = s, s = +-1, via the CF of sqrt d."""
    a0 = math.isqrt(d)
    P, Q, a = 0, 1, a0
    hm1, h = 1, a0
    km1, k = 0, 1
    i = 0
    while True:
        i += 1
        P = a * Q - P
        Q = (d - P * P) // Q
        a = (a0 + P) // Q
        if Q == 1:
            return h, k, (-1) ** i
        hm1, h = h, a * h + hm1
        km1, k = k, a * k + km1


_UNIT_CACHE: dict[int, QuadElt] = {}


def fundamental_unit(d: int) -> QuadElt:
    if d <= 1:
        raise ValueError("real field required")
    if d in _UNIT_CACHE:
        return _UNIT_CACHE[d]
    x1, y1, _ = pell_pm1(d)
    eps = QuadElt(d, 2 * x1, 2 * y1)
    if d % 8 == 5:
        # the odd +-4 solution, if any, is the cube root of x1 + y1 sqrt(d)
        eps_up = x1 + (math.isqrt(d) + 1) * y1 + 1
        umax = iroot(8 * eps_up, 3) // math.isqrt(d) + 2
        for u in range(1, umax + 1, 2):
            done = False
            for s4 in (-4, 4):  # for fixed u both can be square; smaller t first
                t2 = d * u * u + s4
                if t2 > 0 and is_square(t2):
                    t = math.isqrt(t2)
                    if t % 2:
                        eps = QuadElt(d, t, u)
                        done = True
                        break
            if done:
                break
    _UNIT_CACHE[d] = eps
    return eps


def unit_norm(d: int) -> int:
    return fundamental_unit(d).norm()


# binary quadratic forms; a form (a, b, c) has b^2 - 4ac = disc


def _reduced_pos(D: int, f) -> bool:
    a, b, c = f
    return -a < b <= a <= c and (b >= 0 or a < c)


def _gauss_reduce(D: int, f, M):
    # positive definite (D < 0, a > 0); returns reduced form and updated M
    a, b, c = f
    x0, y0, x1, y1 = M
    while True:
        if c < a:
            a, b, c = c, -b, a
            x0, y0, x1, y1 = x1, y1, -x0, -y0
            continue
        if b > a or b <= -a:
            t = (a - b) // (2 * a)
            b2 = b + 2 * a * t
            c2 = a * t * t + b * t + c
            b, c = b2, c2
            x1, y1 = x0 * t + x1, y0 * t + y1
            continue
        if a == c and b < 0:
            a, b, c = c, -b, a
            x0, y0, x1, y1 = x1, y1, -x0, -y0
            continue
        return (a, b, c), (x0, y0, x1, y1)


def _rho(D: int, isq: int, f):
    a, b, c = f
    ac = abs(c)
    if ac > isq:
        r = (-b) % (2 * ac)
        if r > ac:
            r -= 2 * ac
    else:
        r = isq - ((isq + b) % (2 * ac))
    c2, rem = divmod(r * r - D, 4 * c)
    assert rem == 0
    t = (b + r) // (2 * c)
    return (c, r, c2), t


def _reduced_indef(D: int, isq: int, f) -> bool:
    a, b, c = f
    if b <= 0 or b > isq:
        return False
    s = 2 * abs(a) + b
    if s * s <= D:
        return False
    s = 2 * abs(a) - b
    return s <= 0 or s * s < D


def reduced_forms_indefinite(D: int) -> list[tuple[int, int, int]]:
    isq = math.isqrt(D)
    out = []
    for b in range(2 - (D % 2), isq + 1, 2):
        n4 = D - b * b
        if n4 % 4:
            continue
        n = n4 // 4
        for u in range(1, math.isqrt(n) + 1):
            if n % u:
                continue
            for a in {u, n // u}:
                f = (a, b, -(n // a))
                if _reduced_indef(D, isq, f):
                    out.append(f)
                    out.append((-a, b, n // a))
    return out


def form_cycles(D: int) -> list[list[tuple[int, int, int]]]:
    isq = math.isqrt(D)
    forms = set(reduced_forms_indefinite(D))
    cycles = []
    seen: set[tuple[int, int, int]] = set()
    for f0 in sorted(forms):
        if f0 in seen:
            continue
        cyc = []
        f = f0
        while f not in seen:
            seen.add(f)
            cyc.append(f)
            f, _ = _rho(D, isq, f)
            assert f in forms
        cycles.append(cyc)
    return cycles


_H_CACHE: dict[int, int] = {}


def class_number(d: int) -> int:
    """Class number of the maximal order of Q(sqrt d), d squarefree."""
    if d in _H_CACHE:
        return _H_CACHE[d]
    D = disc_of(d)
    if d < 0:
        h = 0
        b = D % 2
        while 3 * b * b <= -D:
            m4 = b * b - D
            if m4 % 4 == 0:
                m = m4 // 4
                for a in range(max(b, 1), math.isqrt(m) + 1):
                    if m % a:
                        continue
                    c = m // a
                    h += 1 if (b == 0 or a == b or a == c) else 2
            b += 2
        _H_CACHE[d] = h
        return h
    hplus = len(form_cycles(D))
    if unit_norm(d) == -1:
        h = hplus
    else:
        assert hplus % 2 == 0
        h = hplus // 2
    _H_CACHE[d] = h
    return h


def narrow_class_number(d: int) -> int:
    if d < 0:
        return class_number(d)
    return len(form_cycles(disc_of(d)))


# ideals of a quadratic order, as forms (a, b, c): the ideal [a, (b+sqrt D)/2]


def prime_ideals_over(d: int, p: int) -> list[tuple[int, int, int]]:
    """Prime ideals of norm p, as forms; [] when p is inert."""
    D = disc_of(d)
    out = []
    for b in range(2 * p):
        if (b * b - D) % (4 * p) == 0:
            out.append((p, b, (b * b - D) // (4 * p)))
    return out


def _elt_from_ideal_coords(d: int, form, x: int, y: int) -> QuadElt:
    # xi = a*x + (b + sqrt D)/2 * y inside the ideal [a, (b+sqrt D)/2]
    a, b, _ = form
    f = 1 if d % 4 == 1 else 2
    return QuadElt(d, 2 * a * x + b * y, f * y)


def ideal_generator(d: int, form) -> QuadElt | None:
    """A generator of the ideal, or None if it is not principal.

    For d > 0 both signs of generator norm are looked for along the cycle;
    the returned element has |norm| = N(ideal).
    """
    D = disc_of(d)
    a, b, c = form
    assert b * b - 4 * a * c == D
    M = (1, 0, 0, 1)
    if d < 0:
        red, M = _gauss_reduce(D, (a, b, c), M)
        b1 = D % 2
        principal = (1, b1, (b1 * b1 - D) // 4)
        if red != principal:
            return None
        return _elt_from_ideal_coords(d, form, M[0], M[1])
    isq = math.isqrt(D)
    f = (a, b, c)
    guard = 0
    while not _reduced_indef(D, isq, f):
        f, t = _rho(D, isq, f)
        M = (M[2], M[3], -M[0] + t * M[2], -M[1] + t * M[3])
        guard += 1
        assert guard < 10000
    start = f
    while True:
        if f[0] in (1, -1):
            return _elt_from_ideal_coords(d, form, M[0], M[1])
        f, t = _rho(D, isq, f)
        M = (M[2], M[3], -M[0] + t * M[2], -M[1] + t * M[3])
        if f == start:
            return None


# norm representation


def represents(d: int, n: int) -> QuadElt | None:
    """An element of the maximal order of norm exactly n (sign included)."""
    if n == 0:
        raise ValueError("n must be nonzero")
    if d < 0:
        if n < 0:
            return None
        for y in range(math.isqrt(4 * n // -d) + 1):
            t = 4 * n + d * y * y
            if t >= 0 and is_square(t):
                try:
                    return QuadElt(d, math.isqrt(t), y)
                except ValueError:
                    continue
        return None
    if abs(n) == 1:
        if n == 1:
            return QuadElt(d, 2, 0)
        eps = fundamental_unit(d)
        return eps if eps.norm() == -1 else None
    eps = fundamental_unit(d)
    isq = math.isqrt(d)
    eps_up = (eps.x + eps.y * (isq + 1)) // 2 + 2
    ybound = (math.isqrt(abs(n)) + 1) * (eps_up + 1) // isq + 2
    if ybound <= 200000:
        for y in range(ybound + 1):
            t = 4 * n + d * y * y
            if t >= 0 and is_square(t):
                try:
                    return QuadElt(d, math.isqrt(t), y)
                except ValueError:
                    continue
        return None
    # huge fundamental unit: go through ideals; |n| must be prime here
    if not is_prime(abs(n)):
        raise NotImplementedError("composite norm with huge unit")
    for form in prime_ideals_over(d, abs(n)):
        g = ideal_generator(d, form)
        if g is None:
            continue
        if g.norm() == n:
            return g
        if eps.norm() == -1:
            return g.mul(eps)
    return None
