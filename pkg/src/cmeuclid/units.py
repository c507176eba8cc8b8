"""Unit groups of the quartic CM fields.

For totally complex quartic K with real quadratic subfield k = Q(sqrt r3),
the unit group is W_K x <eta> with W_K finite cyclic and eta of infinite
order. Downstream work only needs three invariants, all decided here by
exact lattice enumeration:

* W_K itself. An algebraic integer x is a root of unity iff T2(x) = 4 and
  N(x) = 1: with a = |phi1(x)|^2 and b = |phi2(x)|^2 one has 2a + 2b = 4
  and ab = 1, forcing a = b = 1, and an integer all of whose conjugates
  lie on the unit circle is a root of unity (Kronecker). So W_K is the
  radius-4 shell of the T2 lattice with norm 1.

* the unit index q = [O_K^* : W_K <eps>], eps the fundamental unit of k.
  Writing eps = zeta * eta^t, relative norms pin t: N_{K/k}(eta) is a unit
  of k, and N(eta)^(2t) = N(eps^2) = eps^4 shows t | 2, so q = t in {1, 2},
  and q = 2 exactly when some zeta * eps is a square in K. Any square root
  u has |phi(u)|^2 = |phi(u^2)| in {eps, 1/eps} per conjugate pair, hence
  T2(u) = 2(eps + 1/eps) exactly: one finite enumeration decides the index
  in both directions.

* the relative norm group N_{K/k}(O_K^*) = <eps^(2/q)> (torsion maps to 1,
  and when q = 2 the witness has u * conj(u) = eps on the nose).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intervals import Iv
from .linalg import fincke_pohst
from .quadratic import QuadElt, fundamental_unit, roots_of_unity


def sqrt_r3_element(K):
    """One of the two square roots of r3 inside K."""
    if hasattr(K, "conductor"):
        if K.conductor == 16:
            s = K.element(2, 0, 1, 0)  # theta^2 + 2
        else:
            # difference of the two quadratic Gauss periods
            s = K.element(1, -1, 1, -1)
    else:
        s = K.element(0, 0, 0, 1)
    assert K.mul(s, s) == K.from_rational(K.r3)
    return s


def real_unit_element(K):
    """The fundamental unit of Q(sqrt r3), embedded in K."""
    eps = fundamental_unit(K.r3)
    s = sqrt_r3_element(K)
    e = K.add(K.smul(Fraction(eps.x, 2), K.from_rational(1)),
              K.smul(Fraction(eps.y, 2), s))
    assert K.is_integral(e)
    assert K.cm_conj(e) == e
    return e


def _torsion_units(K):
    one = K.from_rational(1)
    out = []
    for v in fincke_pohst(K.t2_gram(), 4):
        if not any(v):
            continue
        x = K.from_coords(v)
        if K.t2(x) == 4 and K.norm(x) == 1:
            out.append(x)
    assert one in out
    assert len(out) % 2 == 0
    return out


def _element_order(K, x, w, one):
    for d in range(1, w + 1):
        if w % d == 0 and K.pow(x, d) == one:
            return d
    raise AssertionError("torsion order must divide the group order")


def _sqrt_eps_t2_bound(K, eps: QuadElt) -> int:
    """Integer upper bound for 2(eps + 1/eps), eps > 1."""
    prec = 96
    s_hi = Iv.from_int(K.r3).sqrt(prec).hi()
    val = (Fraction(abs(eps.x)) + Fraction(abs(eps.y)) * s_hi) / 2
    if val < 1:
        val = 1 / val
    return int(2 * (val + 1)) + 1


def _unit_index(K, torsion, eps_elem, eps):
    targets = {K.mul(z, eps_elem): z for z in torsion}
    B = _sqrt_eps_t2_bound(K, eps)
    for v in fincke_pohst(K.t2_gram(), B):
        if not any(v):
            continue
        u = K.from_coords(v)
        if K.mul(u, u) in targets:
            return 2, u
    return 1, None


def _sqrt_frac(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    a, b = math.isqrt(p), math.isqrt(q)
    if a * a == p and b * b == q:
        return Fraction(a, b)
    return None


def _pair_sqrt(r3: int, p: Fraction, q: Fraction):
    """(u, v) with (u + v sqrt r3)^2 = p + q sqrt r3, or None."""
    disc = _sqrt_frac(p * p - r3 * q * q)
    if disc is None:
        return None
    for s in (disc, -disc):
        u = _sqrt_frac((p + s) / 2)
        if u is None:
            continue
        if u != 0:
            return u, q / (2 * u)
        v = _sqrt_frac(p / r3)
        if q == 0 and v is not None:
            return Fraction(0), v
    return None


def _rel_sqrt(K, gamma):
    """A coordinate vector xi in O_K with xi^2 = gamma, or None.

    Splits xi = a + b sqrt(r1) over k = Q(sqrt r3): then a^2 + r1 b^2 and
    2ab are the components of gamma, so a^2 is a root of a quadratic over k
    and everything reduces to exact square roots in k.
    """
    c0, c1, c2, c3 = (Fraction(c) for c in gamma)
    r1, r3, f = K.r1, K.r3, K.f
    A = (c0, c3)
    B = (c1, c2 * f / r1)

    def embed(a, b):
        # a + b sqrt(r1) with a = a0 + a1 sqrt(r3), b likewise
        return (a[0], b[0], b[1] * r1 / f, a[1])

    cands = []
    if B == (0, 0):
        a = _pair_sqrt(r3, A[0], A[1])
        if a is not None:
            cands.append(embed(a, (Fraction(0), Fraction(0))))
        b = _pair_sqrt(r3, A[0] / r1, A[1] / r1)
        if b is not None:
            cands.append(embed((Fraction(0), Fraction(0)), b))
    else:
        # a^2 = (A +- sqrt(A^2 - r1 B^2)) / 2, then b = B / (2a)
        p = A[0] * A[0] + r3 * A[1] * A[1] - r1 * (B[0] * B[0] + r3 * B[1] * B[1])
        q = 2 * A[0] * A[1] - 2 * r1 * B[0] * B[1]
        s = _pair_sqrt(r3, p, q)
        if s is not None:
            for sg in (1, -1):
                a = _pair_sqrt(r3, (A[0] + sg * s[0]) / 2, (A[1] + sg * s[1]) / 2)
                if a is None or a == (0, 0):
                    continue
                na = 2 * (a[0] * a[0] - r3 * a[1] * a[1])
                if na == 0:
                    continue
                # B / (2a) = B * conj(2a) / N(2a)
                b = ((B[0] * a[0] - r3 * B[1] * a[1]) / na,
                     (B[1] * a[0] - B[0] * a[1]) / na)
                cands.append(embed(a, b))
    for xi in cands:
        if K.is_integral(xi) and K.mul(xi, xi) == tuple(gamma):
            return xi
    return None


def _unit_index_bicyclic(K, one, gen, eps_elem, eps):
    """Same index as _unit_index, decided without lattice enumeration.

    Any unit u with u^2 in W eps may be normalised by squares of roots of
    unity, so only the classes of 1 and a generator of W / W^2 need a
    square-root test. Fundamental units of negative norm have no totally
    positive associate, which rules the index 2 out immediately.
    """
    if eps.norm() == -1:
        return 1, None
    for g in (one, gen):
        u = _rel_sqrt(K, K.mul(g, eps_elem))
        if u is not None:
            return 2, u
    return 1, None


@dataclass(frozen=True)
class UnitData:
    w: int  # order of W_K
    torsion: tuple  # all of W_K
    generator: tuple  # an element of exact order w
    eps: QuadElt  # fundamental unit of Q(sqrt r3)
    eps_elem: tuple  # the same unit as an element of K
    q: int  # [O_K^* : W_K <eps>]
    sqrt_witness: tuple | None  # u with u^2 = zeta * eps when q = 2


_CACHE: dict[str, UnitData] = {}


def unit_data(K) -> UnitData:
    key = repr(K)
    if key in _CACHE:
        return _CACHE[key]
    torsion = _torsion_units(K)
    w = len(torsion)
    one = K.from_rational(1)
    gen = next(z for z in torsion if _element_order(K, z, w, one) == w)
    eps = fundamental_unit(K.r3)
    eps_elem = real_unit_element(K)
    if hasattr(K, "conductor"):
        q, witness = _unit_index(K, torsion, eps_elem, eps)
    else:
        q, witness = _unit_index_bicyclic(K, one, gen, eps_elem, eps)
    if q == 2:
        # u * conj(u) is totally positive with square eps^2, hence eps itself
        assert K.mul(witness, K.cm_conj(witness)) == eps_elem
    data = UnitData(w, tuple(torsion), gen, eps, eps_elem, q, witness)
    _CACHE[key] = data
    return data


def norm_unit_exponent(K) -> int:
    """e with N_{K/k}(O_K^*) = <eps^e>: 2 for q = 1, 1 for q = 2."""
    return 2 // unit_data(K).q


def kuroda_unit_index(K) -> int:
    """[E_K : E_1 E_2 E_3] over the three quadratic subfields.

    The subgroup E_1 E_2 E_3 is W_1 W_2 <+-eps>, so the index splits as
    q * [W_K : W_1 W_2] = q * w / lcm(w_1, w_2).
    """
    if not hasattr(K, "r1"):
        raise ValueError("bicyclic fields only")
    ud = unit_data(K)
    w1 = len(roots_of_unity(K.r1))
    w2 = len(roots_of_unity(K.r2))
    l = math.lcm(w1, w2)
    assert ud.w % l == 0
    return ud.q * (ud.w // l)
