"""Exact local minima of the norm form at rational points.

For a totally complex quartic K with embeddings phi1, phi2 (one per
conjugate pair), N(x) = |phi1(x)|^2 |phi2(x)|^2 >= 0 and
T2(x) = 2|phi1(x)|^2 + 2|phi2(x)|^2. Fix a unit u with |phi1(u)| != 1
and let E = max(|phi1(u)|, 1/|phi1(u)|) > 1.

Scaling window: if |N(xi - eta)| < kappa for some eta in O_K, put
alpha = (xi - eta) u^j with j chosen so that
kappa^(1/4)/sqrt(E) <= |phi1(alpha)| < kappa^(1/4) sqrt(E) (powers of E
tile the positive reals). Then |phi2(alpha)|^2 = N(alpha)/|phi1(alpha)|^2
< kappa / (sqrt(kappa)/E) = sqrt(kappa) E, so both conjugate moduli are
< kappa^(1/4) sqrt(E) and

    T2(alpha) < 4 sqrt(kappa) E.

alpha is congruent mod O_K to u^j xi, which runs over the finite orbit of
xi under multiplication by u (denominators never grow, so the orbit of
the residue class is finite). Enumerating every lattice translate of
every orbit representative inside that T2 ellipsoid is therefore a
complete search: if no enumerated alpha has |N(alpha)| < kappa then
M(xi, K) >= kappa, and any enumerated alpha with |N(alpha)| = v < kappa
pulls back to an eta with |N(xi - eta)| = v exactly (multiply by u^-j;
units preserve |N|).

Exact minimum at a point: a local sweep gives an upper bound c, one
exhaustion at kappa = c collects every value below c, and the least
achieved value v* is then M(xi, K) exactly (a smaller value would be a
witness inside the enumerated region). A confirming re-run at
kappa = v* is kept as a cheap soundness assertion.

The coordinate boxes |r_i| <= mu_i in the power basis
(1, sqrt(m), sqrt(n), sqrt(mn)) implied by the same scaling argument are
computed for certificates: 4|r_1| <= 2|phi1(alpha)| + 2|phi2(alpha)|
<= 2 kappa^(1/4) (sqrt(E) + 1/sqrt(E)) by the product constraint, and
dividing the other coordinate sums by sqrt|m|, sqrt|n|, sqrt|mn| gives
mu_2, mu_3, mu_4.
"""

import math
from fractions import Fraction

from .intervals import Iv
from .linalg import fincke_pohst
from .units import unit_data

ORBIT_CAP = 100000


def _frac_vec(coords):
    out = tuple(Fraction(c) for c in coords)
    if len(out) != 4:
        raise ValueError("expected 4 integral-basis coordinates")
    return out


def _reduce(coords):
    return tuple(c - math.floor(c) for c in coords)


def scaling_unit(K):
    """Unit of smallest modulus > 1 available: the square root witness
    when the unit index is 2, else the real fundamental unit."""
    ud = unit_data(K)
    return ud.sqrt_witness if ud.q == 2 else ud.eps_elem


def unit_inverse(K, u):
    """Inverse of a unit: product of its conjugates over the norm."""
    if hasattr(K, "galois"):
        w = K.mul(K.mul(K.galois(u, 1, -1), K.galois(u, -1, 1)),
                  K.galois(u, -1, -1))
    else:
        s1 = K.galois_sigma(u)
        s2 = K.galois_sigma(s1)
        w = K.mul(K.mul(s1, s2), K.galois_sigma(s2))
    n = K.norm(u)
    if abs(n) != 1:
        raise ValueError("not a unit")
    inv = K.smul(Fraction(1, 1) / n, w)
    assert K.mul(u, inv) == K.from_rational(1)
    return inv


def unit_abs_upper(K, u, prec=96):
    """Rational upper bound for E = max over embeddings of |phi(u)|."""
    a, b = K.xxbar(u)  # u ubar = a + b sqrt(r3), r3 > 0 real subfield
    assert K.r3 > 0
    s = Iv.from_int(K.r3).sqrt(prec)
    lo_hi = [Iv.from_fraction(a).add(s.mul(Iv.from_fraction(b))),
             Iv.from_fraction(a).sub(s.mul(Iv.from_fraction(b)))]
    return max(m2.sqrt(prec).hi() for m2 in lo_hi if m2.hi() > 0)


def unit_abs_interval(K, u, prec=96):
    """Enclosure of the embedding modulus of u that exceeds 1."""
    a, b = K.xxbar(u)
    assert K.r3 > 0
    s = Iv.from_int(K.r3).sqrt(prec)
    for m2 in (Iv.from_fraction(a).add(s.mul(Iv.from_fraction(b))),
               Iv.from_fraction(a).sub(s.mul(Iv.from_fraction(b)))):
        if m2.lo() > 1:
            return m2.sqrt(prec)
    raise ValueError("unit has no embedding of modulus > 1")


def orbit(K, xi_coords, u):
    """Representatives of xi, u xi, u^2 xi, ... reduced mod O_K, up to the
    first repeat of xi's own class."""
    xi = _frac_vec(xi_coords)
    first = _reduce(xi)
    reps = [first]
    cur = first
    while True:
        cur = _reduce(tuple(K.to_coords(K.mul(u, K.from_coords(cur)))))
        if cur == first:
            return reps
        reps.append(cur)
        if len(reps) > ORBIT_CAP:
            raise OverflowError("orbit cap exceeded")


def _sqrt_upper(q: Fraction, prec=96) -> Fraction:
    return Iv.from_fraction(q).sqrt(prec).hi()


def prop2_exhaust(K, reps, e_upper: Fraction, kappa: Fraction, limit=2000000):
    """Enumerate all alpha ≡ some rep mod O_K with T2(alpha) <= 4 sqrt(kappa) E.

    Returns (best, alpha_coords, rep_index, count): the least |N| achieved
    over the enumeration, one alpha attaining it (coordinates in the
    integral basis, rational), the orbit index of its representative, and
    the total number of points inspected. best is None only if the region
    is empty (never happens for reps containing an integral class, since
    alpha = 0 is enumerated there).
    """
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    bound = 4 * _sqrt_upper(kappa) * Fraction(e_upper)
    G = K.t2_gram()
    best = None
    best_alpha = None
    best_j = None
    count = 0
    for j, rep in enumerate(reps):
        center = [-c for c in rep]
        for v in fincke_pohst(G, bound, center=center, limit=limit):
            alpha = tuple(r + x for r, x in zip(rep, v))
            n = abs(K.norm(K.from_coords(alpha)))
            count += 1
            if best is None or n < best:
                best, best_alpha, best_j = n, alpha, j
    return best, best_alpha, best_j, count


def _local_upper_bound(K, xi, radius=2):
    base = [math.floor(c + Fraction(1, 2)) for c in xi]
    best = None
    best_eta = None
    offsets = range(-radius, radius + 1)
    for o0 in offsets:
        for o1 in offsets:
            for o2 in offsets:
                for o3 in offsets:
                    eta = (base[0] + o0, base[1] + o1,
                           base[2] + o2, base[3] + o3)
                    diff = [x - e for x, e in zip(xi, eta)]
                    n = abs(K.norm(K.from_coords(diff)))
                    if best is None or n < best:
                        best, best_eta = n, eta
    return best, best_eta


def exact_point_minimum(K, xi_coords, unit=None, max_denominator=1 << 20):
    """M(xi, K) = min over eta in O_K of |N(xi - eta)|, exactly.

    Returns (value, eta) with eta an integer coordinate vector attaining
    the minimum. Complete by the scaling-window argument above.
    """
    xi = _frac_vec(xi_coords)
    for c in xi:
        if c.denominator > max_denominator:
            raise ValueError("coordinate denominator too large")
    c0, eta0 = _local_upper_bound(K, xi)
    if c0 == 0:
        return Fraction(0), eta0
    u = unit if unit is not None else scaling_unit(K)
    e_upper = unit_abs_upper(K, u)
    reps = orbit(K, xi, u)
    best, alpha, j, _ = prop2_exhaust(K, reps, e_upper, c0)
    if best is None or best >= c0:
        return c0, eta0
    vstar = best
    # confirming pass: the smaller region at kappa = v* must not contain
    # anything below v*
    chk, _, _, _ = prop2_exhaust(K, reps, e_upper, vstar)
    assert chk is not None and chk >= vstar
    # pull the witness at orbit index j back to xi itself
    uinvj = K.pow(unit_inverse(K, u), j)
    a_elt = K.mul(uinvj, K.from_coords(alpha))
    eta_vec = [x - a for x, a in zip(xi, K.to_coords(a_elt))]
    eta = []
    for e in eta_vec:
        assert Fraction(e).denominator == 1
        eta.append(int(e))
    diff = [x - e for x, e in zip(xi, eta)]
    assert abs(K.norm(K.from_coords(diff))) == vstar
    return vstar, tuple(eta)


def witness_below(K, xi_coords, kappa, max_steps=48, unit=None):
    """Some eta in O_K with |N(xi - eta)| < kappa, or None.

    Truncated version of the scaling-window search: walk u^j xi mod O_K
    for j < max_steps only, so points whose minimizer needs a larger
    imbalance than E^max_steps are missed (the caller must treat None as
    "not found", never as a lower bound). Any returned eta is verified
    exactly, so a hit is always sound.
    """
    xi = _frac_vec(xi_coords)
    kappa = Fraction(kappa)
    if kappa <= 0:
        return None
    u = unit if unit is not None else scaling_unit(K)
    e_upper = unit_abs_upper(K, u)
    bound = 4 * _sqrt_upper(kappa) * e_upper
    G = K.t2_gram()
    x = tuple(xi)
    seen = set()
    for j in range(max_steps):
        if x in seen:
            break
        seen.add(x)
        for cand in fincke_pohst(G, bound, center=list(x), limit=200000):
            diff = [c - v for c, v in zip(x, cand)]
            if abs(K.norm(K.from_coords(diff))) < kappa:
                # pull back: x = u^j xi - m, so the translate for xi is
                # u^-j (cand + m) where m = u^j xi - x
                uinvj = K.pow(unit_inverse(K, u), j)
                m_elt = K.sub(K.mul(K.pow(u, j), K.from_coords(xi)),
                              K.from_coords(list(x)))
                eta_elt = K.mul(uinvj, K.add(K.from_coords(list(cand)),
                                             m_elt))
                eta = []
                for e in K.to_coords(eta_elt):
                    e = Fraction(e)
                    assert e.denominator == 1
                    eta.append(int(e))
                d2 = [c - e for c, e in zip(xi, eta)]
                assert abs(K.norm(K.from_coords(d2))) < kappa
                return tuple(eta)
        x = _reduce(K.to_coords(K.mul(u, K.from_coords(list(x)))))
    return None


def prop2_mu_bounds(K, u, kappa: Fraction, prec=96):
    """Box bounds (mu_1, .., mu_4) in the power basis, as intervals."""
    e = unit_abs_interval(K, u, prec)
    es = e.sqrt(prec)
    k4 = Iv.from_fraction(Fraction(kappa)).sqrt(prec).sqrt(prec)
    mu1 = k4.mul(es.add(Iv.from_int(1).div(es))).div_int(2)
    sm = Iv.from_int(abs(K.r1)).sqrt(prec)
    sn = Iv.from_int(abs(K.r2)).sqrt(prec)
    smn = Iv.from_int(abs(K.r1 * K.r2)).sqrt(prec)
    return (mu1, mu1.div(sm), mu1.div(sn), mu1.div(smn))
