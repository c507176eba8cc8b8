"""Arguments that rule out the norm-Euclidean property.

Each argument returns a certificate dataclass recording every quantity an
independent checker needs.  A certificate with refuted=True proves some
xi has M(xi, K) >= 1; refuted=False means the argument is inconclusive
for that input, never that the field is Euclidean.

* ramified_power_refute: a completely ramified prime p of a subfield k
  with beta = alpha^n mod p forces a relative norm into a short list of
  candidate values; if none of them is a relative norm, K is not
  norm-Euclidean.
* unit_orbit_refute: all lattice points near the unit orbit of a
  non-integral point xi have |N| >= kappa, so M(xi, K) >= kappa.
* residue_class_refute: a residue class coprime to a principal modulus m
  containing no element with |N| < N(m) gives M(cls/m, K) >= 1.
* real_subfield_disc_refute: when the relative discriminant over the real
  quadratic subfield has norm at least 16, the Euclidean property would
  descend to that subfield.
* real_subfield_trace_bound: when traces to the real quadratic subfield
  are all even, M(K) is at least the square of the subfield minimum.
* bicyclic_candidates: the finite scan reducing totally complex bicyclic
  quartic fields with class number one and M(K) < 1 to 21 candidates.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt

from .arith import factorize, is_prime, squarefree_kernel
from .biquad import biquad_field
from .classnum import kuroda_class_number
from .ideals import (
    Ideal,
    ideals_of_norm,
    is_principal,
    prime_ideals_above,
    rational_ideal,
    residue_search,
)
from .minima import orbit, prop2_exhaust, prop2_mu_bounds, unit_abs_interval, unit_abs_upper
from .quadratic import QuadElt, disc_of, represents, splitting
from .tables import NORM_EUCLIDEAN_REAL_QUADRATIC
from .units import unit_data


def field_label(K):
    if hasattr(K, "r1"):
        return f"Q(sqrt({K.r1}), sqrt({K.r2}))"
    return f"cyclic quartic of conductor {K.conductor}"


@dataclass(frozen=True)
class NormCandidate:
    """One value b with b = beta mod p and |N(b)| below the prime norm."""

    value: object  # int when the subfield is Q, else QuadElt
    norm: int  # N_{k/Q}(value)
    status: str  # "negative" | "no-ideal" | "no-generator" | "witness"
    clauses: tuple = ()  # for "no-ideal": (q, residue degree, valuation)
    witness: tuple = None  # for "witness": coordinates of delta


@dataclass(frozen=True)
class RamifiedPowerCertificate:
    field: str
    subfield: int  # 1 for Q, else the radicand of the imaginary subfield
    degree: int  # [K : k]
    prime: object  # generator of the ramified prime of k
    prime_norm: int
    pi: tuple  # coordinates of a generator of the prime of K above it
    alpha: object
    beta: object
    candidates: tuple
    refuted: bool


@dataclass(frozen=True)
class UnitOrbitCertificate:
    field: str
    xi: tuple
    eps: tuple
    kappa: Fraction
    orbit_length: int
    eps_abs: tuple  # interval enclosing the largest embedding modulus of eps
    mu: tuple  # four intervals bounding the inhomogeneous region
    count: int
    best: Fraction
    witness: tuple  # (norm, coordinates, orbit index) when best < kappa
    refuted: bool


@dataclass(frozen=True)
class ResidueClassCertificate:
    field: str
    modulus: tuple
    modulus_norm: int
    cls: tuple  # reduced representative mod the modulus
    parity: str
    found: tuple  # (coordinates, |norm|) pairs with |N| < N(modulus)
    refuted: bool


@dataclass(frozen=True)
class SubfieldDiscCertificate:
    field: str
    real_radicand: int
    real_euclidean: bool
    rel_disc_norm: int
    refuted: bool


@dataclass(frozen=True)
class SubfieldTraceCertificate:
    field: str
    real_radicand: int
    trace_even: bool
    real_minimum: Fraction
    bound: Fraction
    refuted: bool


@dataclass(frozen=True)
class ScanEntry:
    param: tuple
    key: tuple  # canonical (r1, r2), None for entries below the field level
    status: str  # "candidate" | "class-number" | "genus" | "duplicate" | ...
    detail: str = ""


@dataclass(frozen=True)
class CandidateSet:
    case: str
    description: str
    entries: tuple
    candidates: tuple  # canonical keys in scan order


def canonical_key(m, n):
    """Canonical (r1, r2) identifying Q(sqrt m, sqrt n)."""
    K = biquad_field(m, n)
    return (K.r1, K.r2)


def _sqrt_elem(K, d):
    if d == K.r1:
        return K.element(0, 1, 0, 0)
    if d == K.r2:
        return K.element(0, 0, 1, 0)
    if d == K.r3:
        return K.element(0, 0, 0, 1)
    raise ValueError(f"{d} is not a radicand of {field_label(K)}")


def _embed_quad(K, q: QuadElt):
    s = _sqrt_elem(K, q.d)
    return K.add(K.from_rational(Fraction(q.x, 2)), K.smul(Fraction(q.y, 2), s))


def _quad_div(a: QuadElt, b: QuadElt):
    """a/b in the maximal order of Q(sqrt d), or None."""
    nb = b.norm()
    if nb == 0:
        raise ZeroDivisionError("division by zero")
    t = a.mul(b.conj())
    if t.x % nb or t.y % nb:
        return None
    try:
        return QuadElt(a.d, t.x // nb, t.y // nb)
    except ValueError:
        return None


def _quad_divides(b: QuadElt, a: QuadElt) -> bool:
    return _quad_div(a, b) is not None


def _quad_box(d: int, bound: int):
    """All nonzero integral elements of Q(sqrt d), d < 0, with norm <= bound."""
    assert d < 0
    out = []
    ymax = isqrt(4 * bound // abs(d))
    for y in range(-ymax, ymax + 1):
        xmax = isqrt(4 * bound - abs(d) * y * y)
        for x in range(-xmax, xmax + 1):
            if x == 0 and y == 0:
                continue
            try:
                out.append(QuadElt(d, x, y))
            except ValueError:
                continue
    out.sort(key=lambda q: (q.norm(), q.x, q.y))
    return out


def _principal_ideal(K, x):
    rows = []
    for i in range(4):
        e = K.from_coords([1 if j == i else 0 for j in range(4)])
        co = [Fraction(c) for c in K.to_coords(K.mul(x, e))]
        if any(c.denominator != 1 for c in co):
            raise ValueError("modulus generator must be integral")
        rows.append([int(c) for c in co])
    return Ideal(K, rows)


def _divides_ideal(P: Ideal, I: Ideal) -> bool:
    return all(P.contains(row) for row in I.hnf)


def _norm_clauses(K, n: int):
    """Primes q | n whose valuation is not a multiple of the residue degree.

    K is Galois over Q, so every prime above q has one residue degree f,
    and q^v divides an ideal norm only when f | v.
    """
    out = []
    for q, v in sorted(factorize(n).items()):
        f = prime_ideals_above(K, q)[0][2]
        if v % f:
            out.append((q, f, v))
    return tuple(out)


def _relative_unit_images(K, d):
    """Relative norms to Q(sqrt d) attainable by units, with a unit for each.

    The unit group is generated by the torsion generator together with
    sqrt_witness (when the unit index q is 2) or the fundamental unit of
    the real subfield, and relative norms of units are roots of unity of
    the imaginary target, so the closure is a small finite group.
    """
    ud = unit_data(K)
    eta = ud.sqrt_witness if ud.q == 2 else ud.eps_elem
    one = K.from_rational(1)
    out = {K.relative_norm(one, d): one}
    frontier = [one]
    while frontier:
        u = frontier.pop()
        for g in (ud.generator, eta):
            v = K.mul(u, g)
            key = K.relative_norm(v, d)
            if key not in out:
                out[key] = v
                frontier.append(v)
    assert len(out) <= 12
    return out


def ramified_power_refute(K, k_rad: int, p_gen, alpha, beta, pi_hint=None):
    """Refute via a completely ramified prime of the subfield k.

    k_rad is 1 (k = Q) or the radicand of an imaginary quadratic subfield.
    p_gen generates a prime p of k, completely ramified in K as P^n with
    n = [K : k] and P principal, and beta = alpha^n mod p with alpha and
    beta prime to p.  Were K norm-Euclidean, some delta in O_K would have
    N_{K/k}(delta) = beta mod p and |N_{k/Q}(N_{K/k}(delta))| < N(p), so
    the candidate list below is complete.  K is totally complex, so
    relative norms to Q are nonnegative and relative norms to an
    imaginary k have nonnegative norm: a candidate b survives only if
    some ideal of norm |N(b)| is principal with a generator whose
    relative norm falls in b's unit class.

    pi_hint, when given, is an element generating P; it is verified and
    spares the exhaustive generator search, whose enumeration bound grows
    with the regulator.
    """
    if k_rad == 1:
        degree = 4
        p0 = p_gen
        if not isinstance(p0, int) or not is_prime(p0):
            raise ValueError("p must be a rational prime when k = Q")
        prime_norm = p0
        if alpha % p0 == 0 or beta % p0 == 0:
            raise ValueError("alpha and beta must be prime to p")
        if (beta - alpha**4) % p0:
            raise ValueError("beta is not alpha^4 mod p")
        p_ideal = rational_ideal(K, p0)
        b0 = beta % p0
        values = [b0, b0 - p0]
    elif k_rad in (getattr(K, "r1", None), getattr(K, "r2", None)):
        degree = 2
        d = k_rad
        if not all(isinstance(t, QuadElt) and t.d == d for t in (p_gen, alpha, beta)):
            raise ValueError("p, alpha, beta must lie in the chosen subfield")
        prime_norm = p_gen.norm()
        if is_prime(prime_norm):
            p0 = prime_norm
        else:
            p0 = isqrt(prime_norm)
            if p0 * p0 != prime_norm or not is_prime(p0) or splitting(d, p0) != "inert":
                raise ValueError("p does not generate a prime of k")
        if _quad_divides(p_gen, alpha) or _quad_divides(p_gen, beta):
            raise ValueError("alpha and beta must be prime to p")
        if not _quad_divides(p_gen, beta.sub(alpha.mul(alpha))):
            raise ValueError("beta is not alpha^2 mod p")
        p_ideal = _principal_ideal(K, _embed_quad(K, p_gen))
        values = [b for b in _quad_box(d, prime_norm - 1) if _quad_divides(p_gen, b.sub(beta))]
    else:
        raise ValueError("the subfield must be Q or an imaginary quadratic subfield")

    P = None
    for prime, e, _ in prime_ideals_above(K, p0):
        if e == degree and prime.pow(degree) == p_ideal:
            P = prime
            break
    if P is None:
        raise ValueError("p is not completely ramified in K")
    if pi_hint is not None:
        if _principal_ideal(K, pi_hint) != P:
            raise ValueError("pi_hint does not generate the prime above p")
        pi = [int(c) for c in K.to_coords(pi_hint)]
    else:
        ok, pi = is_principal(P)
        if not ok:
            raise ValueError("the prime above p is not principal, so h(K) > 1")

    candidates = []
    witnessed = False
    for b in values:
        if k_rad == 1:
            nb = b
            if nb < 0:
                candidates.append(NormCandidate(b, nb, "negative"))
                continue
        else:
            nb = b.norm()
        ideals = ideals_of_norm(K, nb)
        if not ideals:
            candidates.append(NormCandidate(b, nb, "no-ideal", clauses=_norm_clauses(K, nb)))
            continue
        wit = None
        if k_rad == 1:
            # any element of norm b generates an ideal of norm b, and any
            # generator of such an ideal has norm exactly b (norms are >= 0)
            for I in ideals:
                ok, g = is_principal(I)
                if ok:
                    wit = tuple(g)
                    break
        else:
            images = _relative_unit_images(K, d)
            for I in ideals:
                ok, g = is_principal(I)
                if not ok:
                    continue
                gv = K.from_coords([Fraction(c) for c in g])
                ng = K.relative_norm(gv, d)
                r = _quad_div(b, ng)
                if r is None or r not in images:
                    continue
                delta = K.mul(images[r], gv)
                assert K.relative_norm(delta, d) == b
                wit = tuple(K.to_coords(delta))
                break
        if wit is not None:
            candidates.append(NormCandidate(b, nb, "witness", witness=wit))
            witnessed = True
        else:
            candidates.append(NormCandidate(b, nb, "no-generator"))

    return RamifiedPowerCertificate(
        field=field_label(K),
        subfield=k_rad,
        degree=degree,
        prime=p_gen,
        prime_norm=prime_norm,
        pi=tuple(pi),
        alpha=alpha,
        beta=beta,
        candidates=tuple(candidates),
        refuted=not witnessed,
    )


def unit_orbit_refute(K, xi, eps, kappa, limit=2000000):
    """Lower bound M(xi, K) by exhausting lattice points near the eps-orbit.

    xi is a non-integral point, eps an integral unit with an embedding of
    modulus > 1.  Every alpha congruent to an orbit representative with
    T2(alpha) within the bound is enumerated; if all have |N| >= kappa,
    then M(xi, K) >= kappa, which refutes the Euclidean property when
    kappa >= 1.
    """
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if not K.is_integral(eps) or K.norm(eps) not in (1, -1):
        raise ValueError("eps must be an integral unit")
    coords = [Fraction(c) for c in K.to_coords(xi)]
    if all(c.denominator == 1 for c in coords):
        raise ValueError("xi is integral, so M(xi, K) = 0")
    e_iv = unit_abs_interval(K, eps)
    reps = orbit(K, coords, eps)
    best, best_alpha, best_j, count = prop2_exhaust(K, reps, unit_abs_upper(K, eps), kappa, limit=limit)
    mus = prop2_mu_bounds(K, eps, kappa)
    witness = None
    if best is not None and best < kappa:
        witness = (best, tuple(best_alpha), best_j)
    return UnitOrbitCertificate(
        field=field_label(K),
        xi=tuple(coords),
        eps=tuple(K.to_coords(eps)),
        kappa=kappa,
        orbit_length=len(reps),
        eps_abs=(e_iv.lo(), e_iv.hi()),
        mu=tuple((m.lo(), m.hi()) for m in mus),
        count=count,
        best=best,
        witness=witness,
        refuted=kappa >= 1 and (best is None or best >= kappa),
    )


def residue_class_refute(K, modulus, cls, parity="any"):
    """Refute via a residue class with no small norm.

    modulus is an integral element generating the ideal m, cls an integral
    element coprime to m.  If no x = cls mod m has |N(x)| < N(m), then
    xi = cls/modulus has M(xi, K) >= 1.  parity="odd" restricts the search
    to odd norms, which is complete only when every prime above 2 divides
    m, since then the class contains no element of even norm.
    """
    I = _principal_ideal(K, modulus)
    nm = I.norm()
    if nm <= 1:
        raise ValueError("the modulus must be a nonunit")
    ccoords = [Fraction(c) for c in K.to_coords(cls)]
    if any(c.denominator != 1 for c in ccoords):
        raise ValueError("the class representative must be integral")
    for p in sorted(factorize(nm)):
        for P, _, _ in prime_ideals_above(K, p):
            if _divides_ideal(P, I) and P.contains(ccoords):
                raise ValueError("the class is not coprime to the modulus")
    if parity == "odd":
        for P, _, _ in prime_ideals_above(K, 2):
            if not _divides_ideal(P, I):
                raise ValueError("parity='odd' needs every prime above 2 to divide the modulus")
    found = residue_search(K, I, cls, nm, parity=parity)
    return ResidueClassCertificate(
        field=field_label(K),
        modulus=tuple(K.to_coords(modulus)),
        modulus_norm=nm,
        cls=tuple(I.reduce(ccoords)),
        parity=parity,
        found=tuple((tuple(x), n) for x, n in found),
        refuted=not found,
    )


def real_subfield_disc_refute(L):
    """Refute via the discriminant over the real quadratic subfield.

    When the relative discriminant d(L/K) over the real quadratic
    subfield K has norm at least 16, a norm-Euclidean L forces K to be
    norm-Euclidean.  The real quadratic norm-Euclidean fields are known,
    so L is refuted when K is not on the list.
    """
    dk = disc_of(L.r3)
    nd, rem = divmod(abs(L.disc), dk * dk)
    assert rem == 0
    real_ok = L.r3 in NORM_EUCLIDEAN_REAL_QUADRATIC
    return SubfieldDiscCertificate(
        field=field_label(L),
        real_radicand=L.r3,
        real_euclidean=real_ok,
        rel_disc_norm=nd,
        refuted=not real_ok and nd >= 16,
    )


def real_subfield_trace_bound(L, real_minimum):
    """Bound M(L) below by the squared minimum of the real subfield.

    Applies when Tr_{L/K}(O_L) lies in 2 O_K, i.e. (w + conj(w))/2 is
    integral for every integral basis element w: then any xi realizing a
    minimum close to M(K) in the subfield has M(xi, L) >= M(K)^2.
    real_minimum must be a lower bound for M(K).
    """
    half = Fraction(1, 2)
    trace_even = True
    for i in range(4):
        w = L.from_coords([1 if j == i else 0 for j in range(4)])
        t = L.smul(half, L.add(w, L.cm_conj(w)))
        if not L.is_integral(t):
            trace_even = False
            break
    real_minimum = Fraction(real_minimum)
    bound = real_minimum * real_minimum
    return SubfieldTraceCertificate(
        field=field_label(L),
        real_radicand=L.r3,
        trace_even=trace_even,
        real_minimum=real_minimum,
        bound=bound,
        refuted=trace_even and bound >= 1,
    )


def _class_number_floor(K):
    """Elementary lower bound for h(K), exact enough to prune scans.

    Genus theory: a quadratic field whose discriminant has t prime
    factors has 2^(t-1) dividing the narrow class number, and the wide
    class number is at least half the narrow one.  Those floors feed the
    class number formula h(K) = q h1 h2 h3 wK / (w1 w2) with q >= 1.
    """

    def fl(d):
        t = len(factorize(abs(disc_of(d))))
        return 2 ** (t - 1) if d < 0 else max(2 ** (t - 2), 1)

    rads = (K.r1, K.r2, K.r3)
    if -1 in rads and -3 in rads:
        wk = 12
    elif set(rads) == {-1, 2, -2}:
        wk = 8
    elif -1 in rads:
        wk = 4
    elif -3 in rads:
        wk = 6
    else:
        wk = 2
    w12 = 1
    for d in (K.r1, K.r2):
        w12 *= 4 if d == -1 else 6 if d == -3 else 2
    return max(Fraction(fl(K.r1) * fl(K.r2) * fl(K.r3) * wk, w12), Fraction(1))


def _norm2_case():
    """Fields whose maximal order has an ideal of norm 2.

    With h(K) = 1 that ideal is delta O_K, and the relative norms of
    delta to both imaginary quadratic subfields have norm 2.  A norm 2
    element over Q(sqrt d) needs x^2 + |d| y^2 to be 2 (d = 2, 3 mod 4)
    or 8 (d = 1 mod 4), so |d| <= 8.
    """
    entries = []
    good = []
    for d in (-1, -2, -3, -5, -6, -7):
        w = represents(d, 2)
        if w is None:
            entries.append(ScanEntry(("d", d), None, "no-norm-2"))
        else:
            entries.append(ScanEntry(("d", d), None, "norm-2", detail=f"({w.x} + {w.y} sqrt({d}))/2"))
            good.append(d)
    cands = []
    for a, b in combinations(good, 2):
        K = biquad_field(a, b)
        key = (K.r1, K.r2)
        h = kuroda_class_number(K)
        if h == 1:
            entries.append(ScanEntry(("pair", (a, b)), key, "candidate"))
            cands.append(key)
        else:
            entries.append(ScanEntry(("pair", (a, b)), key, "class-number", detail=f"h = {h}"))
    return CandidateSet(
        "norm-2",
        "an ideal of norm 2 exists: both imaginary quadratic subfields represent 2",
        tuple(entries),
        tuple(cands),
    )


def _gaussian_case():
    """K contains Q(i) and 2 is inert in the real subfield Q(sqrt n).

    Then n = 5 mod 8 and gamma = (1 + sqrt(-n))/(1 + i) is integral with
    N_{K/Q(sqrt(-n))}(gamma) = sqrt(-n) mod 2.  An element of that class
    with norm below N_{K/Q}(2) = 16 needs x even and y odd in
    x^2 + n y^2, so the least norm is n: only n < 16 survives.
    """
    entries = []
    cands = []
    for n in (5, 13):
        assert n % 8 == 5 and splitting(n, 2) == "inert"
        K = biquad_field(-1, n)
        assert (K.r1, K.r2, K.r3) == (-1, -n, n)
        gamma = K.mul(K.element(1, 0, 1, 0), K.element(Fraction(1, 2), Fraction(-1, 2), 0, 0))
        assert K.is_integral(gamma)
        nr = K.relative_norm(gamma, -n)
        two = QuadElt(-n, 4, 0)
        assert _quad_divides(two, nr.sub(QuadElt(-n, 0, 2)))
        key = (K.r1, K.r2)
        h = kuroda_class_number(K)
        if h == 1:
            entries.append(ScanEntry(("n", n), key, "candidate"))
            cands.append(key)
        else:
            entries.append(ScanEntry(("n", n), key, "class-number", detail=f"h = {h}"))
    return CandidateSet(
        "gaussian",
        "K contains Q(i), 2 inert in the real subfield: n = 5 mod 8 and n < 16",
        tuple(entries),
        tuple(cands),
    )


def _sqrt_minus2_case():
    """K contains Q(sqrt -2) and 2 is inert in the real subfield Q(sqrt n).

    alpha0 = sqrt(-2n) + (1 + sqrt n)/2 is integral and its norm to
    Q(sqrt(-2n)) is 1 + sqrt(-2n) mod 2, a class of least norm 1 + 2n,
    so n = 5 is the only survivor of n = 5 mod 8, n < 8.
    """
    entries = []
    cands = []
    for n in (5,):
        assert n % 8 == 5 and splitting(n, 2) == "inert"
        K = biquad_field(-2, n)
        assert (K.r1, K.r2, K.r3) == (-2, -2 * n, n)
        alpha0 = K.element(Fraction(1, 2), 0, 1, Fraction(1, 2))
        assert K.is_integral(alpha0)
        nr = K.relative_norm(alpha0, -2 * n)
        two = QuadElt(-2 * n, 4, 0)
        assert _quad_divides(two, nr.sub(QuadElt(-2 * n, 2, 2)))
        key = (K.r1, K.r2)
        h = kuroda_class_number(K)
        if h == 1:
            entries.append(ScanEntry(("n", n), key, "candidate"))
            cands.append(key)
        else:
            entries.append(ScanEntry(("n", n), key, "class-number", detail=f"h = {h}"))
    return CandidateSet(
        "sqrt-minus-2",
        "K contains Q(sqrt -2), 2 inert in the real subfield: n = 5",
        tuple(entries),
        tuple(cands),
    )


def _inert_complex_case():
    """2 is inert in an imaginary quadratic subfield Q(sqrt n), n = 5 mod 8.

    The residue field of 2 O_k is F_4, whose units are squares, so the
    power congruence holds for beta = (1 + sqrt n)/2 and the candidates
    are the b = beta mod 2 with |N(b)| < 4.  Their least norm is |n|/4,
    leaving n in {-3, -11}.
    """
    entries = []
    cands = []
    seen = set()

    def classify(n, m, need_norm3):
        K = biquad_field(m, n)
        key = (K.r1, K.r2)
        if need_norm3:
            w = represents(K.r3, 3)
            if w is None:
                entries.append(ScanEntry(("n", n, "m", m), key, "no-norm-3"))
                return
        if key in seen:
            entries.append(ScanEntry(("n", n, "m", m), key, "duplicate"))
            return
        h = kuroda_class_number(K)
        if h == 1:
            seen.add(key)
            entries.append(ScanEntry(("n", n, "m", m), key, "candidate"))
            cands.append(key)
        else:
            entries.append(ScanEntry(("n", n, "m", m), key, "class-number", detail=f"h = {h}"))

    # n = -11: the candidates are exactly (+-1 +- sqrt(-11))/2 with equal
    # signs, both of norm 3.  A delta with N_{K/k}(delta) among them has
    # |N_{K/Q}(delta)| = 3, and its norm to the real quadratic subfield is
    # totally positive of norm 3, so that subfield must represent 3.
    assert splitting(-11, 2) == "inert"
    beta = QuadElt(-11, 1, 1)
    two = QuadElt(-11, 4, 0)
    cand_b = [b for b in _quad_box(-11, 3) if _quad_divides(two, b.sub(beta))]
    assert cand_b == [beta.neg(), beta] and all(b.norm() == 3 for b in cand_b)
    # m < 0: the real radicand is the kernel of 11|m|; in Q(sqrt m) itself
    # the norm form x^2 + |m| y^2 = 3 forces |m| <= 3.
    for m in (-1, -2):
        classify(-11, m, True)
    # m > 0 (m = 2 or 3 mod 4): h(K) = q h(m) h(-11) h(k3) wK / 4 with
    # k3 = kernel(-11 m) imaginary.  The genus floor 2^(t-1) on h(k3)
    # forces disc(k3) to be a prime power, so k3 is -1, -2, or -p with
    # p = 3 mod 4; the -p option puts 11 p in m and repeats a field with
    # both radicands 1 mod 4 or fails the floor on h(m).  That leaves
    # m in {11, 22} beside the sub-floor m = 2.
    for m in (2, 11, 22):
        classify(-11, m, True)

    # n = -3: beta = (1 + sqrt(-3))/2 is a unit, so its class carries no
    # norm obstruction.  Instead rho + sqrt m with rho = (-1 + sqrt(-3))/2
    # has norm 1 + m - sqrt m to Q(sqrt m) and 1 - m - sqrt(-3m) to
    # Q(sqrt(-3m)), classes = 1 + m + sqrt m resp. 1 - m + sqrt(-3m)
    # mod 2 whose least norms bound m.
    assert splitting(-3, 2) == "inert"

    def check_class(m):
        K = biquad_field(m, -3)
        rho = K.smul(Fraction(1, 2), K.add(K.from_rational(-1), _sqrt_elem(K, -3)))
        el = K.add(rho, _sqrt_elem(K, m))
        if m < 0:
            nr = K.relative_norm(el, m)
            assert nr in (QuadElt(m, 2 * (1 + m), 2), QuadElt(m, 2 * (1 + m), -2))
        else:
            nr = K.relative_norm(el, -3 * m)
            assert nr in (QuadElt(-3 * m, 2 * (1 - m), 2), QuadElt(-3 * m, 2 * (1 - m), -2))

    # m < 0, m = 2 mod 4: both components of 1 + m + sqrt m are odd, so
    # the class minimum is 1 + |m|, and 1 + |m| < 16.
    for m in (-2, -6, -10, -14):
        check_class(m)
        classify(-3, m, False)
    # m < 0, m = 3 mod 4: the sqrt m component is odd, minimum |m| < 16.
    for m in (-1, -5, -13):
        check_class(m)
        classify(-3, m, False)
    # m > 0 prime to 3, m = 2 mod 4: over Q(sqrt(-3m)) both components of
    # 1 - m + sqrt(-3m) are odd, minimum 1 + 3m < 16, so m = 2.
    for m in (2,):
        check_class(m)
        classify(-3, m, False)
    # m > 0 prime to 3, m = 3 mod 4: disc(-3m) = -12m has at least three
    # prime factors, so 4 | h(Q(sqrt(-3m))) and h(K) >= 2: empty.
    # m > 0, 3 | m, m = 3 m': the complex radicand kernel(-3m) = -m' and
    # the real one 3 m' both carry genus floors; only m' = 2 and m' = 1
    # stay below h(K) = 2.
    for m in (6, 3):
        classify(-3, m, False)

    return CandidateSet(
        "inert-complex",
        "2 inert in an imaginary quadratic subfield: n in {-3, -11}, the other radicand 2 or 3 mod 4",
        tuple(entries),
        tuple(cands),
    )


def _unramified_case():
    """2 unramified: all three radicands are 1 mod 4.

    For an imaginary radicand m the class of (1 + sqrt m)/2 mod 2 has
    least norm |m|/4 over the half-integer grid, and a candidate class
    must reach below N(2) = 16, so |m| < 64 for both imaginary radicands.
    """
    entries = []
    cands = []
    rads = [d for d in range(-3, -64, -4) if squarefree_kernel(d) == d]
    for m, n in combinations(rads, 2):
        K = biquad_field(m, n)
        key = (K.r1, K.r2)
        assert key == (m, n)
        floor = _class_number_floor(K)
        if floor >= 2:
            entries.append(ScanEntry(("pair", (m, n)), key, "genus", detail=f"h >= {floor}"))
            continue
        h = kuroda_class_number(K)
        if h == 1:
            entries.append(ScanEntry(("pair", (m, n)), key, "candidate"))
            cands.append(key)
        else:
            entries.append(ScanEntry(("pair", (m, n)), key, "class-number", detail=f"h = {h}"))
    return CandidateSet(
        "unramified",
        "2 unramified: both imaginary radicands 1 mod 4 with |m| < 64",
        tuple(entries),
        tuple(cands),
    )


def bicyclic_candidates():
    """The five-case scan for totally complex bicyclic quartic fields.

    Every such field with class number one and M(K) < 1 appears: if no
    ideal of norm 2 exists, an imaginary radicand not 1 mod 4 forces a
    nonprincipal norm 2 ideal in its subfield unless it is -1 or -2
    (the gaussian and sqrt(-2) cases, with 2 inert in the real subfield;
    2 inert in an imaginary subfield is the inert-complex case), and
    fields with 2 unramified have all radicands 1 mod 4.
    """
    return (
        _norm2_case(),
        _gaussian_case(),
        _sqrt_minus2_case(),
        _inert_complex_case(),
        _unramified_case(),
    )


def candidate_fields():
    """Canonical keys of the 21 scan survivors, in scan order."""
    out = []
    for cs in bicyclic_candidates():
        for key in cs.candidates:
            if key not in out:
                out.append(key)
    return tuple(out)
