import random
from fractions import Fraction

import pytest

from cmeuclid.cyclic import CYCLIC_CM_CONDUCTORS, CyclicField, cyclic_field
from cmeuclid.intervals import Iv
from cmeuclid.linalg import det_int


def test_conductor_list():
    assert CYCLIC_CM_CONDUCTORS == (5, 13, 16, 29, 37, 53, 61)
    for f in (7, 8, 12, 17):
        with pytest.raises(ValueError):
            CyclicField(f)


def test_disc_is_conductor_power():
    # two quartic characters of conductor f and one quadratic one
    assert cyclic_field(5).disc == 125
    assert cyclic_field(13).disc == 2197
    assert cyclic_field(29).disc == 24389
    assert cyclic_field(37).disc == 50653
    assert cyclic_field(53).disc == 148877
    assert cyclic_field(61).disc == 226981
    assert cyclic_field(16).disc == 2048


def test_real_subfield_radicand():
    assert cyclic_field(5).r3 == 5
    assert cyclic_field(13).r3 == 13
    assert cyclic_field(16).r3 == 2


def test_trace_norm_integrality_and_positivity():
    rng = random.Random(3)
    for f in CYCLIC_CM_CONDUCTORS:
        K = cyclic_field(f)
        for _ in range(15):
            x = tuple(Fraction(rng.randrange(-5, 6)) for _ in range(4))
            assert K.trace(x).denominator == 1
            nm = K.norm(x)
            assert nm.denominator == 1 and nm >= 0


def test_norm_multiplicative_and_galois():
    rng = random.Random(5)
    for f in (5, 16, 29):
        K = cyclic_field(f)
        for _ in range(15):
            x = tuple(Fraction(rng.randrange(-4, 5)) for _ in range(4))
            y = tuple(Fraction(rng.randrange(-4, 5)) for _ in range(4))
            assert K.norm(K.mul(x, y)) == K.norm(x) * K.norm(y)
            # norm = product over the Galois orbit
            prod = x
            z = x
            for _ in range(3):
                z = K.galois_sigma(z)
                prod = K.mul(prod, z)
            assert prod == (K.norm(x), 0, 0, 0) or K.from_rational(K.norm(x)) == prod


def test_sigma_has_order_four_and_cm_is_sigma_squared():
    rng = random.Random(7)
    for f in CYCLIC_CM_CONDUCTORS:
        K = cyclic_field(f)
        x = tuple(Fraction(rng.randrange(-4, 5)) for _ in range(4))
        z = x
        for _ in range(4):
            z = K.galois_sigma(z)
        assert z == x
        assert K.galois_sigma(K.galois_sigma(x)) == K.cm_conj(x)


def test_zeta5_relations():
    K = cyclic_field(5)
    # eta_0 is a primitive fifth root of unity: 1 + z + z^2 + z^3 + z^4 = 0
    z = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    one = K.from_rational(Fraction(1))
    acc = one
    p = one
    for _ in range(4):
        p = K.mul(p, z)
        acc = K.add(acc, p)
    assert acc == (0, 0, 0, 0)
    assert K.norm(z) == 1
    assert K.norm(K.sub(one, z)) == 5  # N(1 - zeta5)


def test_f16_theta_relations():
    K = cyclic_field(16)
    th = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
    t4 = K.pow(th, 4)
    t2 = K.mul(th, th)
    # theta^4 + 4 theta^2 + 2 = 0
    lhs = K.add(K.add(t4, K.smul(4, t2)), K.from_rational(Fraction(2)))
    assert lhs == (0, 0, 0, 0)
    assert K.norm(th) == 2
    one = K.from_rational(Fraction(1))
    assert K.norm(K.add(one, th)) == 7  # the class of 1+theta mod 2 contains norm 7


def test_gram_ab_norm_identity():
    rng = random.Random(9)
    for f in CYCLIC_CM_CONDUCTORS:
        K = cyclic_field(f)
        A, B = K.gram_ab()
        for _ in range(15):
            c = [Fraction(rng.randrange(-5, 6)) for _ in range(4)]
            a = sum(A[i][j] * c[i] * c[j] for i in range(4) for j in range(4))
            b = sum(B[i][j] * c[i] * c[j] for i in range(4) for j in range(4))
            assert a * a - K.r3 * b * b == K.norm(c)


def test_t2_gram_det_and_positivity():
    for f in CYCLIC_CM_CONDUCTORS:
        K = cyclic_field(f)
        G = K.t2_gram()
        assert det_int(G) == K.disc
        for k in (1, 2, 3, 4):
            assert det_int([row[:k] for row in G[:k]]) > 0


def test_embeddings_consistent_with_grams():
    for f in (5, 13, 16):
        K = cyclic_field(f)
        embs = K.basis_embeddings(prec=128)
        A, B = K.gram_ab()
        s3 = Iv.from_int(K.r3).sqrt(160)
        for j, (re, im) in enumerate(embs[0]):
            q = re.sqr(160).add(im.sqr(160), 160)
            c = [Fraction(1 if t == j else 0) for t in range(4)]
            a = sum(A[i][k] * c[i] * c[k] for i in range(4) for k in range(4))
            b = sum(B[i][k] * c[i] * c[k] for i in range(4) for k in range(4))
            for sgn in (1, -1):
                t = Iv.from_fraction(a, 160).add(
                    Iv.from_fraction(b, 160).mul(s3, 160).mul_int(sgn, 160), 160)
                if q.lo() <= t.hi() and t.lo() <= q.hi():
                    break
            else:
                raise AssertionError((f, j))
        # sum of periods is -1 for prime conductors
        if f != 16:
            tot_re = embs[0][0][0]
            tot_im = embs[0][0][1]
            for re, im in embs[0][1:]:
                tot_re = tot_re.add(re, 160)
                tot_im = tot_im.add(im, 160)
            assert tot_re.contains(-1) and tot_im.contains(0)


def _norm_reachable(K, n):
    # subset-sum over the residue degrees read off the actual factorization
    # of (p), independent of the kernel arithmetic in ideal_norm_exists
    from cmeuclid.arith import factorize
    from cmeuclid.ideals import prime_ideals_above

    for p, e in factorize(n).items():
        degs = [f for _, _, f in prime_ideals_above(K, p)]
        reach = {0}
        for _ in range(e):
            reach |= {r + f for f in degs for r in reach if r + f <= e}
        if e not in reach:
            return False
    return True


def test_ideal_norm_exists_matches_decompositions():
    for f in (13, 29, 16):
        K = cyclic_field(f)
        for n in range(1, 41):
            assert K.ideal_norm_exists(n) == _norm_reachable(K, n), (f, n)
    K = cyclic_field(29)
    assert all(K.ideal_norm_exists(n) for n in (7, 16, 25, 29))
    assert not any(K.ideal_norm_exists(n) for n in (20, 2, 5))
    K = cyclic_field(16)
    assert K.ideal_norm_exists(7) and K.ideal_norm_exists(2)
    assert not K.ideal_norm_exists(3) and not K.ideal_norm_exists(9)
    assert not K.ideal_norm_exists(0)
    assert K.ideal_norm_exists(-14)  # sign-free


def test_splitting_data():
    # q splits completely iff q mod f lies in the field's kernel subgroup
    K = cyclic_field(16)
    assert K.kernel == frozenset({1, 7})
    assert K.residue_degree(7) == 1
    assert K.residue_degree(3) == 4
    assert K.residue_degree(17) == 1
    K = cyclic_field(29)
    assert K.residue_degree(2) == 4  # 2 is a non-residue mod 29
    assert sorted(K.kernel) == sorted(
        {pow(x, 4, 29) for x in range(1, 29)})
