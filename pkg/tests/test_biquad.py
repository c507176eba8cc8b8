import random
from fractions import Fraction

import pytest

from cmeuclid.biquad import BiquadField
from cmeuclid.linalg import det_int
from cmeuclid.quadratic import QuadElt


DISC_CASES = {
    (-1, 5): 400,
    (-2, -7): 3136,
    (-3, -7): 441,
    (-1, -2): 256,
    (-1, -3): 144,
    (-1, 2): 256,
    (-3, 5): 225,
    (-2, 5): 1600,
    (-7, 5): 1225,
    (-3, -11): 1089,
    (-3, 2): 576,
    (-2, -3): 576,
    (-2, -11): 7744,
    (-3, 17): 2601,
    (-3, -19): 3249,
    (-29, -30): 48441600,
}


def test_radicand_triple():
    K = BiquadField(-1, 5)
    assert set((K.r1, K.r2, K.r3)) == {-1, -5, 5}
    assert K.r3 == 5 and K.r1 < 0 and K.r2 < 0
    K = BiquadField(-2, -7)
    assert K.r3 == 14
    K = BiquadField(-3, 2)
    assert K.r3 == 2 and set((K.r1, K.r2)) == {-3, -6}
    with pytest.raises(ValueError):
        BiquadField(2, 3)  # totally real, not CM
    with pytest.raises(ValueError):
        BiquadField(-2, -8)  # not squarefree
    with pytest.raises(ValueError):
        BiquadField(-2, -2)


def test_disc_matches_product_of_subfield_discs():
    for (m, n), d in DISC_CASES.items():
        K = BiquadField(m, n)
        assert K.disc == d, (m, n)


def test_integral_basis_closed_under_multiplication():
    rng = random.Random(3)
    for m, n in [(-1, 5), (-2, -7), (-3, -7), (-1, -3), (-2, -11), (-29, -30)]:
        K = BiquadField(m, n)
        for _ in range(20):
            c1 = [rng.randrange(-5, 6) for _ in range(4)]
            c2 = [rng.randrange(-5, 6) for _ in range(4)]
            x = K.from_coords(c1)
            y = K.from_coords(c2)
            z = K.mul(x, y)
            assert all(v.denominator == 1 for v in K.to_coords(z))


def test_trace_and_norm_are_rational_integers():
    rng = random.Random(5)
    for m, n in [(-1, 5), (-2, -7), (-3, -11), (-1, 2)]:
        K = BiquadField(m, n)
        for _ in range(25):
            x = K.from_coords([rng.randrange(-7, 8) for _ in range(4)])
            t = K.trace(x)
            nm = K.norm(x)
            assert t.denominator == 1
            assert nm.denominator == 1
            assert nm >= 0  # totally complex field


def test_norm_multiplicative():
    rng = random.Random(7)
    K = BiquadField(-2, -7)
    for _ in range(25):
        x = K.from_coords([rng.randrange(-4, 5) for _ in range(4)])
        y = K.from_coords([rng.randrange(-4, 5) for _ in range(4)])
        assert K.norm(K.mul(x, y)) == K.norm(x) * K.norm(y)


def test_norm_via_ab_grams():
    rng = random.Random(9)
    for m, n in [(-1, 5), (-2, -7), (-3, -19), (-29, -30)]:
        K = BiquadField(m, n)
        A, B = K.gram_ab()
        for _ in range(25):
            c = [Fraction(rng.randrange(-6, 7)) for _ in range(4)]
            a = sum(A[i][j] * c[i] * c[j] for i in range(4) for j in range(4))
            b = sum(B[i][j] * c[i] * c[j] for i in range(4) for j in range(4))
            assert a * a - K.r3 * b * b == K.norm(K.from_coords(c))
            # a is half the sum of the two |phi|^2, so positive unless x = 0
            assert a > 0 or all(ci == 0 for ci in c)


def test_t2_gram_positive_definite_and_det():
    for m, n in [(-1, 5), (-2, -7), (-1, -3), (-3, 17)]:
        K = BiquadField(m, n)
        G = K.t2_gram()
        assert all(isinstance(v, int) for row in G for v in row)
        assert det_int(G) == K.disc
        # leading principal minors positive
        for k in (1, 2, 3, 4):
            assert det_int([row[:k] for row in G[:k]]) > 0


def test_galois_action():
    rng = random.Random(11)
    K = BiquadField(-2, -7)
    x = K.from_coords([rng.randrange(-4, 5) for _ in range(4)])
    prod = x
    for e1, e2 in [(1, -1), (-1, 1), (-1, -1)]:
        prod = K.mul(prod, K.galois(x, e1, e2))
    assert prod[1] == prod[2] == prod[3] == 0
    assert prod[0] == K.norm(x)


def test_xxbar_lands_in_real_subfield():
    rng = random.Random(13)
    for m, n in [(-1, 5), (-3, -11)]:
        K = BiquadField(m, n)
        for _ in range(10):
            x = K.from_coords([rng.randrange(-4, 5) for _ in range(4)])
            a, b = K.xxbar(x)
            assert a * a - K.r3 * b * b == K.norm(x)


def test_zeta8():
    K = BiquadField(-1, 2)
    z = K.element(Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1, 2))
    # (sqrt2 + sqrt-2)/2 is an 8th root of unity
    assert K.is_integral(z)
    z4 = K.mul(K.mul(z, z), K.mul(z, z))
    assert z4 == (-1, 0, 0, 0)
    assert K.norm(z) == 1
    assert K.t2(z) == 4


def test_zeta12():
    K = BiquadField(-1, -3)
    z = K.element(Fraction(0), Fraction(1, 2), Fraction(0), Fraction(-1, 2))
    z2 = K.element(Fraction(0), Fraction(1, 2), Fraction(0), Fraction(1, 2))
    # one of the two sign choices of (i +- S3)/2 is a primitive 12th root
    found = False
    for w in (z, z2):
        if not K.is_integral(w):
            continue
        p6 = w
        for _ in range(5):
            p6 = K.mul(p6, w)
        if p6 == (-1, 0, 0, 0):
            found = True
    assert found


def test_unit_square_identity():
    # (2 sqrt-2 + sqrt-7)^2 = -15 + 4 sqrt14, checked sign-free
    K = BiquadField(-2, -7)
    u = K.element(Fraction(0), Fraction(2), Fraction(1), Fraction(0))
    u2 = K.mul(u, u)
    assert u2[0] == -15 and u2[1] == 0 and u2[2] == 0
    assert (u2[3]) ** 2 * K.r3 == 224
    assert K.norm(u) == 1


def test_relative_norm_known_values():
    K = BiquadField(-2, -7)
    u = K.element(Fraction(0), Fraction(2), Fraction(1), Fraction(0))
    # (2 sqrt-2 + sqrt-7) times its conjugate over each quadratic subfield
    assert K.relative_norm(u, 14) == QuadElt(14, 30, -8)
    assert K.relative_norm(u, -2) == QuadElt(-2, -2, 0)
    assert K.relative_norm(u, -7) == QuadElt(-7, 2, 0)
    K = BiquadField(-1, 5)
    w = K.element(Fraction(1, 2), Fraction(0), Fraction(0), Fraction(1, 2))
    assert K.relative_norm(w, 5) == QuadElt(5, 3, 1)
    with pytest.raises(ValueError):
        K.relative_norm(w, 3)
    with pytest.raises(ValueError):
        K.relative_norm(w, -25)  # r2 * r3, not one of the three radicands


def test_relative_norm_transitive_and_multiplicative():
    rng = random.Random(13)
    for m, n in [(-1, 5), (-2, -7), (-3, -11), (-1, -3)]:
        K = BiquadField(m, n)
        for _ in range(10):
            x = K.from_coords([rng.randrange(-4, 5) for _ in range(4)])
            y = K.from_coords([rng.randrange(-4, 5) for _ in range(4)])
            for d in (K.r1, K.r2, K.r3):
                nx = K.relative_norm(x, d)
                assert nx.norm() == K.norm(x)
                assert nx.mul(K.relative_norm(y, d)) == K.relative_norm(K.mul(x, y), d)


def test_embedding_enclosures():
    for m, n in [(-1, 5), (-2, -7)]:
        K = BiquadField(m, n)
        embs = K.basis_embeddings(prec=96)
        assert len(embs) == 2 and all(len(e) == 4 for e in embs)
        # |phi(w)|^2 enclosure matches the exact Gram diagonal Q values
        A, B = K.gram_ab()
        from cmeuclid.intervals import Iv

        s3 = Iv.from_int(K.r3).sqrt(128)
        for j, (re, im) in enumerate(embs[0]):
            q = re.sqr(128).add(im.sqr(128), 128)
            c = [Fraction(1 if t == j else 0) for t in range(4)]
            a = sum(A[i][k] * c[i] * c[k] for i in range(4) for k in range(4))
            b = sum(B[i][k] * c[i] * c[k] for i in range(4) for k in range(4))
            # phi1 value is a - b sqrt(r3); two enclosures of it must overlap
            t = Iv.from_fraction(a, 128).sub(Iv.from_fraction(b, 128).mul(s3, 128), 128)
            assert q.lo() <= t.hi() and t.lo() <= q.hi()
            assert q.width() < Fraction(1, 2**64)