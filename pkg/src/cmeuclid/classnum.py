"""Class numbers of the quartic CM fields.

Two independent routes. For bicyclic K, Kuroda's formula for an imaginary
V4 extension of Q gives h(K) = (q_hat / 2) h1 h2 h3 over the three
quadratic subfields, where q_hat = [E_K : E1 E2 E3] is the unit index
computed by exact enumeration. For any of the fields here (cyclic ones
included), verify_class_number_one checks principality of every prime
ideal of norm below the Minkowski bound (3 / (2 pi^2)) sqrt|disc|; those
classes generate the class group, and each principality test is itself an
exhaustive lattice search, so both answers are unconditional.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import primes_below
from .ideals import is_principal, prime_ideals_above
from .intervals import Iv
from .quadratic import class_number
from .units import kuroda_unit_index


def kuroda_class_number(K) -> int:
    num = (kuroda_unit_index(K) * class_number(K.r1)
           * class_number(K.r2) * class_number(K.r3))
    assert num % 2 == 0
    return num // 2


def minkowski_bound(K) -> Fraction:
    # rational over-approximation: 0.152 > 3 / (2 pi^2)
    root = Iv.from_int(abs(K.disc)).sqrt(96).hi()
    return Fraction(152, 1000) * root


def verify_class_number_one(K) -> bool:
    mb = minkowski_bound(K)
    for p in primes_below(int(mb) + 1):
        for P, _e, f in prime_ideals_above(K, p):
            if p ** f <= mb and not is_principal(P)[0]:
                return False
    return True
