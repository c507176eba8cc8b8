"""Reference data for quadratic fields.

NORM_EUCLIDEAN_REAL_QUADRATIC is the complete list of squarefree d > 0
such that Q(sqrt d) is norm-Euclidean.  REAL_QUADRATIC_MINIMA collects
the exact Euclidean minima M(Q(sqrt d)) used by the quartic arguments.
"""

from fractions import Fraction

NORM_EUCLIDEAN_REAL_QUADRATIC = frozenset(
    {2, 3, 5, 6, 7, 11, 13, 17, 19, 21, 29, 33, 37, 41, 57, 73}
)

REAL_QUADRATIC_MINIMA = {
    2: Fraction(1, 2),
    3: Fraction(1, 2),
    5: Fraction(1, 4),
    13: Fraction(1, 3),
}
