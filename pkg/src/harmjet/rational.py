"""Coefficient field: GMP rationals (``gmpy2.mpq``).

``mpq`` compares and hashes equal to :class:`fractions.Fraction`, so either
may be passed in; everything computed here comes back as ``Q``.
"""

from gmpy2 import mpq as Q

QType = type(Q(0))


def as_q(c) -> QType:
    return c if type(c) is QType else Q(c)
