"""Exact rational scalars.

Every coordinate, radius and distance in this package is an exact rational;
there is no floating point anywhere.  gmpy2.mpq is used when available
(roughly an order of magnitude faster), with fractions.Fraction as a drop-in
fallback.  Both keep values in lowest terms with a positive denominator.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def rat(value, den=None):
    """Coerce ints, strings like '3/4', Fractions or Q values to Q."""
    if den is not None:
        return Q(value, den)
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    return Q(value)


def parse_rational(token: str):
    """Parse 'p' or 'p/q'. Raises ValueError on malformed input."""
    token = token.strip()
    if "/" in token:
        num, _, den = token.partition("/")
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {token!r}")
        return Q(int(num), d)
    return Q(int(token))


def rat_str(value) -> str:
    """Render as 'p' or 'p/q' (lowest terms, denominator positive)."""
    value = rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
