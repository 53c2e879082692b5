"""Serialization helpers for exact numbers.

Everything user-facing is printed as a decimal-digit string or "p/q";
floats never enter the data path.
"""

from fractions import Fraction


def normalize(x):
    """Collapse a Fraction with denominator 1 to a plain int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def rat_to_str(x) -> str:
    x = normalize(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return normalize(Fraction(int(num), int(den)))
    return int(s)


def approx_str(x, digits: int = 12) -> str:
    """Decimal approximation, explicitly not exact."""
    return f"{float(Fraction(x)):.{digits}g}"
