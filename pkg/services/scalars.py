"""Exact complex-rational scalars (sympy's Gaussian rationals QQ_I)."""
from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I

Scalar = type(QQ_I(0, 0))

ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)
I = QQ_I(0, 1)
HALF = QQ_I(QQ(1, 2), 0)


def rational(value) -> "QQ":
    """Coerce int / Fraction / 'p/q' string to a sympy rational."""
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def gaussian(re=0, im=0) -> Scalar:
    return QQ_I(rational(re), rational(im))


def as_scalar(value) -> Scalar:
    """Accept ints, Fractions, strings, complex-rational pairs and QQ_I elements."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, tuple):
        return gaussian(*value)
    if isinstance(value, (int, Fraction, str)):
        return gaussian(value, 0)
    return QQ_I.convert(value)


def conjugate(z: Scalar) -> Scalar:
    return QQ_I(z.x, -z.y)


def to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def real_part(z: Scalar) -> Fraction:
    return to_fraction(z.x)


def imag_part(z: Scalar) -> Fraction:
    return to_fraction(z.y)


def to_complex(z: Scalar) -> complex:
    return complex(float(real_part(z)), float(imag_part(z)))


def is_integer(z: Scalar) -> bool:
    return imag_part(z) == 0 and real_part(z).denominator == 1


def to_int(z: Scalar) -> int:
    if not is_integer(z):
        raise ValueError(f"{format_scalar(z)} is not an integer")
    return int(real_part(z))


def format_rational(q) -> str:
    """Decimal-free 'p/q' serialization."""
    fr = to_fraction(q) if not isinstance(q, Fraction) else q
    return f"{fr.numerator}/{fr.denominator}"


def format_scalar(z: Scalar) -> str:
    re, im = real_part(z), imag_part(z)
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}i"
    sign = "+" if im > 0 else "-"
    return f"{re}{sign}{abs(im)}i"
