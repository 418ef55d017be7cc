import math
import numbers
from fractions import Fraction
from typing import Iterable


__all__ = ['to_rational', 'parse_rational', 'format_rational',
           'lcm_of_denominators', 'is_integral']


def to_rational(value) -> Fraction:
    """Converts ints, Fractions and "p/q" strings to an exact Fraction.

    Floats are rejected since every comparison downstream must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('bool is not a rational value')
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f'unsupported rational type: {type(value).__name__}')


def parse_rational(text: str) -> Fraction:
    """Parses "p/q" or "p" (whitespace tolerated). Decimal points are rejected."""
    text = text.strip()
    if '.' in text or 'e' in text.lower():
        raise ValueError(f'not an exact rational: {text!r}')
    return Fraction(text)


def format_rational(value) -> str:
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def lcm_of_denominators(values: Iterable) -> int:
    result = 1
    for value in values:
        denominator = to_rational(value).denominator
        result = result * denominator // math.gcd(result, denominator)
    return result


def is_integral(value) -> bool:
    return to_rational(value).denominator == 1
