"""Exact rational helpers shared by the readers, the report writer and the models."""
import math
import re
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

RATIONAL_LITERAL = re.compile(r'^[+-]?\d+(/\d+)?$')


def to_fraction(value):
    """Convert an int, Fraction or "p/q" string to a Fraction.

    Floats are refused, and so are decimal and exponent strings such as
    "0.1" or "1e3": only integer and p/q literals are rationals here.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals. Got {}".format(value))
    if isinstance(value, (Integral, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not RATIONAL_LITERAL.match(text):
            raise ValueError("not a rational literal: {!r}".format(value))
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError("not a rational literal: {!r}".format(value))
    raise TypeError("expected int, Fraction or 'p/q' string. Got {}".format(type(value).__name__))


def to_vector(values):
    return tuple(to_fraction(v) for v in values)


def to_matrix(rows):
    return tuple(to_vector(r) for r in rows)


def format_fraction(value):
    """'p/q', or the bare integer when q == 1."""
    return str(Fraction(value))


def format_vector(values):
    return [format_fraction(v) for v in values]


def as_array(values):
    """Object array of Fractions; numpy arithmetic on it stays exact."""
    return np.array(values, dtype=object)


def common_denominator(values):
    return math.lcm(*[Fraction(v).denominator for v in values], 1)
