"""Exact integer/rational helpers and Hirzebruch-Jung continued fractions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, NotCoprime

Rational = Fraction


def gcd(a: int, b: int) -> int:
    """Non-negative greatest common divisor; ``gcd(0, 0) == 0``."""
    return math.gcd(a, b)


def mod_inverse(a: int, m: int) -> int:
    """Return the unique ``x`` in ``[1, m)`` with ``a * x = 1 (mod m)``."""
    if m < 2:
        raise InvalidInput(f"modulus must be at least 2, got {m}")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to an exact Fraction."""
    if isinstance(value, float):
        raise InvalidInput("floating point values are not accepted; use exact rationals")
    return Fraction(value)


@dataclass(frozen=True)
class HJExpansion:
    """Minus-sign continued fraction ``m0/m1 = c1 - 1/(c2 - 1/(...))``.

    ``remainders`` is the strictly decreasing sequence ``m0 > m1 > ... > mn = 1``
    with ``m_{i-1} = c_i * m_i - m_{i+1}`` (reading ``m_{n+1}`` as 0).
    """

    coefficients: tuple[int, ...]
    remainders: tuple[int, ...]

    def value(self) -> Fraction:
        return hj_evaluate(self.coefficients)


def hj_expand(m0: int, m1: int) -> HJExpansion:
    """Hirzebruch-Jung expansion of ``m0/m1`` for coprime ``1 <= m1 < m0``."""
    if not (1 <= m1 < m0) or math.gcd(m0, m1) != 1:
        raise InvalidInput(f"need coprime 1 <= m1 < m0, got ({m0}, {m1})")
    coefficients = []
    remainders = [m0, m1]
    a, b = m0, m1
    while b > 0:
        c = -(-a // b)  # ceiling, so that 0 <= c*b - a < b
        coefficients.append(c)
        a, b = b, c * b - a
        if b > 0:
            remainders.append(b)
    return HJExpansion(tuple(coefficients), tuple(remainders))


def hj_evaluate(coefficients) -> Fraction:
    """Evaluate ``[c1, ..., cn]`` as the nested fraction ``c1 - 1/(c2 - ...)``."""
    coefficients = list(coefficients)
    if not coefficients:
        raise InvalidInput("empty continued fraction")
    # carry the value as num/den in lowest terms: c - den/num = (c*num - den)/num
    num, den = coefficients[-1], 1
    for c in reversed(coefficients[:-1]):
        if num == 0:
            raise ZeroDivisionError("continued fraction has a zero denominator")
        num, den = c * num - den, num
    return Fraction(num, den)
