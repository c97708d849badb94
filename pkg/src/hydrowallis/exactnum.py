"""Exact rationals carrying a symbolic power of sqrt(pi).

Gamma at integer and half-integer arguments always closes over numbers of
the form ``q * pi**(p/2)`` with ``q`` rational, so every identity in this
package can be checked with zero tolerance.  ``fractions.Fraction`` is the
big-rational backing.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

import mpmath

__all__ = [
    "HalfInteger",
    "PiTaggedRational",
    "ExponentMismatchError",
    "gamma_exact",
    "gamma_ratio_exact",
    "double_factorial",
    "to_float",
    "ONE",
    "PI",
    "HALF_PI",
]


class ExponentMismatchError(ArithmeticError):
    """Addition of two values with different powers of pi."""


@dataclass(frozen=True, order=True)
class HalfInteger:
    """A number on the lattice n/2, stored as its double ``twice``."""

    twice: int

    @classmethod
    def of(cls, value) -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        q = Fraction(value)
        if (2 * q).denominator != 1:
            raise ValueError(f"{value!r} is not an integer or half-integer")
        return cls(int(2 * q))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other):
        return HalfInteger(self.twice + HalfInteger.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInteger(self.twice - HalfInteger.of(other).twice)

    def __str__(self):
        return str(self.to_fraction())


@total_ordering
@dataclass(frozen=True, eq=False)
class PiTaggedRational:
    """The exact value ``coeff * pi**(sqrt_pi_exp / 2)``.

    Multiplication and division add/subtract exponents.  Addition is only
    defined between equal exponents; anything else raises
    :class:`ExponentMismatchError` instead of silently going to floats.
    """

    coeff: Fraction
    sqrt_pi_exp: int = 0

    def __post_init__(self):
        coeff = Fraction(self.coeff)
        object.__setattr__(self, "coeff", coeff)
        # zero has no meaningful pi power
        if coeff == 0:
            object.__setattr__(self, "sqrt_pi_exp", 0)
        else:
            object.__setattr__(self, "sqrt_pi_exp", int(self.sqrt_pi_exp))

    @classmethod
    def coerce(cls, value) -> "PiTaggedRational":
        if isinstance(value, PiTaggedRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value), 0)
        return NotImplemented

    @property
    def is_rational(self) -> bool:
        return self.sqrt_pi_exp == 0

    # -- arithmetic -------------------------------------------------------
    def __mul__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PiTaggedRational(self.coeff * other.coeff, self.sqrt_pi_exp + other.sqrt_pi_exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.coeff == 0:
            raise ZeroDivisionError("division by zero PiTaggedRational")
        return PiTaggedRational(self.coeff / other.coeff, self.sqrt_pi_exp - other.sqrt_pi_exp)

    def __rtruediv__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and self.coeff == 0:
            raise ZeroDivisionError("zero to a negative power")
        return PiTaggedRational(self.coeff**n, self.sqrt_pi_exp * n)

    def __neg__(self):
        return PiTaggedRational(-self.coeff, self.sqrt_pi_exp)

    def __abs__(self):
        return PiTaggedRational(abs(self.coeff), self.sqrt_pi_exp)

    def _check_same_exp(self, other):
        if self.coeff != 0 and other.coeff != 0 and self.sqrt_pi_exp != other.sqrt_pi_exp:
            raise ExponentMismatchError(
                f"cannot add pi^({self.sqrt_pi_exp}/2) and pi^({other.sqrt_pi_exp}/2) terms exactly"
            )

    def __add__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_exp(other)
        exp = self.sqrt_pi_exp if self.coeff != 0 else other.sqrt_pi_exp
        return PiTaggedRational(self.coeff + other.coeff, exp)

    __radd__ = __add__

    def __sub__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # pi is transcendental: distinct exponents never coincide unless zero
        return self.coeff == other.coeff and self.sqrt_pi_exp == other.sqrt_pi_exp

    def __hash__(self):
        if self.sqrt_pi_exp == 0:
            return hash(self.coeff)
        return hash((self.coeff, self.sqrt_pi_exp))

    def __lt__(self, other):
        other = PiTaggedRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.sqrt_pi_exp == other.sqrt_pi_exp:
            return self.coeff < other.coeff
        if other.coeff == 0:
            return self.coeff < 0
        if self.coeff == 0:
            return other.coeff > 0
        # Unequal exponents: the values differ, so refining an interval
        # enclosure of the difference always separates it from zero.
        prec = 64
        while True:
            lo, hi = _diff_enclosure(self, other, prec)
            if hi < 0:
                return True
            if lo > 0:
                return False
            prec *= 2

    def enclosure(self, prec: int = 128) -> tuple[mpmath.mpf, mpmath.mpf]:
        """Rigorous lower/upper bounds using interval arithmetic."""
        with _iv_prec(prec):
            x = _iv_value(self)
        # keep endpoints at full precision; rounding them to nearest would
        # break the enclosure
        with mpmath.workprec(prec):
            return mpmath.mpf(x.a), mpmath.mpf(x.b)

    def __float__(self):
        return float(to_float(self, 53))

    def __str__(self):
        p = self.sqrt_pi_exp
        tail = f"pi^{p // 2}" if p % 2 == 0 else f"pi^{p}/2"
        return f"{self.coeff} * {tail}"

    def __repr__(self):
        return f"PiTaggedRational({self.coeff!s}, sqrt_pi_exp={self.sqrt_pi_exp})"


def _iv_value(v: PiTaggedRational):
    iv = mpmath.iv
    q = iv.mpf(v.coeff.numerator) / iv.mpf(v.coeff.denominator)
    p = v.sqrt_pi_exp
    if p == 0:
        return q
    root = iv.sqrt(iv.pi)
    return q * root**p if p > 0 else q / root ** (-p)


@contextmanager
def _iv_prec(prec):
    # mpmath's interval context has no workprec()
    saved = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        yield
    finally:
        mpmath.iv.prec = saved


def _diff_enclosure(a: PiTaggedRational, b: PiTaggedRational, prec: int):
    with _iv_prec(prec):
        d = _iv_value(a) - _iv_value(b)
    with mpmath.workprec(prec):
        return mpmath.mpf(d.a), mpmath.mpf(d.b)


ONE = PiTaggedRational(Fraction(1), 0)
PI = PiTaggedRational(Fraction(1), 2)
HALF_PI = PiTaggedRational(Fraction(1, 2), 2)


def double_factorial(n: int) -> int:
    """n!! with the conventions 0!! = (-1)!! = 1."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    if n <= 0:
        return 1
    if n % 2 == 0:
        k = n // 2
        return math.factorial(k) << k
    k = (n + 1) // 2
    # (2k-1)!! = (2k)! / (2^k k!)
    return math.factorial(2 * k) // (math.factorial(k) << k)


def gamma_exact(z) -> PiTaggedRational:
    """Gamma at a positive integer or half-integer, exactly.

    >>> str(gamma_exact(HalfInteger(5)))
    '3/4 * pi^1/2'
    """
    z = HalfInteger.of(z)
    if z.twice <= 0:
        raise ValueError(f"gamma_exact: argument {z} is not positive (pole or outside lattice)")
    if z.is_integer:
        return PiTaggedRational(Fraction(math.factorial(z.twice // 2 - 1)), 0)
    n = (z.twice - 1) // 2  # z = n + 1/2
    return PiTaggedRational(Fraction(double_factorial(2 * n - 1), 1 << n), 1)


def gamma_ratio_exact(a, b) -> PiTaggedRational:
    """Gamma(a) / Gamma(b) on the half-integer lattice."""
    return gamma_exact(a) / gamma_exact(b)


def to_float(v: PiTaggedRational, precision_bits: int = 53) -> mpmath.mpf:
    """Evaluate ``v`` as an mpmath float rounded to ``precision_bits``.

    The value is formed with 64 guard bits and rounded once at the end.
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be at least 53")
    v = PiTaggedRational.coerce(v)
    with mpmath.workprec(precision_bits + 64):
        x = mpmath.mpf(v.coeff.numerator) / v.coeff.denominator
        if v.sqrt_pi_exp:
            x *= mpmath.sqrt(mpmath.pi) ** v.sqrt_pi_exp
    with mpmath.workprec(precision_bits):
        return +x
