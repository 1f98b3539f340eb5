"""Exact coefficient fields.

Two fields are supported: the rationals (backed by fractions.Fraction) and
prime fields F_p for randomized searches.  Field objects expose ``zero``,
``one``, ``from_int`` and ``parse``; elements support ordinary operator
arithmetic so the rest of the package never branches on the field.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


class PrimeFieldElement:
    """An element of F_p.  p is assumed prime; no primality check is done."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError("mixed moduli %d and %d" % (self.p, other.p))
            return other.value
        if isinstance(other, int):
            return other % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return PrimeFieldElement(self.value * pow(v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return PrimeFieldElement(v * pow(self.value, self.p - 2, self.p), self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __pow__(self, n):
        return PrimeFieldElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "%d" % self.value


class RationalField:
    """The rationals.  Elements are fractions.Fraction instances."""

    name = "QQ"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def parse(text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad rational %r: %s" % (text, exc)) from None

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p):
        if p < 2:
            raise ValueError("modulus must be at least 2")
        self.p = p
        self.name = "GF(%d)" % p
        self.characteristic = p
        self.zero = PrimeFieldElement(0, p)
        self.one = PrimeFieldElement(1, p)

    def from_int(self, n):
        return PrimeFieldElement(n, self.p)

    def parse(self, text):
        q = RationalField.parse(text)
        return self.from_fraction(q)

    def from_fraction(self, q):
        num = PrimeFieldElement(q.numerator, self.p)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError("denominator divisible by %d" % self.p)
        return num / q.denominator

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()

_gf_cache = {}


def GF(p):
    field = _gf_cache.get(p)
    if field is None:
        field = _gf_cache[p] = PrimeField(p)
    return field


def lift_centered(x):
    """Lift an F_p element to the integer of least absolute value."""
    v = x.value
    if v > x.p // 2:
        v -= x.p
    return Fraction(v)
