"""Exact scalars: rationals, Gaussian rationals Q(i) and prime fields F_p.

Rationals are :class:`fractions.Fraction`.  Both coefficient fields used by
the polynomial layer are described by a small field object (``QI`` or a
:class:`PrimeField`) exposing ``zero``, ``one``, coercion and parsing, so the
code above this module never needs to know which one it is working over.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "Rat",
    "GaussRat",
    "GaussRationals",
    "QI",
    "FpElem",
    "PrimeField",
    "UnsupportedFieldError",
    "is_prime",
    "fp_sqrt_minus_one",
    "gauss_arith",
]

Rat = Fraction


class UnsupportedFieldError(ValueError):
    """Raised for a prime that cannot model a field containing sqrt(-1)."""


def _rat_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class GaussRat:
    """An element (a + b*i)/d of Q(i).

    Stored over a common positive denominator with gcd(a, b, d) = 1, so two
    values are equal iff their three integers are equal.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = _to_fraction(re)
        im = _to_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        g = gcd(gcd(a, b), d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> GaussRat:
        obj = cls.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        obj._set(a, b, d)
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> GaussRat:
        return GaussRat._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def _coerce(self, other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return GaussRat._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussRat._raw(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self) -> GaussRat:
        obj = GaussRat.__new__(GaussRat)
        obj._a, obj._b, obj._d = -self._a, -self._b, self._d
        return obj

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        if b == 0 and e == 0:
            return GaussRat._raw(a * c, 0, self._d * o._d)
        return GaussRat._raw(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> GaussRat:
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # d/(a+bi) = d(a-bi)/(a^2+b^2)
        return GaussRat._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> GaussRat:
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussRat._raw(1, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def encode(self) -> str:
        """Canonical text form, e.g. ``-3/2+1/4*i``, ``1*i`` or ``5``."""
        re_, im_ = self.re, self.im
        if im_ == 0:
            return _rat_str(re_)
        im_s = _rat_str(abs(im_)) + "*i"
        sign = "-" if im_ < 0 else "+"
        if re_ == 0:
            return ("-" if im_ < 0 else "") + im_s
        return _rat_str(re_) + sign + im_s

    __str__ = encode

    def __repr__(self) -> str:
        return f"GaussRat({self.encode()!r})"

    def __complex__(self) -> complex:
        return complex(self._a / self._d, self._b / self._d)


_GAUSS_RE = re.compile(
    r"^\s*(?:(?P<re>[+-]?\d+(?:/\d+)?)(?=$|[+-]))?"
    r"(?:(?P<im>[+-]?\d+(?:/\d+)?)\*i)?\s*$"
)


class GaussRationals:
    """The coefficient field Q(i)."""

    name = "QQ(i)"
    characteristic = 0

    def __init__(self):
        self.zero = GaussRat(0)
        self.one = GaussRat(1)
        self.i = GaussRat(0, 1)

    def __call__(self, x) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, str):
            return self.parse(x)
        return GaussRat(x)

    def parse(self, text: str) -> GaussRat:
        m = _GAUSS_RE.match(text)
        if not m or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"not a Gaussian rational: {text!r}")
        re_ = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_ = Fraction(m.group("im")) if m.group("im") else Fraction(0)
        return GaussRat(re_, im_)

    def sqrt_minus_one(self) -> GaussRat:
        return self.i

    def __eq__(self, other) -> bool:
        return isinstance(other, GaussRationals)

    def __hash__(self) -> int:
        return hash("QQ(i)")

    def __repr__(self) -> str:
        return "QI"


QI = GaussRationals()


def gauss_arith(a: GaussRat, b: GaussRat, op: str) -> GaussRat:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _sqrt_minus_one_mod(p: int) -> int:
    if not is_prime(p):
        raise UnsupportedFieldError(f"{p} is not prime")
    if p % 4 != 1:
        raise UnsupportedFieldError(f"{p} is not 1 mod 4, so F_{p} has no square root of -1")
    for a in range(2, p):
        c = pow(a, (p - 1) // 4, p)
        if c * c % p == p - 1:
            return min(c, p - c)
    raise AssertionError("unreachable for p = 1 mod 4")


class FpElem:
    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.modulus != self.modulus:
                raise ValueError(f"mixing F_{self.modulus} and F_{other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.modulus)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(o - self.value, self.modulus)

    def __neg__(self):
        return FpElem(-self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.value * o, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> FpElem:
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.modulus}")
        return FpElem(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * FpElem(o, self.modulus).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(o, self.modulus) * self.inverse()

    def __pow__(self, n: int) -> FpElem:
        if n < 0:
            return self.inverse() ** (-n)
        return FpElem(pow(self.value, n, self.modulus), self.modulus)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElem):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def encode(self) -> str:
        return str(self.value)

    __str__ = encode

    def __repr__(self) -> str:
        return f"FpElem({self.value}, {self.modulus})"


class PrimeField:
    """F_p for a prime p = 1 (mod 4).

    The restriction keeps the field a faithful stand-in for a base field that
    contains a primitive fourth root of unity.
    """

    characteristic: int

    def __init__(self, p: int):
        self.j = _sqrt_minus_one_mod(p)  # validates p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = FpElem(0, p)
        self.one = FpElem(1, p)

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, x) -> FpElem:
        if isinstance(x, FpElem):
            if x.modulus != self.p:
                raise ValueError(f"element of F_{x.modulus} given to F_{self.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return FpElem(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return FpElem(int(x), self.p)

    def parse(self, text: str) -> FpElem:
        return self(Fraction(text.strip()))

    def sqrt_minus_one(self) -> FpElem:
        return FpElem(self.j, self.p)

    def elements(self):
        return [FpElem(k, self.p) for k in range(self.p)]

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def fp_sqrt_minus_one(p: int) -> FpElem:
    """Return the smaller square root of -1 modulo ``p``."""
    return FpElem(_sqrt_minus_one_mod(p), p)
