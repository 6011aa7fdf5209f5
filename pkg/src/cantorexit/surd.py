"""Exact rationals and real quadratic surds ``u + v*sqrt(D)``.

Rationals are :class:`fractions.Fraction`.  No floating point enters any
comparison; ``float()`` and :meth:`QuadraticSurd.decimal` are for display.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational as _RationalABC
from typing import Union

from cantorexit import kernels

__all__ = [
    "Rational",
    "RootChoice",
    "QuadraticPoly",
    "QuadraticSurd",
    "InvalidPolynomial",
    "surd_from_poly",
    "compare_to_rational",
    "floor_surd",
    "parse_rational",
    "format_rational",
    "is_square",
]

Rational = Fraction
RationalLike = Union[int, Fraction]


class InvalidPolynomial(ValueError):
    """Raised for coefficient triples that are not a valid minimal polynomial."""


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal such as ``"0.04"`` exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(r: RationalLike) -> str:
    """Always ``num/den``, also for integers."""
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


class RootChoice(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is RootChoice.PLUS else -1


@dataclass(frozen=True)
class QuadraticPoly:
    """Primitive irreducible ``a x^2 + b x + c`` with two real roots."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if a == 0:
            raise InvalidPolynomial(f"leading coefficient is zero in ({a}, {b}, {c})")
        if gcd(gcd(a, b), c) != 1:
            raise InvalidPolynomial(f"({a}, {b}, {c}) is not primitive")
        d = b * b - 4 * a * c
        if d <= 0:
            raise InvalidPolynomial(f"discriminant {d} of ({a}, {b}, {c}) is not positive")
        if is_square(d):
            raise InvalidPolynomial(
                f"discriminant {d} of ({a}, {b}, {c}) is a perfect square (rational roots)"
            )

    @property
    def H(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c))

    @property
    def delta(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __call__(self, x):
        return (self.a * x + self.b) * x + self.c

    def homogeneous(self, p: int, q: int) -> int:
        """``a p^2 + b p q + c q^2``."""
        return self.a * p * p + self.b * p * q + self.c * q * q


class QuadraticSurd:
    """The real number ``u + v*sqrt(D)`` with rational ``u, v``.

    ``D`` is kept exactly as supplied (in practice the discriminant of the
    minimal polynomial) and is never reduced to its squarefree part.
    """

    __slots__ = ("u", "v", "D", "_int_form")

    def __init__(self, u: RationalLike = 0, v: RationalLike = 0, D: int = 2):
        D = int(D)
        if D <= 0 or is_square(D):
            raise ValueError(f"radicand must be a positive non-square, got {D}")
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.D = D
        self._int_form = None

    @classmethod
    def rational(cls, r: RationalLike, D: int = 2) -> "QuadraticSurd":
        return cls(r, 0, D)

    @classmethod
    def from_ints(cls, x: int, y: int, z: int, D: int) -> "QuadraticSurd":
        """``(x + y*sqrt(D)) / z``."""
        return cls(Fraction(x, z), Fraction(y, z), D)

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def int_form(self) -> tuple[int, int, int]:
        """``(x, y, z)`` with ``z > 0`` minimal such that the value is ``(x + y√D)/z``."""
        f = self._int_form
        if f is None:
            u, v = self.u, self.v
            z = u.denominator * v.denominator // gcd(u.denominator, v.denominator)
            f = self._int_form = (u.numerator * (z // u.denominator), v.numerator * (z // v.denominator), z)
        return f

    # -- coercion ---------------------------------------------------------

    def _pair(self, other) -> "tuple[QuadraticSurd, QuadraticSurd] | None":
        """Both operands written over a common radicand, or None for foreign types."""
        if isinstance(other, QuadraticSurd):
            if other.D == self.D:
                return self, other
            if other.v == 0:
                return self, QuadraticSurd(other.u, 0, self.D)
            if self.v == 0:
                return QuadraticSurd(self.u, 0, other.D), other
            r = other.rebase(self.D)
            if r is None:
                raise ValueError(f"surds over sqrt({self.D}) and sqrt({other.D}) are incompatible")
            return self, r
        if isinstance(other, (int, _RationalABC)):
            return self, QuadraticSurd(other, 0, self.D)
        return None

    def rebase(self, D: int) -> "QuadraticSurd | None":
        """Same value written over ``sqrt(D)``, or None if ``D/self.D`` is not a rational square."""
        if D == self.D or self.v == 0:
            return QuadraticSurd(self.u, self.v, D)
        prod = D * self.D
        s = isqrt(prod)
        if s * s != prod:
            return None
        # sqrt(self.D) = s / sqrt(D) = (s / D) sqrt(D)
        return QuadraticSurd(self.u, self.v * Fraction(s, D), D)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        s, o = p
        return QuadraticSurd(s.u + o.u, s.v + o.v, s.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.u, -self.v, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        s, o = p
        return QuadraticSurd(s.u - o.u, s.v - o.v, s.D)

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        s, o = p
        return QuadraticSurd(o.u - s.u, o.v - s.v, s.D)

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)):
            r = Fraction(other)
            return QuadraticSurd(self.u * r, self.v * r, self.D)
        p = self._pair(other)
        if p is None:
            return NotImplemented
        s, o = p
        return QuadraticSurd(s.u * o.u + s.v * o.v * s.D, s.u * o.v + s.v * o.u, s.D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.u, -self.v, self.D)

    def norm(self) -> Fraction:
        """``u^2 - D v^2``, the product with the conjugate."""
        return self.u * self.u - self.D * self.v * self.v

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            r = Fraction(other)
            return QuadraticSurd(self.u / r, self.v / r, self.D)
        p = self._pair(other)
        if p is None:
            return NotImplemented
        s, o = p
        return (s * o.conjugate()) / o.norm()

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        s, o = p
        return o / s

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        x, y, _ = self.int_form()
        return kernels.surd_sign(x, y, self.D)

    def _cmp(self, other) -> int:
        if isinstance(other, (int, _RationalABC)):
            return compare_to_rational(self, Fraction(other))
        if self._pair(other) is None:
            raise TypeError(f"cannot compare QuadraticSurd with {type(other).__name__}")
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd) and other.D == self.D:
            return self.u == other.u and self.v == other.v
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        # equal values share u even across different radicands
        return hash((self.u, self.v == 0))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __floor__(self):
        return floor_surd(self)

    def __float__(self):
        return float(self.u) + float(self.v) * self.D**0.5

    def decimal(self, digits: int = 30) -> str:
        """Round-half-up decimal rendering with ``digits`` fractional digits."""
        scale = 10**digits
        n = floor_surd(self * scale + Fraction(1, 2))
        sign = "-" if n < 0 else ""
        q, r = divmod(abs(n), scale)
        return f"{sign}{q}.{r:0{digits}d}" if digits else f"{sign}{q}"

    def exact(self) -> str:
        """Stable exact rendering ``num/den+num/den*sqrt(D)``."""
        return f"{format_rational(self.u)}+{format_rational(self.v)}*sqrt({self.D})"

    def __repr__(self):
        return f"QuadraticSurd({self.u!s}, {self.v!s}, {self.D})"

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        return f"{self.u} {'+' if self.v > 0 else '-'} {abs(self.v)}*sqrt({self.D})"


def surd_from_poly(f: QuadraticPoly, root_choice: RootChoice = RootChoice.PLUS) -> QuadraticSurd:
    """The root ``(-b ± sqrt(Δ)) / (2a)`` of ``f``; no range check."""
    two_a = 2 * f.a
    return QuadraticSurd(Fraction(-f.b, two_a), Fraction(root_choice.sign, two_a), f.delta)


def compare_to_rational(x: QuadraticSurd, r: RationalLike) -> int:
    """-1, 0 or 1 as ``x`` is less than, equal to or greater than ``r``."""
    r = Fraction(r)
    xi, yi, z = x.int_form()
    # x - r = (xi*r.den - r.num*z + yi*r.den*sqrt(D)) / (z*r.den)
    return kernels.surd_sign(xi * r.denominator - r.numerator * z, yi * r.denominator, x.D)


def floor_surd(x: QuadraticSurd) -> int:
    xi, yi, z = x.int_form()
    return kernels.floor_div_surd(xi, yi, z, x.D)
