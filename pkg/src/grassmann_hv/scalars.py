"""Exact scalars: Gaussian rationals and Laurent polynomials in eta."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = ["GaussianRational", "Coefficient", "ETA", "as_fraction", "ScalarLike"]


def as_fraction(value) -> Fraction:
    """Convert an int, Fraction or rational string ("p/q") to a Fraction.

    Floats are rejected: exact arithmetic must never silently absorb
    binary rounding.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(value)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {abs(self.im)}*i)"


ScalarLike = Union[int, Fraction, GaussianRational]


class Coefficient:
    """Laurent polynomial sum_e c_e * eta**e with Gaussian-rational c_e.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, ScalarLike] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                g = GaussianRational.coerce(c)
                if g:
                    clean[int(e)] = g
        self._terms = clean
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        return cls({0: GaussianRational.coerce(value)})

    @classmethod
    def monomial(cls, coeff: ScalarLike, exponent: int) -> "Coefficient":
        return cls({exponent: coeff})

    @property
    def terms(self) -> dict[int, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[int, GaussianRational]]:
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def min_exponent(self) -> int | None:
        return min(self._terms) if self._terms else None

    def max_exponent(self) -> int | None:
        return max(self._terms) if self._terms else None

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant(self) -> GaussianRational:
        """The eta**0 coefficient; raises if other powers are present."""
        if not self.is_constant():
            raise ValueError(f"coefficient {self} depends on eta")
        return self._terms.get(0, GaussianRational(0))

    def coeff(self, exponent: int) -> GaussianRational:
        return self._terms.get(exponent, GaussianRational(0))

    def __add__(self, other):
        try:
            o = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out[e] + c if e in out else c
        return Coefficient(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            o = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return Coefficient(out)

    __rmul__ = __mul__

    def inverse(self) -> "Coefficient":
        """Inverse of a single-term coefficient c*eta**e."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not an invertible Laurent monomial")
        (e, c), = self._terms.items()
        return Coefficient({-e: GaussianRational(1) / c})

    def __truediv__(self, other):
        try:
            o = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Coefficient({0: 1})
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self) -> "Coefficient":
        """Conjugate the Gaussian-rational coefficients (eta treated as real)."""
        return Coefficient({e: c.conjugate() for e, c in self._terms.items()})

    def evaluate(self, eta):
        """Evaluate at a numeric eta.

        Exact (int/Fraction) input gives a GaussianRational; float input
        gives a complex.
        """
        if isinstance(eta, float) or isinstance(eta, complex):
            if eta == 0 and self._terms and min(self._terms) < 0:
                raise ZeroDivisionError("negative power of eta evaluated at 0")
            return sum((complex(c) * eta ** e for e, c in self._terms.items()), 0j)
        x = as_fraction(eta)
        if x == 0 and self._terms and min(self._terms) < 0:
            raise ZeroDivisionError("negative power of eta evaluated at 0")
        total = GaussianRational(0)
        for e, c in self._terms.items():
            total = total + c * (x ** e)
        return total

    def __eq__(self, other):
        try:
            o = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Coefficient({self})"

    def __str__(self):
        from .parsing import format_coefficient
        return format_coefficient(self)


ETA = Coefficient({1: 1})
