"""Sparse Grassmann algebra over a finite, ordered set of generators.

Monomials are bitmasks over generator indices; bit ``k`` set means
generator ``k`` is a factor. A monomial always denotes the product of its
generators in ascending index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import Coefficient

__all__ = [
    "MAX_GENERATORS",
    "AlgebraContext",
    "Multivector",
    "ContextMismatchError",
    "algebra_new",
    "mv_generator",
    "mv_add",
    "mv_scale",
    "mv_mul",
    "mv_exp",
    "mv_parity_split",
    "mask_indices",
    "product_sign",
]

MAX_GENERATORS = 32


class ContextMismatchError(ValueError):
    """Operands live in different algebras."""


@dataclass(frozen=True)
class AlgebraContext:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators, got {len(names)}")
        seen = set()
        for name in names:
            if name in seen:
                raise ValueError(f"duplicate generator label {name!r}")
            seen.add(name)
        object.__setattr__(self, "_index", {n: k for k, n in enumerate(names)})

    @property
    def n_generators(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown generator {label!r}") from None

    def check_index(self, k: int) -> int:
        if not 0 <= k < len(self.names):
            raise IndexError(f"generator index {k} out of range [0, {len(self.names)})")
        return k

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def one(self) -> "Multivector":
        return Multivector(self, {0: Coefficient({0: 1})})

    def scalar(self, c) -> "Multivector":
        return Multivector(self, {0: Coefficient.coerce(c)})

    def generator(self, k: int | str) -> "Multivector":
        if isinstance(k, str):
            k = self.index(k)
        self.check_index(k)
        return Multivector(self, {1 << k: Coefficient({0: 1})})

    def generators(self) -> list["Multivector"]:
        return [self.generator(k) for k in range(self.n_generators)]


def algebra_new(names: Sequence[str]) -> AlgebraContext:
    return AlgebraContext(tuple(names))


def mask_indices(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def product_sign(x: int, y: int) -> int:
    """Sign of (monomial x)*(monomial y) relative to the sorted union.

    Counts pairs (i in x, j in y) with i > j; assumes x & y == 0.
    """
    inversions = 0
    m = y
    while m:
        low = m & -m
        j = low.bit_length() - 1
        inversions += (x >> (j + 1)).bit_count()
        m ^= low
    return -1 if inversions & 1 else 1


def _popcount(m: int) -> int:
    return m.bit_count()


class Multivector:
    """Immutable sparse element of a Grassmann algebra.

    ``terms`` maps monomial bitmasks to :class:`Coefficient` values. Zero
    coefficients are dropped on construction.
    """

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: AlgebraContext, terms: Mapping[int, object] | None = None):
        self.ctx = ctx
        clean = {}
        full = ctx.full_mask
        if terms:
            for mask, c in terms.items():
                if mask & ~full:
                    raise ValueError(f"monomial {mask:#b} outside the algebra")
                coef = Coefficient.coerce(c)
                if coef:
                    clean[mask] = coef
        self._terms = clean

    @property
    def terms(self) -> dict[int, Coefficient]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (_popcount(kv[0]), mask_indices(kv[0])))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, mask: int) -> Coefficient:
        return self._terms.get(mask, Coefficient())

    def scalar_part(self) -> Coefficient:
        return self._terms.get(0, Coefficient())

    def is_scalar(self) -> bool:
        return all(mask == 0 for mask in self._terms)

    def grades(self) -> set[int]:
        return {_popcount(m) for m in self._terms}

    def max_grade(self) -> int:
        return max(self.grades(), default=0)

    def grade(self, r: int) -> "Multivector":
        return Multivector(self.ctx, {m: c for m, c in self._terms.items() if _popcount(m) == r})

    def _check(self, other: "Multivector"):
        if self.ctx != other.ctx:
            raise ContextMismatchError("multivectors belong to different algebras")

    def _lift(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return self.ctx.scalar(other)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            out[m] = out[m] + c if m in out else c
        return Multivector(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.ctx, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Multivector":
        coef = Coefficient.coerce(c)
        return Multivector(self.ctx, {m: coef * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return _mul_terms(self.ctx, self._terms, other._terms)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        # scalars (including eta) are central
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            if not other.is_scalar():
                raise ZeroDivisionError("only division by a scalar is defined")
            other = other.scalar_part()
        try:
            return self.scale(Coefficient.coerce(other).inverse())
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.ctx.one()
        for _ in range(n):
            result = result * self
        return result

    def parity_split(self) -> tuple["Multivector", "Multivector"]:
        even = {m: c for m, c in self._terms.items() if not _popcount(m) & 1}
        odd = {m: c for m, c in self._terms.items() if _popcount(m) & 1}
        return Multivector(self.ctx, even), Multivector(self.ctx, odd)

    def exp(self) -> "Multivector":
        return mv_exp(self)

    def map_coefficients(self, fn) -> "Multivector":
        return Multivector(self.ctx, {m: fn(c) for m, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.ctx == other.ctx and self._terms == other._terms
        try:
            return self == self.ctx.scalar(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Multivector({self})"

    def __str__(self):
        from .parsing import format_mv
        return format_mv(self)


def _mul_terms(ctx, xt: Mapping[int, Coefficient], yt: Mapping[int, Coefficient]) -> Multivector:
    out: dict[int, Coefficient] = {}
    for mx, cx in xt.items():
        for my, cy in yt.items():
            if mx & my:
                continue
            p = cx * cy
            if product_sign(mx, my) < 0:
                p = -p
            m = mx | my
            out[m] = out[m] + p if m in out else p
    return Multivector(ctx, out)


def mv_generator(ctx: AlgebraContext, k: int) -> Multivector:
    return ctx.generator(k)


def mv_add(x: Multivector, y: Multivector) -> Multivector:
    x._check(y)
    return x + y


def mv_scale(c, x: Multivector) -> Multivector:
    return x.scale(c)


def mv_mul(x: Multivector, y: Multivector) -> Multivector:
    x._check(y)
    return x * y


def mv_parity_split(x: Multivector) -> tuple[Multivector, Multivector]:
    return x.parity_split()


def mv_exp(x: Multivector) -> Multivector:
    """Exponential of an even element with zero scalar part.

    The series terminates because such an element is nilpotent.
    """
    if x.scalar_part():
        raise ValueError("exp requires zero scalar part")
    _, odd = x.parity_split()
    if odd:
        raise ValueError("exp requires an even element")
    result = x.ctx.one()
    term = x.ctx.one()
    m = 1
    while True:
        term = (term * x).scale(Fraction(1, m))
        if not term:
            return result
        result = result + term
        m += 1
