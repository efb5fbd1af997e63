"""Berezin integration and Grassmann expectation functionals.

Conventions: ``int dθ θ = 1`` and ``int dθ 1 = 0``. To integrate over θ
the generator is first anticommuted to the leftmost position of each
monomial. An integration order lists generators first-integrated-first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraContext, Multivector, mv_exp, product_sign
from .scalars import ETA, Coefficient

__all__ = [
    "IntegrationError",
    "NonNormalizableError",
    "GrassmannMeasure",
    "PAIR_NAMES",
    "CONVENTION_ORDER",
    "berezin_single",
    "berezin_multi",
    "measure_expect",
    "gaussian_pair_measure",
    "pair_context",
    "moment_matrix",
    "parse_order",
]

PAIR_NAMES = ("a1", "a2", "a3", "b1", "b2", "b3")
# first-integrated-first; gives int(a1 b1 a2 b2 a3 b3) = +1
CONVENTION_ORDER = ("b3", "b2", "b1", "a3", "a2", "a1")


class IntegrationError(ValueError):
    """An integral did not reduce to a scalar, or the order is invalid."""


class NonNormalizableError(ValueError):
    """A measure has vanishing total integral."""


def _check_order(ctx: AlgebraContext, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    if len(set(order)) != len(order):
        raise IntegrationError(f"repeated generator in integration order {order}")
    for k in order:
        if not 0 <= k < ctx.n_generators:
            raise IntegrationError(f"generator index {k} out of range")
    return order


def parse_order(ctx: AlgebraContext, text: str | Sequence[str]) -> tuple[int, ...]:
    """Turn "b3,b2,..." (or a list of labels) into generator indices."""
    labels = [s.strip() for s in text.split(",")] if isinstance(text, str) else list(text)
    labels = [s for s in labels if s]
    try:
        order = tuple(ctx.index(s) for s in labels)
    except KeyError as exc:
        raise IntegrationError(str(exc.args[0])) from None
    return _check_order(ctx, order)


def berezin_single(x: Multivector, k: int) -> Multivector:
    ctx = x.ctx
    if not 0 <= k < ctx.n_generators:
        raise IndexError(f"generator index {k} out of range")
    bit = 1 << k
    below = bit - 1
    out = {}
    for mask, c in x.terms.items():
        if mask & bit:
            out[mask ^ bit] = -c if (mask & below).bit_count() & 1 else c
    return Multivector(ctx, out)


def berezin_multi(x: Multivector, order: Sequence[int]) -> Multivector:
    order = _check_order(x.ctx, order)
    for k in order:
        x = berezin_single(x, k)
    return x


def _top_sign(ctx: AlgebraContext, order: Sequence[int]) -> int:
    """Value of the full integral of the ascending top monomial."""
    top = Multivector(ctx, {ctx.full_mask: 1})
    return 1 if berezin_multi(top, order).scalar_part() == 1 else -1


@dataclass(frozen=True)
class GrassmannMeasure:
    """Weight ``p`` plus integration order; defines ``M[x] = int x p``."""

    weight: Multivector
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", _check_order(self.weight.ctx, self.order))

    @property
    def ctx(self) -> AlgebraContext:
        return self.weight.ctx

    @property
    def is_full(self) -> bool:
        return len(self.order) == self.ctx.n_generators

    def expect(self, obs: Multivector) -> Coefficient:
        return measure_expect(self, obs)

    def total(self) -> Coefficient:
        return measure_expect(self, self.ctx.one())

    def normalized(self) -> "GrassmannMeasure":
        z = self.total()
        if not z:
            raise NonNormalizableError("measure integrates to zero")
        return GrassmannMeasure(self.weight / z, self.order)


def measure_expect(m: GrassmannMeasure, obs: Multivector) -> Coefficient:
    """Scalar part of the integral of ``obs * weight`` (observable on the left)."""
    if obs.ctx != m.ctx:
        raise IntegrationError("observable and measure live in different algebras")
    if m.is_full:
        return _full_expect(m, obs)
    result = berezin_multi(obs * m.weight, m.order)
    if not result.is_scalar():
        raise IntegrationError(f"integral left non-scalar terms: {result}")
    return result.scalar_part()


def _full_expect(m: GrassmannMeasure, obs: Multivector) -> Coefficient:
    # only the complementary weight monomial reaches top grade
    full = m.ctx.full_mask
    top = _top_sign(m.ctx, m.order)
    wt = m.weight.terms
    total = Coefficient()
    for mask, c in obs.terms.items():
        comp = full ^ mask
        w = wt.get(comp)
        if w is None:
            continue
        p = c * w
        if product_sign(mask, comp) * top < 0:
            p = -p
        total = total + p
    return total


def pair_context() -> AlgebraContext:
    return AlgebraContext(PAIR_NAMES)


def gaussian_pair_measure(ctx: AlgebraContext | None = None) -> GrassmannMeasure:
    """Isotropic Gaussian measure ``eta^3 exp(eta^-1 a.b)`` on six generators."""
    ctx = ctx or pair_context()
    if sorted(ctx.names) != sorted(PAIR_NAMES):
        raise ValueError(f"context must have exactly the generators {PAIR_NAMES}")
    quad = ctx.zero()
    for i in (1, 2, 3):
        quad = quad + ctx.generator(f"a{i}") * ctx.generator(f"b{i}")
    weight = mv_exp(quad.scale(ETA ** -1)).scale(ETA ** 3)
    return GrassmannMeasure(weight, tuple(ctx.index(s) for s in CONVENTION_ORDER))


def moment_matrix(m: GrassmannMeasure, a_gens: Sequence[int | str],
                  b_gens: Sequence[int | str]) -> list[list[Coefficient]]:
    """Entry (i, j) is ``M[a_i b_j]``."""
    ctx = m.ctx
    a = [ctx.generator(g) for g in a_gens]
    b = [ctx.generator(g) for g in b_gens]
    return [[measure_expect(m, ai * bj) for bj in b] for ai in a]
