"""Gaussian Grassmann hidden variables shared among K spin-1/2 parties.

Party ``k`` owns three generators (letter k, components 1..3); for K=2
these are a1..a3, b1..b3. Couplings J_kl give the weight
``exp(sum_{k<l} J_kl sum_i g^k_i g^l_i)``, normalized by its full
Berezin integral.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import AlgebraContext, Multivector
from .berezin import GrassmannMeasure, NonNormalizableError, measure_expect
from .linalg import Matrix, hermitian_eigenvalues, kron, mat_map
from .quantum import average_state, spin_state_grassmann
from .scalars import as_fraction

__all__ = [
    "MAX_PARTIES",
    "CouplingGraph",
    "party_context",
    "multiparty_gaussian_measure",
    "multiparty_state",
    "multiparty_report",
    "pairwise_correlations",
    "component_correlations",
]

MAX_PARTIES = 8


@dataclass(frozen=True)
class CouplingGraph:
    parties: int
    couplings: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.parties <= MAX_PARTIES:
            raise ValueError(f"party count must be in [1, {MAX_PARTIES}]")
        clean = {}
        for pair, j in dict(self.couplings).items():
            k, l = pair
            if k == l:
                raise ValueError(f"self-coupling on party {k}")
            if not (0 <= k < self.parties and 0 <= l < self.parties):
                raise ValueError(f"pair {pair} out of range for {self.parties} parties")
            key = (min(k, l), max(k, l))
            if key in clean:
                raise ValueError(f"pair {key} given twice")
            j = as_fraction(j)
            if j:
                clean[key] = j
        object.__setattr__(self, "couplings", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.parties, tuple(self.couplings.items())))

    @classmethod
    def chain(cls, parties: int, j) -> "CouplingGraph":
        return cls(parties, {(k, k + 1): j for k in range(parties - 1)})

    @classmethod
    def from_json(cls, data: dict) -> "CouplingGraph":
        couplings = {}
        for c in data.get("couplings", []):
            k, l = c["pair"]
            key = (min(k, l), max(k, l))
            if key in couplings:
                raise ValueError(f"pair {key} given twice")
            couplings[(k, l)] = as_fraction(str(c["J"]))
        return cls(int(data["parties"]), couplings)

    def to_json(self) -> dict:
        return {"parties": self.parties,
                "couplings": [{"pair": list(p), "J": str(j)} for p, j in self.couplings.items()]}

    def permuted(self, perm: list[int]) -> "CouplingGraph":
        """Relabel party k as perm[k], carrying the quadratic form along.

        J g^k g^l = -J g^l g^k, so an edge whose orientation flips changes sign.
        """
        if sorted(perm) != list(range(self.parties)):
            raise ValueError("perm must be a permutation of the party indices")
        out = {}
        for (k, l), j in self.couplings.items():
            out[(perm[k], perm[l])] = j if perm[k] < perm[l] else -j
        return CouplingGraph(self.parties, out)


def party_labels(k: int) -> tuple[str, str, str]:
    letter = string.ascii_lowercase[k]
    return (f"{letter}1", f"{letter}2", f"{letter}3")


def party_context(parties: int) -> AlgebraContext:
    return AlgebraContext(tuple(name for k in range(parties) for name in party_labels(k)))


def _raw_weight(ctx: AlgebraContext, g: CouplingGraph) -> Multivector:
    # commuting nilpotent pair terms: exp(sum x) = prod (1 + x)
    w = ctx.one()
    for (k, l), j in g.couplings.items():
        for i in range(3):
            x = ctx.generator(3 * k + i) * ctx.generator(3 * l + i)
            w = w * (ctx.one() + x.scale(j))
    return w


def multiparty_gaussian_measure(g: CouplingGraph) -> GrassmannMeasure:
    """Normalized coupling-graph measure; integrates in reverse generator order.

    A single party has no couplings; it gets the Berezin delta measure
    (weight proportional to the top monomial), so M[x] is the scalar part
    of x.
    """
    ctx = party_context(g.parties)
    order = tuple(reversed(range(ctx.n_generators)))
    if g.parties == 1:
        raw = GrassmannMeasure(Multivector(ctx, {ctx.full_mask: 1}), order)
    else:
        raw = GrassmannMeasure(_raw_weight(ctx, g), order)
    z = raw.total()
    if not z:
        raise NonNormalizableError(
            f"coupling graph on {g.parties} parties has vanishing normalization")
    return GrassmannMeasure(raw.weight / z, order)


def multiparty_state(g: CouplingGraph, measure: GrassmannMeasure | None = None) -> Matrix:
    """Exact 2^K x 2^K state M[rho_1 x rho_2 x ... x rho_K], parties left to right."""
    m = measure or multiparty_gaussian_measure(g)
    ctx = m.ctx
    big = None
    for k in range(g.parties):
        rho = spin_state_grassmann(ctx, [3 * k, 3 * k + 1, 3 * k + 2])
        big = rho if big is None else kron(big, rho)
    return mat_map(lambda c: c.constant(), average_state(m, big))


def component_correlations(g: CouplingGraph, measure: GrassmannMeasure | None = None):
    """corr[i][k][l] = M[g^k_i g^l_i] for components i = 1..3 (exact)."""
    m = measure or multiparty_gaussian_measure(g)
    ctx = m.ctx
    out = []
    for i in range(3):
        rows = []
        for k in range(g.parties):
            row = []
            for l in range(g.parties):
                v = measure_expect(m, ctx.generator(3 * k + i) * ctx.generator(3 * l + i)).constant()
                row.append(v)
            rows.append(row)
        out.append(rows)
    return out


def pairwise_correlations(g: CouplingGraph, measure: GrassmannMeasure | None = None) -> list[list[Fraction]]:
    """K x K matrix of M[g^k_1 g^l_1]."""
    corr = component_correlations(g, measure)[0]
    out = []
    for row in corr:
        if any(v.im for v in row):
            raise ValueError("pairwise correlation has an imaginary part")
        out.append([v.re for v in row])
    return out


def multiparty_report(g: CouplingGraph) -> dict:
    """State, pairwise correlations and spectral summary for a graph."""
    m = multiparty_gaussian_measure(g)
    state = multiparty_state(g, m)
    eig = hermitian_eigenvalues(state)
    tr = sum((state[i][i] for i in range(len(state))), state[0][0] * 0)
    return {
        "state": state,
        "correlations": pairwise_correlations(g, m),
        "min_eig": eig[0],
        "eigenvalues": eig,
        "trace": tr,
    }
