"""Real-valued hidden-variable models with finite support.

A model is a list of (a, b, w): polarization vectors for the two spins and
a weight. Weights sum to one; unsigned models have non-negative weights.
Values may be exact rationals or floats; exact inputs stay exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import kron, mat_add, mat_scale, to_numpy
from .quantum import is_exact_number, spin_state_real
from .scalars import GaussianRational, as_fraction

__all__ = [
    "SupportPoint",
    "DiscreteHVModel",
    "SearchConfig",
    "SearchResult",
    "ROTATIONS",
    "model_moments",
    "model_eta",
    "model_state",
    "twirl",
    "analytic_witness",
    "max_anticorrelation_search",
    "signed_eta_model",
    "random_unsigned_model",
]

TOL = 1e-12


def _det3(m) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _cube_rotations() -> tuple[tuple[tuple[int, ...], ...], ...]:
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = tuple(tuple(signs[r] if c == perm[r] else 0 for c in range(3)) for r in range(3))
            if _det3(m) == 1:
                out.append(m)
    return tuple(out)


# proper rotations of the cube (signed permutations with det +1)
ROTATIONS = _cube_rotations()


def _apply(rot, v):
    return tuple(sum((rot[r][c] * v[c] for c in range(3) if rot[r][c]), 0 * v[0]) for r in range(3))


def _norm2(v) -> float:
    return float(sum(x * x for x in v))


@dataclass(frozen=True)
class SupportPoint:
    a: tuple
    b: tuple
    w: object

    def to_json(self) -> dict:
        def enc(x):
            return str(x) if is_exact_number(x) else float(x)
        return {"a": [enc(x) for x in self.a], "b": [enc(x) for x in self.b], "w": enc(self.w)}


@dataclass(frozen=True)
class DiscreteHVModel:
    support: tuple[SupportPoint, ...]
    signed: bool = False

    def __post_init__(self):
        pts = tuple(p if isinstance(p, SupportPoint) else SupportPoint(tuple(p[0]), tuple(p[1]), p[2])
                    for p in self.support)
        object.__setattr__(self, "support", pts)
        if not pts:
            raise ValueError("model needs at least one support point")
        total = sum(p.w for p in pts)
        if abs(total - 1) > TOL:
            raise ValueError(f"weights sum to {total}, not 1")
        for p in pts:
            if len(p.a) != 3 or len(p.b) != 3:
                raise ValueError("polarization vectors must have 3 components")
            if not self.signed and p.w < 0:
                raise ValueError("negative weight in an unsigned model")
            if _norm2(p.a) > 1 + TOL or _norm2(p.b) > 1 + TOL:
                raise ValueError("polarization vector longer than 1")

    @property
    def exact(self) -> bool:
        return all(is_exact_number(x) for p in self.support for x in (*p.a, *p.b, p.w))

    def to_json(self) -> dict:
        return {"signed": self.signed, "support": [p.to_json() for p in self.support]}

    @classmethod
    def from_json(cls, data: dict) -> "DiscreteHVModel":
        def dec(x):
            if isinstance(x, str):
                return as_fraction(x)
            if isinstance(x, int) and not isinstance(x, bool):
                return Fraction(x)
            return float(x)
        pts = [SupportPoint(tuple(dec(x) for x in s["a"]), tuple(dec(x) for x in s["b"]), dec(s["w"]))
               for s in data["support"]]
        return cls(tuple(pts), bool(data.get("signed", False)))


def model_moments(m: DiscreteHVModel):
    """Weighted means of a and b and the correlation matrix M[a_i b_j]."""
    zero = m.support[0].w * 0
    mean_a = [zero] * 3
    mean_b = [zero] * 3
    corr = [[zero] * 3 for _ in range(3)]
    for p in m.support:
        for i in range(3):
            mean_a[i] += p.w * p.a[i]
            mean_b[i] += p.w * p.b[i]
            for j in range(3):
                corr[i][j] += p.w * p.a[i] * p.b[j]
    return mean_a, mean_b, corr


def model_eta(m: DiscreteHVModel):
    """Isotropic correlation (1/3) trace M[a_i b_j]."""
    _, _, corr = model_moments(m)
    tr = corr[0][0] + corr[1][1] + corr[2][2]
    return tr / 3 if not m.exact else Fraction(tr) / 3


def model_state(m: DiscreteHVModel):
    """sum_k w_k rho(a_k) x rho(b_k); exact when the model is exact."""
    if m.exact:
        acc = None
        for p in m.support:
            term = mat_scale(GaussianRational(p.w), kron(spin_state_real(p.a), spin_state_real(p.b)))
            acc = term if acc is None else mat_add(acc, term)
        return acc
    acc = np.zeros((4, 4), dtype=complex)
    for p in m.support:
        ra = to_numpy(spin_state_real([float(x) for x in p.a]))
        rb = to_numpy(spin_state_real([float(x) for x in p.b]))
        acc += float(p.w) * np.kron(ra, rb)
    return acc


def twirl(m: DiscreteHVModel) -> DiscreteHVModel:
    """Average over the 24 cube rotations applied jointly to a and b."""
    n = len(ROTATIONS)
    pts = []
    for p in m.support:
        w = Fraction(p.w) / n if is_exact_number(p.w) else p.w / n
        for rot in ROTATIONS:
            pts.append(SupportPoint(_apply(rot, p.a), _apply(rot, p.b), w))
    return DiscreteHVModel(tuple(pts), m.signed)


def analytic_witness() -> DiscreteHVModel:
    """Twirled point mass at a = e3, b = -e3: eta is exactly -1/3."""
    one, zero = Fraction(1), Fraction(0)
    base = DiscreteHVModel((SupportPoint((zero, zero, one), (zero, zero, -one), one),))
    return twirl(base)


def signed_eta_model(eta) -> DiscreteHVModel:
    """Zero-mean model with M[a_i b_j] = eta delta_ij on points (s e_i, t e_i).

    Same-sign pairs get weight 1/12 + eta/4, opposite-sign pairs
    1/12 - eta/4; weights go negative only for |eta| > 1/3.
    """
    exact = is_exact_number(eta) or isinstance(eta, str)
    e = as_fraction(eta) if exact else float(eta)
    if abs(e) > 1:
        raise ValueError("|eta| must not exceed 1")
    if exact:
        w_same, w_opp = Fraction(1, 12) + e / 4, Fraction(1, 12) - e / 4
        one, zero = Fraction(1), Fraction(0)
    else:
        w_same, w_opp = 1 / 12 + e / 4, 1 / 12 - e / 4
        one, zero = 1.0, 0.0
    pts = []
    for i in range(3):
        for s in (1, -1):
            for t in (1, -1):
                w = w_same if s == t else w_opp
                if w == 0:
                    continue
                a = tuple(s * one if k == i else zero for k in range(3))
                b = tuple(t * one if k == i else zero for k in range(3))
                pts.append(SupportPoint(a, b, w))
    return DiscreteHVModel(tuple(pts), signed=any(p.w < 0 for p in pts))


@dataclass(frozen=True)
class SearchConfig:
    n_points: int = 4
    restarts: int = 8
    iters: int = 500
    step: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("n_points must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.iters < 0:
            raise ValueError("iters must be >= 0")
        if not math.isfinite(self.step) or self.step < 0:
            raise ValueError("step must be a finite non-negative number")


@dataclass
class SearchResult:
    best_eta: float
    model: DiscreteHVModel
    witness_eta: Fraction
    witness: DiscreteHVModel
    history: list[tuple[int, float]] = field(default_factory=list)


def _project_ball(v: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    return v / np.maximum(norms, 1.0)


def _softmax(z: np.ndarray) -> np.ndarray:
    e = np.exp(z - z.max())
    return e / e.sum()


def _random_ball(rng: np.random.Generator, n: int) -> np.ndarray:
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return d * rng.uniform(size=(n, 1)) ** (1 / 3)


def _run_restart(rng, cfg: SearchConfig, init):
    if init is not None:
        a = np.array([p[0] for p in init], dtype=float)
        b = np.array([p[1] for p in init], dtype=float)
    else:
        a = _random_ball(rng, cfg.n_points)
        b = _random_ball(rng, cfg.n_points)
    z = rng.normal(scale=0.1, size=len(a))

    def eta_of(a, b, w):
        return float(w @ np.einsum("ij,ij->i", a, b)) / 3

    w = _softmax(z)
    best = (eta_of(a, b, w), a.copy(), b.copy(), w.copy())
    trace = [best[0]]
    for _ in range(cfg.iters):
        f = np.einsum("ij,ij->i", a, b) / 3
        eta = float(w @ f)
        # descend eta: twirling makes eta = (1/3) sum_k w_k a_k.b_k
        ga = (w / 3)[:, None] * b
        gb = (w / 3)[:, None] * a
        gz = w * (f - eta)
        a = _project_ball(a - cfg.step * ga)
        b = _project_ball(b - cfg.step * gb)
        z = z - cfg.step * gz
        w = _softmax(z)
        cur = eta_of(a, b, w)
        if cur < best[0]:
            best = (cur, a.copy(), b.copy(), w.copy())
        trace.append(best[0])
    return best, trace


def max_anticorrelation_search(cfg: SearchConfig = SearchConfig(), init=None) -> SearchResult:
    """Projected-gradient search for the strongest classical anti-correlation.

    Support points are kept in the closed unit ball by projection and the
    weights are a softmax of free logits. ``init`` optionally fixes the
    starting support as a list of (a, b) pairs for every restart.
    """
    if init is not None and len(init) != cfg.n_points:
        raise ValueError("init must list exactly n_points (a, b) pairs")
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    results = [_run_restart(np.random.default_rng(s), cfg, init) for s in seeds]
    best = min(results, key=lambda r: r[0][0])[0]
    history = [(t, min(r[1][t] for r in results)) for t in range(cfg.iters + 1)]
    eta, a, b, w = best
    raw = DiscreteHVModel(tuple(SupportPoint(tuple(map(float, a[k])), tuple(map(float, b[k])), float(w[k]))
                                for k in range(len(w))))
    witness = analytic_witness()
    return SearchResult(eta, twirl(raw), model_eta(witness), witness, history)


def random_unsigned_model(rng: np.random.Generator, n_points: int) -> DiscreteHVModel:
    a = _random_ball(rng, n_points)
    b = _random_ball(rng, n_points)
    w = rng.dirichlet(np.ones(n_points))
    w = w / w.sum()
    return DiscreteHVModel(tuple(SupportPoint(tuple(map(float, a[k])), tuple(map(float, b[k])), float(w[k]))
                                 for k in range(n_points)))
