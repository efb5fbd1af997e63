"""Pauli spins with real or Grassmann polarization, and the Werner family."""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .algebra import AlgebraContext
from .berezin import GrassmannMeasure, measure_expect
from .linalg import (Matrix, hermitian_eigenvalues, identity, kron,
                     mat_add, mat_map, mat_scale, partial_transpose, to_numpy)
from .scalars import ETA, Coefficient, GaussianRational, as_fraction

__all__ = [
    "WernerClass",
    "CLASSIFY_TOL",
    "pauli",
    "spin_state_grassmann",
    "spin_state_real",
    "gmat_tensor",
    "average_state",
    "werner_laurent",
    "werner_state",
    "evaluate_laurent",
    "classify_werner",
    "classify_state",
    "werner_row",
    "is_exact_number",
]

CLASSIFY_TOL = 1e-10

_ONE = GaussianRational(1)
_ZERO = GaussianRational(0)
_I = GaussianRational(0, 1)
_HALF = Fraction(1, 2)

_PAULI = {
    1: ((_ZERO, _ONE), (_ONE, _ZERO)),
    2: ((_ZERO, -_I), (_I, _ZERO)),
    3: ((_ONE, _ZERO), (_ZERO, -_ONE)),
}


class WernerClass(str, enum.Enum):
    UNPHYSICAL = "Unphysical"
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"

    def __str__(self):
        return self.value


def is_exact_number(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def pauli(i: int) -> Matrix:
    if i not in _PAULI:
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {i}")
    return _PAULI[i]


def spin_state_grassmann(ctx: AlgebraContext, polarization: Sequence[int | str]) -> Matrix:
    """2x2 matrix 1/2 (I + g.sigma) with Grassmann polarization generators."""
    if len(polarization) != 3:
        raise ValueError("polarization needs three generators")
    gens = [ctx.generator(g) for g in polarization]
    if len({next(iter(g.terms)) for g in gens}) != 3:
        raise ValueError("polarization generators must be distinct")
    rows = []
    for r in range(2):
        row = []
        for c in range(2):
            entry = ctx.scalar(_HALF) if r == c else ctx.zero()
            for i, g in enumerate(gens, start=1):
                s = _PAULI[i][r][c]
                if s:
                    entry = entry + g.scale(s * _HALF)
            row.append(entry)
        rows.append(tuple(row))
    return tuple(rows)


def spin_state_real(v: Sequence) -> Matrix | np.ndarray:
    """1/2 (I + v.sigma); exact when every component is rational."""
    if len(v) != 3:
        raise ValueError("polarization must be a 3-vector")
    if all(is_exact_number(x) for x in v):
        vv = [as_fraction(x) for x in v]
        if sum(x * x for x in vv) > 1:
            raise ValueError("polarization vector longer than 1")
        rho = identity(2, _ONE, _ZERO)
        for i, x in enumerate(vv, start=1):
            rho = mat_add(rho, mat_scale(GaussianRational(x), _PAULI[i]))
        return mat_scale(GaussianRational(_HALF), rho)
    vf = np.asarray(v, dtype=float)
    if float(vf @ vf) > 1.0 + 1e-12:
        raise ValueError("polarization vector longer than 1")
    rho = np.eye(2, dtype=complex)
    for i in range(3):
        rho = rho + vf[i] * to_numpy(_PAULI[i + 1])
    return 0.5 * rho


def gmat_tensor(x: Matrix, y: Matrix) -> Matrix:
    ctx = {e.ctx for row in x + y for e in row}
    if len(ctx) != 1:
        raise ValueError("Grassmann matrices must share one algebra")
    return kron(x, y)


def average_state(m: GrassmannMeasure, x: Matrix) -> Matrix:
    """Entrywise expectation; returns a matrix of Laurent coefficients."""
    return mat_map(lambda e: measure_expect(m, e), x)


def werner_laurent() -> Matrix:
    """1/4 (I4 + eta sum_i sigma_i x sigma_i) with symbolic eta."""
    acc = mat_map(Coefficient.coerce, identity(4, _ONE, _ZERO))
    for i in (1, 2, 3):
        ss = kron(_PAULI[i], _PAULI[i])
        acc = mat_add(acc, mat_map(lambda g: ETA * g, ss))
    return mat_scale(Coefficient({0: Fraction(1, 4)}), acc)


def evaluate_laurent(x: Matrix, eta) -> Matrix | np.ndarray:
    """Evaluate a Laurent matrix at a number: exact for rationals."""
    if is_exact_number(eta) or isinstance(eta, str):
        val = as_fraction(eta)
        return mat_map(lambda c: Coefficient.coerce(c).evaluate(val), x)
    return np.array([[Coefficient.coerce(c).evaluate(float(eta)) for c in row] for row in x],
                    dtype=complex)


def werner_state(eta) -> Matrix | np.ndarray:
    """The Werner matrix; exact for rational eta, numpy for floats."""
    return evaluate_laurent(werner_laurent(), eta)


def classify_state(rho, tol: float = CLASSIFY_TOL) -> WernerClass:
    """Spectral classification of a two-qubit matrix via positivity and PPT."""
    if min(hermitian_eigenvalues(rho)) < -tol:
        return WernerClass.UNPHYSICAL
    if min(hermitian_eigenvalues(partial_transpose(to_numpy(rho)))) < -tol:
        return WernerClass.ENTANGLED
    return WernerClass.SEPARABLE


def classify_werner(eta, tol: float = CLASSIFY_TOL) -> WernerClass:
    """Exact band test for rational eta; spectral test otherwise."""
    if is_exact_number(eta):
        e = as_fraction(eta)
        if e < -1 or e > Fraction(1, 3):
            return WernerClass.UNPHYSICAL
        if e >= Fraction(-1, 3):
            return WernerClass.SEPARABLE
        return WernerClass.ENTANGLED
    return classify_state(werner_state(float(eta)), tol)


def werner_row(eta, tol: float = CLASSIFY_TOL) -> dict:
    """One sweep row: eta, min eigenvalue, min PT eigenvalue, class."""
    rho = to_numpy(werner_state(eta))
    return {
        "eta": eta,
        "min_eig": min(hermitian_eigenvalues(rho)),
        "min_pt_eig": min(hermitian_eigenvalues(partial_transpose(rho))),
        "class": classify_werner(eta, tol),
    }
