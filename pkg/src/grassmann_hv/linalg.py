"""Small dense matrices: exact (nested tuples) and floating (numpy).

Exact matrices are tuples of row tuples whose entries only need ``+`` and
``*``; that covers Gaussian rationals, Laurent coefficients and
Grassmann-valued entries alike. Kronecker products keep the left factor's
entries on the left, which matters for anticommuting entries.

Bipartite basis ordering is |0>_A|0>_B, |0>_A|1>_B, |1>_A|0>_B, |1>_A|1>_B,
i.e. index = 2*a + b.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Sequence

import numpy as np

__all__ = [
    "ConvergenceError",
    "Matrix",
    "as_matrix",
    "identity",
    "kron",
    "mat_add",
    "mat_scale",
    "mat_map",
    "matmul",
    "trace",
    "dagger",
    "is_hermitian_exact",
    "to_numpy",
    "partial_transpose",
    "partial_trace",
    "hermitian_eigenvalues",
    "jacobi_symmetric",
]

Matrix = tuple[tuple[Any, ...], ...]


class ConvergenceError(RuntimeError):
    pass


def as_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(d: int, one: Any = 1, zero: Any = 0) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))


def mat_map(fn: Callable[[Any], Any], x: Matrix) -> Matrix:
    return tuple(tuple(fn(v) for v in row) for row in x)


def mat_add(x: Matrix, y: Matrix) -> Matrix:
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return tuple(tuple(a + b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


def mat_scale(c: Any, x: Matrix) -> Matrix:
    return tuple(tuple(c * v for v in row) for row in x)


def matmul(x: Matrix, y: Matrix) -> Matrix:
    n, k = len(x), len(y)
    m = len(y[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = x[i][0] * y[0][j]
            for t in range(1, k):
                acc = acc + x[i][t] * y[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def kron(x: Matrix, y: Matrix) -> Matrix:
    """Kronecker product; entry products are ``x_entry * y_entry``."""
    p, q = len(y), len(y[0])
    rows = []
    for i in range(len(x) * p):
        xi, yi = divmod(i, p)
        rows.append(tuple(x[xi][xj] * y[yi][yj]
                          for xj in range(len(x[0])) for yj in range(q)))
    return tuple(rows)


def trace(x: Matrix):
    acc = x[0][0]
    for i in range(1, len(x)):
        acc = acc + x[i][i]
    return acc


def _conj(v):
    return v.conjugate() if hasattr(v, "conjugate") else v


def dagger(x: Matrix) -> Matrix:
    return tuple(tuple(_conj(x[j][i]) for j in range(len(x))) for i in range(len(x[0])))


def is_hermitian_exact(x: Matrix) -> bool:
    return all(x[i][j] == _conj(x[j][i]) for i in range(len(x)) for j in range(len(x)))


def to_numpy(x) -> np.ndarray:
    if isinstance(x, np.ndarray):
        return x.astype(complex)
    return np.array([[complex(v) for v in row] for row in x], dtype=complex)


def _is_exact(x) -> bool:
    return not isinstance(x, np.ndarray)


def partial_transpose(x, subsystem: str = "B", dims: tuple[int, int] = (2, 2)):
    """Transpose the indices of one factor of a bipartite matrix."""
    da, db = dims
    d = da * db
    if len(x) != d or any(len(row) != d for row in x):
        raise ValueError(f"partial transpose needs a {d}x{d} matrix")
    if subsystem not in ("A", "B"):
        raise ValueError("subsystem must be 'A' or 'B'")

    def src(i, j):
        ia, ib = divmod(i, db)
        ja, jb = divmod(j, db)
        if subsystem == "B":
            ib, jb = jb, ib
        else:
            ia, ja = ja, ia
        return ia * db + ib, ja * db + jb

    rows = [[x[src(i, j)[0]][src(i, j)[1]] for j in range(d)] for i in range(d)]
    if _is_exact(x):
        return as_matrix(rows)
    return np.array(rows, dtype=x.dtype)


def partial_trace(x, keep: Sequence[int], n_qubits: int):
    """Trace out all qubits not in ``keep``; qubit 0 is most significant."""
    keep = sorted(keep)
    drop = [q for q in range(n_qubits) if q not in keep]
    dk = 2 ** len(keep)

    def bits(idx):
        return [(idx >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]

    out: list[list[Any]] = [[None] * dk for _ in range(dk)]
    for i in range(2 ** n_qubits):
        bi = bits(i)
        for j in range(2 ** n_qubits):
            bj = bits(j)
            if any(bi[q] != bj[q] for q in drop):
                continue
            ki = sum(bi[q] << (len(keep) - 1 - t) for t, q in enumerate(keep))
            kj = sum(bj[q] << (len(keep) - 1 - t) for t, q in enumerate(keep))
            v = x[i][j]
            out[ki][kj] = v if out[ki][kj] is None else out[ki][kj] + v
    if _is_exact(x):
        return as_matrix(out)
    return np.array(out, dtype=complex)


def jacobi_symmetric(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))

    def off(m):
        return float(np.linalg.norm(m - np.diag(np.diag(m))))

    for _ in range(max_sweeps):
        if off(a) < tol * scale:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # negligible next to both diagonal entries: drop it
                small = 100.0 * abs(apq)
                if abs(a[p, p]) + small == abs(a[p, p]) and abs(a[q, q]) + small == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = float((a[q, q] - a[p, p]) / (2.0 * apq))
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
    if off(a) < tol * scale:
        return np.sort(np.diag(a))
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(m, hermitian_tol: float = 1e-10, tol: float = 1e-12) -> list[float]:
    """Ascending eigenvalues of a Hermitian matrix (exact or numpy input).

    The n x n Hermitian H = X + iY is diagonalized through the real
    symmetric embedding [[X, -Y], [Y, X]], whose spectrum is that of H with
    every eigenvalue doubled.
    """
    h = to_numpy(m)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("square matrix required")
    if h.size and np.max(np.abs(h - h.conj().T)) > hermitian_tol:
        raise ValueError("matrix is not Hermitian")
    x, y = h.real, h.imag
    emb = np.block([[x, -y], [y, x]])
    vals = jacobi_symmetric(emb, tol=tol)
    return [float(v) for v in vals[::2]]

