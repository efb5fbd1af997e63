from fractions import Fraction

import numpy as np
import pytest

from conftest import exact_charpoly, poly_from_roots
from grassmann_hv.berezin import gaussian_pair_measure
from grassmann_hv.linalg import (hermitian_eigenvalues, identity, is_hermitian_exact, matmul,
                                 partial_trace, partial_transpose, to_numpy, trace)
from grassmann_hv.quantum import (WernerClass, average_state, classify_state, classify_werner,
                                  gmat_tensor, pauli, spin_state_grassmann, spin_state_real,
                                  werner_laurent, werner_state)
from grassmann_hv.scalars import ETA, Coefficient, GaussianRational

F = Fraction
I2 = identity(2, GaussianRational(1), GaussianRational(0))


def test_pauli_matrices():
    assert pauli(1) == ((0, 1), (1, 0))
    assert pauli(3) == ((1, 0), (0, -1))
    assert pauli(2) == ((0, GaussianRational(0, -1)), (GaussianRational(0, 1), 0))
    for i in (1, 2, 3):
        assert matmul(pauli(i), pauli(i)) == I2
    with pytest.raises(ValueError):
        pauli(0)


def test_grassmann_spin_state(pair_ctx):
    rho = spin_state_grassmann(pair_ctx, ["a1", "a2", "a3"])
    g = {n: pair_ctx.generator(n) for n in pair_ctx.names}
    assert rho[0][0] == F(1, 2) + g["a3"].scale(F(1, 2))
    assert rho[0][1] == g["a1"].scale(F(1, 2)) - g["a2"].scale(GaussianRational(0, F(1, 2)))
    assert trace(rho) == 1
    assert all(e.max_grade() <= 1 for row in rho for e in row)
    with pytest.raises(ValueError):
        spin_state_grassmann(pair_ctx, ["a1", "a1", "a2"])


def test_real_spin_state():
    assert spin_state_real((0, 0, 0)) == identity(2, GaussianRational(F(1, 2)), GaussianRational(0))
    assert spin_state_real((0, 0, 1)) == ((1, 0), (0, 0))
    assert np.allclose(spin_state_real((0.0, 0.6, 0.8)), 0.5 * np.array([[1.8, -0.6j], [0.6j, 0.2]]))
    with pytest.raises(ValueError):
        spin_state_real((0, 0, F(3, 2)))
    with pytest.raises(ValueError):
        spin_state_real((0.0, 0.0, 1.5))


def test_tensor_scalar_part_and_cross_terms(pair_ctx):
    ra = spin_state_grassmann(pair_ctx, ["a1", "a2", "a3"])
    rb = spin_state_grassmann(pair_ctx, ["b1", "b2", "b3"])
    prod = gmat_tensor(ra, rb)
    for i in range(4):
        for j in range(4):
            assert prod[i][j].scalar_part() == (F(1, 4) if i == j else 0)
    # sigma_i x sigma_j coefficient is tr[(s_i x s_j) X] / 4 = a_i b_j / 4
    g = {n: pair_ctx.generator(n) for n in pair_ctx.names}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            s = np.kron(to_numpy(pauli(i)), to_numpy(pauli(j)))
            acc = pair_ctx.zero()
            for r in range(4):
                for c in range(4):
                    if s[c, r] != 0:
                        coef = GaussianRational(int(s[c, r].real), int(s[c, r].imag))
                        acc = acc + prod[r][c].scale(coef)
            assert acc.scale(F(1, 4)) == (g[f"a{i}"] * g[f"b{j}"]).scale(F(1, 4))


def test_tensor_with_identity_is_block_embedding(pair_ctx):
    ra = spin_state_grassmann(pair_ctx, ["a1", "a2", "a3"])
    one = ((pair_ctx.one(), pair_ctx.zero()), (pair_ctx.zero(), pair_ctx.one()))
    big = gmat_tensor(ra, one)
    for r in range(4):
        for c in range(4):
            expected = ra[r // 2][c // 2] if r % 2 == c % 2 else pair_ctx.zero()
            assert big[r][c] == expected


def test_reconstruction_identity(pair_ctx):
    m = gaussian_pair_measure(pair_ctx)
    rho = gmat_tensor(spin_state_grassmann(pair_ctx, ["a1", "a2", "a3"]),
                      spin_state_grassmann(pair_ctx, ["b1", "b2", "b3"]))
    got = average_state(m, rho)
    assert got == werner_laurent()
    assert trace(got) == 1
    marginal = partial_trace(got, [0], 2)
    assert marginal == ((Coefficient({0: F(1, 2)}), 0), (0, Coefficient({0: F(1, 2)})))


def test_werner_laurent_entries():
    w = werner_laurent()
    q = F(1, 4)
    assert w[0][0] == q + q * ETA
    assert w[1][1] == q - q * ETA
    assert w[1][2] == 2 * q * ETA
    assert w[0][3] == 0


@pytest.mark.parametrize("eta", [F(-1), F(-1, 2), F(-1, 3), F(0), F(1, 5), F(1, 3), F(1, 2)])
def test_werner_spectrum_via_exact_charpoly(eta):
    rho = werner_state(eta)
    assert is_hermitian_exact(rho) and trace(rho) == 1
    a, b = (1 + eta) / 4, (1 - 3 * eta) / 4
    expected = poly_from_roots([GaussianRational(v) for v in (a, a, a, b)])
    assert exact_charpoly(rho) == expected
    pt = partial_transpose(rho)
    c, d = (1 + 3 * eta) / 4, (1 - eta) / 4
    assert exact_charpoly(pt) == poly_from_roots([GaussianRational(v) for v in (c, d, d, d)])


def test_werner_examples():
    assert werner_state(F(0)) == identity(4, GaussianRational(F(1, 4)), GaussianRational(0))
    assert hermitian_eigenvalues(werner_state(F(-1))) == pytest.approx([0, 0, 0, 1], abs=1e-12)
    third = F(1, 3)
    assert hermitian_eigenvalues(werner_state(third)) == pytest.approx([0, third, third, third], abs=1e-12)
    assert hermitian_eigenvalues(werner_state(-0.5)) == pytest.approx([0.125, 0.125, 0.125, 0.625],
                                                                      abs=1e-12)
    singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
    assert np.allclose(to_numpy(werner_state(F(-1))), np.outer(singlet, singlet))


def test_pt_formula_on_float_grid():
    for eta in np.linspace(-1.2, 0.6, 91):
        pt = hermitian_eigenvalues(partial_transpose(werner_state(float(eta))))
        expected = sorted([(1 + 3 * eta) / 4] + [(1 - eta) / 4] * 3)
        assert pt == pytest.approx(expected, abs=1e-10)
    assert min(hermitian_eigenvalues(partial_transpose(werner_state(F(-1, 3))))) == pytest.approx(0, abs=1e-14)


def test_classify_examples():
    assert classify_werner(F(0)) is WernerClass.SEPARABLE
    assert classify_werner(F(-1)) is WernerClass.ENTANGLED
    assert classify_werner(F(1, 2)) is WernerClass.UNPHYSICAL
    assert classify_werner(0.5) is WernerClass.UNPHYSICAL
    assert classify_werner(-1.0) is WernerClass.ENTANGLED
    assert classify_werner(-0.2) is WernerClass.SEPARABLE
    assert classify_werner(-1.1) is WernerClass.UNPHYSICAL


def test_classification_boundaries_on_fine_grid():
    changes = []
    grid = [F(k, 60) for k in range(-90, 61)]
    classes = [classify_werner(e) for e in grid]
    for e, prev, cur in zip(grid[1:], classes, classes[1:]):
        if prev is not cur:
            changes.append((e, prev, cur))
    assert changes == [
        (F(-1), WernerClass.UNPHYSICAL, WernerClass.ENTANGLED),
        (F(-1, 3), WernerClass.ENTANGLED, WernerClass.SEPARABLE),
        (F(1, 3) + F(1, 60), WernerClass.SEPARABLE, WernerClass.UNPHYSICAL),
    ]
    for e in grid:
        rho = werner_state(e)
        if -1 <= e <= F(1, 3):
            assert min(hermitian_eigenvalues(rho)) > -1e-12
        # spectral test agrees with bands away from the exact boundary points
        if e not in (F(-1), F(-1, 3), F(1, 3)):
            assert classify_state(to_numpy(rho)) is classify_werner(e)
