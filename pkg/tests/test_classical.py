from fractions import Fraction

import numpy as np
import pytest

from grassmann_hv.classical import (ROTATIONS, DiscreteHVModel, SearchConfig,
                                    analytic_witness, max_anticorrelation_search, model_eta,
                                    model_moments, model_state, random_unsigned_model,
                                    signed_eta_model, twirl)
from grassmann_hv.linalg import identity, is_hermitian_exact, to_numpy, trace
from grassmann_hv.quantum import WernerClass, classify_state, werner_state
from grassmann_hv.scalars import GaussianRational

F = Fraction
E = [tuple(F(int(i == k)) for k in range(3)) for i in range(3)]


def neg(v):
    return tuple(-x for x in v)


def test_rotation_group():
    assert len(ROTATIONS) == 24
    assert len(set(ROTATIONS)) == 24
    # closed under composition
    def compose(r, s):
        return tuple(tuple(sum(r[i][k] * s[k][j] for k in range(3)) for j in range(3)) for i in range(3))
    for r in ROTATIONS:
        for s in ROTATIONS:
            assert compose(r, s) in ROTATIONS


def test_single_point_moments():
    m = DiscreteHVModel(((E[2], neg(E[2]), F(1)),))
    _, _, corr = model_moments(m)
    assert corr == [[0, 0, 0], [0, 0, 0], [0, 0, -1]]


def test_uniform_axis_model_reaches_minus_third():
    m = DiscreteHVModel(tuple((E[i], neg(E[i]), F(1, 3)) for i in range(3)))
    _, _, corr = model_moments(m)
    assert corr == [[F(-1, 3) if i == j else 0 for j in range(3)] for i in range(3)]


def test_model_validation():
    with pytest.raises(ValueError):
        DiscreteHVModel(())
    with pytest.raises(ValueError, match="sum"):
        DiscreteHVModel(((E[0], E[0], F(1, 2)),))
    with pytest.raises(ValueError, match="negative"):
        DiscreteHVModel(((E[0], E[0], F(3, 2)), (E[1], E[1], F(-1, 2))))
    with pytest.raises(ValueError, match="longer"):
        DiscreteHVModel((((F(1), F(1), F(0)), E[0], F(1)),))
    signed = DiscreteHVModel(((E[0], E[0], F(3, 2)), (E[1], E[1], F(-1, 2))), signed=True)
    assert signed.signed


def test_model_state_examples():
    zero = (F(0),) * 3
    assert model_state(DiscreteHVModel(((zero, zero, F(1)),))) == \
        identity(4, GaussianRational(F(1, 4)), GaussianRational(0))
    iso = twirl(DiscreteHVModel(((E[2], neg(E[2]), F(1)),)))
    assert model_state(iso) == werner_state(F(-1, 3))
    assert model_state(signed_eta_model(F(-1))) == werner_state(F(-1))


def test_twirl_of_point_mass():
    t = twirl(DiscreteHVModel(((E[2], neg(E[2]), F(1)),)))
    assert len(t.support) == 24
    mean_a, mean_b, corr = model_moments(t)
    assert mean_a == [0, 0, 0] and mean_b == [0, 0, 0]
    assert corr == [[F(-1, 3) if i == j else 0 for j in range(3)] for i in range(3)]
    assert t == analytic_witness()


def test_twirl_idempotent_at_moment_level():
    once = twirl(signed_eta_model(F(1, 5)))
    twice = twirl(once)
    assert model_moments(once) == model_moments(twice)


def test_twirl_properties_on_random_models():
    rng = np.random.default_rng(11)
    for _ in range(50):
        m = random_unsigned_model(rng, int(rng.integers(1, 5)))
        t = twirl(m)
        assert abs(sum(p.w for p in t.support) - 1) < 1e-12
        assert all(np.dot(p.a, p.a) <= 1 + 1e-12 and np.dot(p.b, p.b) <= 1 + 1e-12 for p in t.support)
        mean_a, mean_b, corr = model_moments(t)
        corr = np.array(corr, dtype=float)
        assert np.max(np.abs(corr - np.trace(corr) / 3 * np.eye(3))) < 1e-12
        assert np.max(np.abs(mean_a)) < 1e-12
        assert model_eta(t) == pytest.approx(np.trace(np.array(model_moments(m)[2])) / 3, abs=1e-12)
        assert abs(model_eta(t)) <= 1 / 3 + 1e-12


def test_unsigned_models_are_never_entangled():
    rng = np.random.default_rng(12)
    for _ in range(100):
        m = random_unsigned_model(rng, int(rng.integers(1, 6)))
        rho = model_state(m)
        assert np.allclose(rho, rho.conj().T) and abs(np.trace(rho) - 1) < 1e-12
        assert classify_state(rho) is WernerClass.SEPARABLE


@pytest.mark.parametrize("eta", [F(-1), F(-3, 4), F(-1, 2), F(-1, 3), F(0), F(1, 3), F(1)])
def test_signed_model_reproduces_werner(eta):
    m = signed_eta_model(eta)
    assert sum(p.w for p in m.support) == 1
    mean_a, mean_b, corr = model_moments(m)
    assert mean_a == [0, 0, 0] and mean_b == [0, 0, 0]
    assert corr == [[eta if i == j else 0 for j in range(3)] for i in range(3)]
    rho = model_state(m)
    assert rho == werner_state(eta)
    assert is_hermitian_exact(rho) and trace(rho) == 1
    assert m.signed == (abs(eta) > F(1, 3))


def test_signed_model_minus_one_weights():
    m = signed_eta_model(F(-1))
    weights = sorted(p.w for p in m.support)
    assert weights == [F(-1, 6)] * 6 + [F(1, 3)] * 6


def test_signed_model_float_and_range():
    m = signed_eta_model(-0.75)
    assert np.allclose(model_state(m), to_numpy(werner_state(-0.75)))
    with pytest.raises(ValueError):
        signed_eta_model(F(5, 4))


def test_search_converges_to_classical_bound():
    result = max_anticorrelation_search(SearchConfig(n_points=4, restarts=8, iters=500, seed=3))
    assert abs(result.best_eta + 1 / 3) < 1e-3
    assert result.witness_eta == F(-1, 3)
    assert model_eta(result.model) == pytest.approx(result.best_eta, abs=1e-12)
    history = [v for _, v in result.history]
    assert all(b <= a for a, b in zip(history, history[1:]))


def test_search_from_analytic_witness():
    result = max_anticorrelation_search(SearchConfig(n_points=1, restarts=1, iters=50),
                                        init=[((0, 0, 1), (0, 0, -1))])
    assert result.best_eta == -1 / 3


def test_zero_step_keeps_initial_eta():
    cfg = SearchConfig(step=0.0, iters=20, restarts=1, seed=5)
    result = max_anticorrelation_search(cfg)
    assert result.best_eta == result.history[0][1]
    assert all(v == result.best_eta for _, v in result.history)


def test_search_is_deterministic():
    cfg = SearchConfig(iters=100, seed=9)
    a, b = max_anticorrelation_search(cfg), max_anticorrelation_search(cfg)
    assert a.best_eta == b.best_eta and a.history == b.history


@pytest.mark.parametrize("kwargs", [{"n_points": 0}, {"restarts": 0}, {"iters": -1},
                                    {"step": -0.1}, {"step": float("nan")}])
def test_bad_search_config(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(**kwargs)


def test_model_json_round_trip():
    m = signed_eta_model(F(-2, 3))
    assert DiscreteHVModel.from_json(m.to_json()) == m
    rng = np.random.default_rng(0)
    f = random_unsigned_model(rng, 3)
    assert DiscreteHVModel.from_json(f.to_json()) == f
