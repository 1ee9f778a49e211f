"""
Tests for the optimizers of MARIN
"""

import numpy as np
import pytest

from marin.optim.nelder_mead import _nelder_mead, _initial_simplex
from marin.optim.ascent import _finite_diff_ascent, _central_gradient
from marin.optim.tpe import _optuna_tpe, EarlyStoppingCallback


def _rosenbrock(x):
    return (1 - x[0])**2 + 100 * (x[1] - x[0]**2)**2


def test_initial_simplex():
    simplex = _initial_simplex(np.zeros(3), 0.5)
    assert simplex.shape == (4, 3)
    assert np.array_equal(simplex[2], [0.0, 0.5, 0.0])


def test_nelder_mead_quadratic():
    target = np.array([0.3, -1.2, 2.0])
    x, f, iters, _ = _nelder_mead(lambda x: float(np.sum((x - target)**2)), np.zeros(3))
    assert np.allclose(x, target, atol=1e-5)
    assert f < 1e-10
    assert 0 < iters <= 3000


def test_nelder_mead_rosenbrock():
    x, f, _, _ = _nelder_mead(_rosenbrock, np.array([-1.2, 1.0]), maxiter=5000)
    assert np.allclose(x, [1.0, 1.0], atol=1e-4)


def test_nelder_mead_respects_budget():
    _, _, iters, _ = _nelder_mead(_rosenbrock, np.array([-1.2, 1.0]), maxiter=10)
    assert iters <= 10


def test_central_gradient():
    grad = _central_gradient(lambda x: float(x[0]**2 + 3 * x[1]), np.array([1.0, 2.0]), 1e-6)
    assert np.allclose(grad, [2.0, 3.0], atol=1e-6)


def test_ascent_concave_quadratic():
    target = np.array([1.0, -0.5])
    x, f, _, restarts = _finite_diff_ascent(lambda x: -float(np.sum((x - target)**2)), np.zeros(2))
    assert np.allclose(x, target, atol=1e-5)
    assert f > -1e-9
    assert restarts == 0


def test_tpe_improves_on_a_smooth_function():
    x, f, ntrials, _ = _optuna_tpe(lambda x: -float(np.sum(x**2)), 2, bound=2.0,
                                   n_candidates=150, seed=3)
    assert ntrials <= 150
    assert x.shape == (2,)
    assert f == pytest.approx(-float(np.sum(x**2)))
    assert f > -0.5


def test_early_stopping_direction():
    with pytest.raises(ValueError):
        EarlyStoppingCallback(direction='sideways')
