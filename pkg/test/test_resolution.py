"""
Local models near a critical level
"""
import numpy as np
from nose.tools import raises

from transgression_lab import errors
from transgression_lab.flows import local_model_flow
from transgression_lab.resolution import (LocalModel, family_blowup,
                                          flowline_level_point, level_time,
                                          psi, theta_delta)


def test_psi_inverts_the_corner_coordinates():
    rng = np.random.default_rng(0)
    for t, q in zip(rng.uniform(-1, 1, 50), rng.uniform(0, 1, 50)):
        r, s = psi(t, q)
        assert r >= 0 and s >= 0
        assert abs(r * s - q) < 1e-13
        assert abs((r * r - s * s) / 2 - t) < 1e-13


def test_psi_on_the_axes():
    assert psi(0.5, 0.0) == (1.0, 0.0)
    assert psi(-0.5, 0.0) == (0.0, 1.0)
    assert psi(0.0, 1.0) == (1.0, 1.0)


@raises(errors.ValidationError)
def test_psi_needs_a_nonnegative_product():
    psi(0.1, -1e-3)


@raises(errors.ValidationError)
def test_psi_respects_the_level_window():
    LocalModel(1, 1, delta=0.5).psi(0.6, 0.1)


@raises(errors.ValidationError)
def test_psi_respects_the_product_bound():
    psi(0.1, 2.0, epsilon=1.0)


def test_family_blowup_lands_on_the_level():
    model = LocalModel(2, 3, 1)
    xhat = np.array([0.6, 0.8])
    yhat = np.array([0.0, 1.0, 0.0])
    x, y, z = family_blowup(-0.3, 0.25, xhat, yhat, [4.0])
    assert abs(model.potential(x, y) + 0.3) < 1e-14
    assert abs(np.linalg.norm(x) * np.linalg.norm(y) - 0.25) < 1e-14
    assert model.contains(x, y, z)
    assert z.tolist() == [4.0]


@raises(errors.ValidationError)
def test_family_blowup_needs_unit_directions():
    family_blowup(0.0, 0.1, [1.0, 1.0], [1.0])


@raises(errors.DimensionError)
def test_model_dimensions():
    LocalModel(1, 1).contains([1.0, 0.0], [1.0])


def test_flowline_meets_the_level():
    x, y, z = np.array([0.3, -0.1]), np.array([0.2]), np.array([1.5])
    for t in (-0.4, 0.0, 0.7):
        X, Y, Z = flowline_level_point(x, y, z, t)
        assert abs(LocalModel.potential(X, Y) - t) < 1e-13
        s = level_time(x, y, t)
        Xs, Ys, Zs = local_model_flow(s, x, y, z)
        assert np.allclose(X, Xs, atol=1e-13)
        assert np.allclose(Y, Ys, atol=1e-13)
        assert np.array_equal(Z, Zs)


@raises(errors.BrokenTrajectoryError)
def test_flowline_into_the_critical_set():
    flowline_level_point([0.0, 0.0], [1.0], [], 0.5)


@raises(errors.BrokenTrajectoryError)
def test_level_time_of_a_stable_point():
    level_time([1.0], [0.0], 0.2)


def _section(a, b):
    return np.array([1.0 + a.dot(a), b[0]]), np.array([b[0] - a[0]])


def test_theta_delta_lands_on_the_level():
    v = np.array([0.0, 1.0])
    b = np.array([0.4])
    alpha = lambda a, b: _section(a, b)[0]
    beta = lambda a, b: _section(a, b)[1]
    for lam in (0.0, 0.3, 1.0):
        x, y, z = theta_delta(lam, v, b, alpha, beta, 0.5)
        assert abs(LocalModel.potential(x, y) - 0.5) < 1e-14
        # the point lies on the flowline of the section value
        assert abs(np.linalg.norm(x) * np.linalg.norm(y)
                   - lam * np.linalg.norm(alpha(lam * v, b))) < 1e-14
        assert np.allclose(z, beta(lam * v, b))


def test_theta_delta_is_continuous_at_the_stable_manifold():
    v = np.array([1.0])
    alpha = lambda a, b: np.array([2.0])
    beta = lambda a, b: np.zeros(0)
    near = theta_delta(1e-9, v, [], alpha, beta, 0.5)
    at = theta_delta(0.0, v, [], alpha, beta, 0.5)
    assert np.allclose(near[0], at[0], atol=1e-8)
    assert np.allclose(near[1], at[1], atol=1e-8)


@raises(errors.ValidationError)
def test_theta_delta_lambda_range():
    theta_delta(1.5, [1.0], [], lambda a, b: [1.0], lambda a, b: [], 0.5)
