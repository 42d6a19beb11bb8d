# -*- coding: utf-8 -*-
"""
Local models near a critical level: the corner map ``psi``, the family
blow-up ``Psi``, the level point of a flowline and the section blow-up
``theta_delta``.

The model function is ``f(x, y, z) = (|x|^2 - |y|^2) / 2`` with flow
``(e^t x, e^-t y, z)``.

    >>> psi(0.0, 0.0)
    (0.0, 0.0)
    >>> r, s = psi(0.3, 0.4)
    >>> round(r * s, 15), round((r * r - s * s) / 2, 15)
    (0.4, 0.3)

"""
import numpy as np

from . import errors

__all__ = ['LocalModel', 'psi', 'family_blowup', 'flowline_level_point',
           'level_time', 'theta_delta']


UNIT_TOL = 1e-12


class LocalModel(object):

    def __init__(self, k, m, p=0, delta=1.0, epsilon=1.0):
        if min(k, m, p) < 0:
            raise errors.DimensionError("block dimensions must be nonnegative")
        if delta <= 0 or epsilon <= 0:
            raise errors.ValidationError("delta and epsilon must be positive")
        self.k, self.m, self.p = k, m, p
        self.delta = delta
        self.epsilon = epsilon

    @staticmethod
    def potential(x, y, z=()):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return 0.5 * (x.dot(x) - y.dot(y))

    def contains(self, x, y, z=()):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.size != self.k or y.size != self.m or np.size(z) != self.p:
            raise errors.DimensionError("point does not match the model")
        level = x.dot(x) - y.dot(y)
        return (-2 * self.delta <= level <= 2 * self.delta
                and np.sqrt(x.dot(x) * y.dot(y)) <= self.epsilon)

    def psi(self, t, q):
        return psi(t, q, self.delta, self.epsilon)

    def __repr__(self):
        return "LocalModel(k=%s, m=%s, p=%s, delta=%g, epsilon=%g)" % (
                self.k, self.m, self.p, self.delta, self.epsilon)


def psi(t, q, delta=None, epsilon=None):
    """
    The corner map ``(t, q) -> (r, s)`` with ``r s = q`` and
    ``(r^2 - s^2) / 2 = t``.
    """
    if q < 0:
        raise errors.ValidationError("q must be nonnegative")
    if delta is not None and abs(t) > delta:
        raise errors.ValidationError("|t| = %g exceeds delta = %g"
                                     % (abs(t), delta))
    if epsilon is not None and q > epsilon:
        raise errors.ValidationError("q = %g exceeds epsilon = %g"
                                     % (q, epsilon))
    R = np.hypot(t, q)
    # the larger root first, the other from r s = q
    if t >= 0:
        r = np.sqrt(R + t)
        s = q / r if r > 0 else 0.0
    else:
        s = np.sqrt(R - t)
        r = q / s
    return float(r), float(s)


def _unit(vector, name):
    vector = np.asarray(vector, dtype=float)
    if abs(np.linalg.norm(vector) - 1) > UNIT_TOL:
        raise errors.ValidationError("%s is not a unit vector" % name)
    return vector


def family_blowup(t, q, xhat, yhat, z=(), delta=None, epsilon=None):
    """``(r xhat, s yhat, z)`` with ``(r, s) = psi(t, q)``."""
    xhat = _unit(xhat, 'xhat')
    yhat = _unit(yhat, 'yhat')
    r, s = psi(t, q, delta, epsilon)
    return r * xhat, s * yhat, np.asarray(z, dtype=float)


def flowline_level_point(x, y, z, t):
    """Where the flowline through ``(x, y, z)`` meets ``f = t``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise errors.BROKEN_TRAJECTORY
    return family_blowup(t, nx * ny, x / nx, y / ny, z)


def level_time(x, y, t):
    """Time ``s`` with ``f(local_model_flow(s, x, y, z)) = t``."""
    X = np.dot(x, x)
    Y = np.dot(y, y)
    if X == 0 or Y == 0:
        raise errors.BROKEN_TRAJECTORY
    R = np.hypot(t, np.sqrt(X * Y))
    u = (t + R) / X if t >= 0 else Y / (R - t)
    return 0.5 * np.log(u)


def theta_delta(lam, v, b, alpha, beta, delta, epsilon=np.inf):
    """
    Blow-up of a section ``(a, b) -> (a, alpha(a, b), beta(a, b))`` near the
    stable manifold, evaluated at ``a = lam v`` on the level ``f = delta``.
    """
    if not 0 <= lam <= 1:
        raise errors.ValidationError("lambda must lie in [0, 1]")
    v = _unit(v, 'v')
    a = lam * v
    a_value = np.asarray(alpha(a, b), dtype=float)
    b_value = np.asarray(beta(a, b), dtype=float)
    product = lam * np.linalg.norm(a_value)
    if product > epsilon:
        raise errors.ValidationError(
                "|a||alpha| = %g exceeds epsilon = %g" % (product, epsilon))
    w = np.sqrt(np.hypot(delta, product) + delta)
    return v * w, lam * a_value / w, b_value
