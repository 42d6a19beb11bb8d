# -*- coding: utf-8 -*-
"""
Small dense matrix kernel: tag validation, Pfaffians, the Cayley transform
and functions of hermitian matrices.

    >>> import numpy as np
    >>> cayley(np.array([[0.0]]))
    array([[-1.+0.j]])
    >>> round(pfaffian(np.array([[0.0, 2.5], [-2.5, 0.0]])), 12)
    2.5

"""
import numpy as np
from scipy import linalg
from scipy.stats import ortho_group, unitary_group

from . import errors
from .util import max_abs

__all__ = ['validate', 'pfaffian', 'cayley', 'inverse_cayley',
           'hermitian_eigen', 'matrix_func', 'random_hermitian',
           'random_unitary', 'random_orthogonal']


TAGS = ('real', 'complex', 'hermitian', 'unitary', 'antisymmetric')

TOLERANCES = {
    'hermitian': 1e-12,
    'unitary': 1e-10,
    'antisymmetric': 1e-12,
}

MATRIX_FUNCTIONS = {
    'exp': np.exp,
    'tanh': np.tanh,
    'sinh': np.sinh,
    'cosh': np.cosh,
}


def validate(m, tag, tol=None):
    m = np.asarray(m)
    if tag not in TAGS:
        raise errors.UsageError("unknown matrix tag %r" % tag)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        if tag in ('real', 'complex'):
            return m
        raise errors.NOT_SQUARE
    if tol is None:
        tol = TOLERANCES.get(tag, 0.0)
    scale = max(max_abs(m), 1.0)
    if tag == 'real' and np.iscomplexobj(m) and max_abs(m.imag) > 0:
        raise errors.ValidationError("matrix has complex entries")
    elif tag == 'hermitian':
        if max_abs(m - m.conj().T) > tol * scale:
            raise errors.ValidationError("matrix is not hermitian")
    elif tag == 'unitary':
        if max_abs(m.conj().T.dot(m) - np.eye(m.shape[0])) > tol:
            raise errors.ValidationError("matrix is not unitary")
    elif tag == 'antisymmetric':
        if np.iscomplexobj(m) and max_abs(m.imag) > tol * scale:
            raise errors.ValidationError("antisymmetric matrix must be real")
        if max_abs(m + m.T) > tol * scale:
            raise errors.ValidationError("matrix is not antisymmetric")
    return m


def pfaffian(m, tol=None):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise errors.NOT_SQUARE
    if m.shape[0] % 2:
        raise errors.ODD_DIMENSION
    validate(m, 'antisymmetric', tol)
    m = np.real(m).astype(float)
    if m.shape[0] <= 6:
        return _pfaffian_expansion(m)
    return _pfaffian_parlett_reid(m)


def _pfaffian_expansion(m):
    n = m.shape[0]
    if n == 0:
        return 1.0
    total = 0.0
    rest = list(range(1, n))
    for pos, j in enumerate(rest):
        if m[0, j] == 0.0:
            continue
        keep = [k for k in rest if k != j]
        sign = -1.0 if pos % 2 else 1.0
        total += sign * m[0, j] * _pfaffian_expansion(m[np.ix_(keep, keep)])
    return total


def _pfaffian_parlett_reid(m):
    # Gaussian elimination with pivoting to tridiagonal form, keeping the
    # product of the (k, k+1) pivots.
    a = m.copy()
    n = a.shape[0]
    value = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(a[k + 1:, k]).argmax())
        if kp != k + 1:
            a[[k + 1, kp], k:] = a[[kp, k + 1], k:]
            a[k:, [k + 1, kp]] = a[k:, [kp, k + 1]]
            value = -value
        if a[k + 1, k] == 0.0:
            return 0.0
        tau = a[k, k + 2:] / a[k, k + 1]
        value *= a[k, k + 1]
        if k + 2 < n:
            a[k + 2:, k + 2:] += np.outer(tau, a[k + 2:, k + 1])
            a[k + 2:, k + 2:] -= np.outer(a[k + 2:, k + 1], tau)
    return value


def cayley(a, tol=None):
    a = validate(a, 'hermitian', tol)
    n = a.shape[0]
    eye = np.eye(n)
    # (A - i)(A + i)^-1, the two factors commute
    return linalg.solve((a + 1j * eye).T, (a - 1j * eye).T).T


def inverse_cayley(u, tol=None):
    u = validate(u, 'unitary', tol)
    n = u.shape[0]
    eye = np.eye(n)
    gap = np.min(np.abs(linalg.eigvals(eye - u))) if n else 1.0
    if gap <= (tol or TOLERANCES['unitary']):
        raise errors.ValidationError("1 is an eigenvalue of U")
    return 1j * linalg.solve((eye - u).T, (eye + u).T).T


def hermitian_eigen(a, tol=None):
    a = validate(a, 'hermitian', tol)
    values, vectors = linalg.eigh(a)
    return values, vectors


def matrix_func(a, name, tol=None):
    try:
        func = MATRIX_FUNCTIONS[name]
    except KeyError:
        raise errors.UsageError("unknown matrix function %r" % name)
    values, vectors = hermitian_eigen(a, tol)
    return (vectors * func(values)).dot(vectors.conj().T)


def random_hermitian(n, rng, scale=1.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (z + z.conj().T) / 2


def random_unitary(n, rng):
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return unitary_group.rvs(n, random_state=rng)


def random_orthogonal(n, rng):
    if n == 1:
        return np.array([[1.0]])
    return ortho_group.rvs(n, random_state=rng)
