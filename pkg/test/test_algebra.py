"""
Matrix tags, Pfaffians and the Cayley transform
"""
import numpy as np
from nose.tools import raises
from scipy import linalg

from transgression_lab import algebra, errors
from transgression_lab.algebra import (cayley, hermitian_eigen,
                                       inverse_cayley, matrix_func,
                                       pfaffian, random_hermitian,
                                       random_orthogonal, random_unitary,
                                       validate)


def _antisymmetric(n, seed):
    x = np.random.default_rng(seed).standard_normal((n, n))
    return x - x.T


def test_pfaffian_of_blocks():
    assert pfaffian(np.zeros((0, 0))) == 1.0
    m = np.zeros((4, 4))
    m[0, 1], m[2, 3] = 1.0, 2.0
    m = m - m.T
    assert pfaffian(m) == 2.0
    # a transposition of basis vectors flips the sign
    m[[1, 2]] = m[[2, 1]]
    m[:, [1, 2]] = m[:, [2, 1]]
    assert pfaffian(m) == -2.0


def test_pfaffian_squares_to_the_determinant():
    for n, seed in ((2, 1), (4, 2), (6, 3), (8, 4), (10, 5)):
        m = _antisymmetric(n, seed)
        det = linalg.det(m)
        assert abs(pfaffian(m) ** 2 - det) <= 1e-9 * max(1.0, abs(det))


def test_elimination_agrees_with_expansion():
    for seed in range(3):
        m = _antisymmetric(6, seed)
        expanded = algebra._pfaffian_expansion(m)
        eliminated = algebra._pfaffian_parlett_reid(m)
        assert abs(expanded - eliminated) <= 1e-10 * max(1.0, abs(expanded))


def test_pfaffian_of_a_singular_matrix():
    m = np.zeros((8, 8))
    m[0, 1], m[1, 0] = 3.0, -3.0
    assert pfaffian(m) == 0.0


@raises(errors.DimensionError)
def test_pfaffian_rejects_odd_size():
    pfaffian(np.zeros((3, 3)))


@raises(errors.ValidationError)
def test_pfaffian_rejects_symmetric_input():
    pfaffian(np.array([[0.0, 1.0], [1.0, 0.0]]))


@raises(errors.UsageError)
def test_unknown_tag():
    validate(np.eye(2), 'orthogonal')


@raises(errors.ValidationError)
def test_hermitian_tag():
    validate(np.array([[0.0, 1j], [1j, 0.0]]), 'hermitian')


@raises(errors.DimensionError)
def test_square_tags_need_square_matrices():
    validate(np.zeros((2, 3)), 'unitary')


def test_real_and_complex_tags_accept_any_shape():
    assert validate(np.zeros((2, 3)), 'complex').shape == (2, 3)
    assert validate(np.ones(4), 'real').shape == (4,)


def test_cayley_round_trip():
    rng = np.random.default_rng(7)
    a = random_hermitian(3, rng)
    u = cayley(a)
    assert np.allclose(u.conj().T.dot(u), np.eye(3), atol=1e-12)
    assert np.allclose(inverse_cayley(u), a, atol=1e-10)
    # eigenvalues (a - i)/(a + i) never reach 1
    assert np.min(np.abs(linalg.eigvals(u) - 1)) > 0


def test_cayley_of_zero_is_minus_one():
    assert np.allclose(cayley(np.zeros((2, 2))), -np.eye(2))


@raises(errors.ValidationError)
def test_inverse_cayley_needs_one_outside_the_spectrum():
    inverse_cayley(np.diag([1.0, -1.0]))


def test_matrix_functions():
    rng = np.random.default_rng(3)
    a = random_hermitian(4, rng, scale=0.5)
    assert np.allclose(matrix_func(a, 'exp'), linalg.expm(a), atol=1e-12)
    assert np.allclose(matrix_func(a, 'tanh'),
                       linalg.solve(matrix_func(a, 'cosh'),
                                    matrix_func(a, 'sinh')), atol=1e-12)
    values, vectors = hermitian_eigen(a)
    assert np.all(np.diff(values) >= 0)
    assert np.allclose((vectors * values).dot(vectors.conj().T), a)


@raises(errors.UsageError)
def test_unknown_matrix_function():
    matrix_func(np.eye(2), 'log')


def test_random_groups():
    rng = np.random.default_rng(0)
    for n in (1, 2, 4):
        validate(random_unitary(n, rng), 'unitary')
        q = random_orthogonal(n, rng)
        assert np.allclose(q.T.dot(q), np.eye(n))
    assert random_orthogonal(1, rng).tolist() == [[1.0]]
