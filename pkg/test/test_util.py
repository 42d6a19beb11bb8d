"""
Index shuffles, coordinate packing and finite differences
"""
import io
import json
import os
import tempfile

import numpy as np

from transgression_lab.util import (central_difference, inner, max_abs,
                                    merge_indices, richardson_difference,
                                    sort_sign, source_to_json, to_complex,
                                    to_real)


def test_merge_indices_counts_crossings():
    assert merge_indices((0, 1), (2,)) == (1, (0, 1, 2))
    assert merge_indices((1, 2), (0,)) == (1, (0, 1, 2))
    assert merge_indices((2,), (0, 1)) == (1, (0, 1, 2))
    assert merge_indices((1,), (0,)) == (-1, (0, 1))
    assert merge_indices((0, 3), (1, 2)) == (1, (0, 1, 2, 3))
    assert merge_indices((0, 1), (1, 2)) == (0, None)


def test_sort_sign_is_permutation_parity():
    assert sort_sign(()) == (1, ())
    assert sort_sign((0, 1, 2)) == (1, (0, 1, 2))
    assert sort_sign((1, 0, 2)) == (-1, (0, 1, 2))
    assert sort_sign((2, 1, 0)) == (-1, (0, 1, 2))
    assert sort_sign((3, 0, 2, 1)) == (-1, (0, 1, 2, 3))
    assert sort_sign((0, 2, 0)) == (0, None)


def test_complex_packing():
    z = np.array([1 + 2j, -3.5j, 4.0])
    packed = to_real(z)
    assert packed.tolist() == [1.0, 2.0, 0.0, -3.5, 4.0, 0.0]
    assert np.array_equal(to_complex(packed), z)
    assert to_real(2j).tolist() == [0.0, 2.0]


def test_central_difference_of_a_quadratic():
    func = lambda x: x[0] ** 2 + 3 * x[0] * x[1]
    derivative = central_difference(func, np.array([1.0, 2.0]))
    assert np.allclose(derivative, [8.0, 3.0], atol=1e-8)


def test_one_sided_stencils_stay_inside_the_box():
    seen = []

    def func(x):
        seen.append(x[0])
        return x[0] ** 2

    lower, upper = np.array([0.0]), np.array([1.0])
    at_lower = central_difference(func, np.array([0.0]), lower=lower,
                                  upper=upper)
    at_upper = central_difference(func, np.array([1.0]), lower=lower,
                                  upper=upper)
    assert abs(at_lower[0]) < 1e-8
    assert abs(at_upper[0] - 2.0) < 1e-8
    assert min(seen) >= 0.0 and max(seen) <= 1.0


def test_richardson_difference_improves_on_central():
    func = lambda x: np.exp(3 * x[0])
    x = np.array([0.7])
    exact = 3 * np.exp(2.1)
    coarse = central_difference(func, x, step=1e-2)[0]
    fine = richardson_difference(func, x, step=1e-2)[0]
    assert abs(fine - exact) < abs(coarse - exact) / 100


def test_vector_valued_differences_stack_on_the_first_axis():
    func = lambda x: np.array([[x[0], x[1]], [x[0] * x[1], 0.0]])
    derivative = central_difference(func, np.array([2.0, 5.0]))
    assert derivative.shape == (2, 2, 2)
    assert np.allclose(derivative[0], [[1.0, 0.0], [5.0, 0.0]])
    assert np.allclose(derivative[1], [[0.0, 1.0], [2.0, 0.0]])


def test_source_to_json_reads_streams_and_paths():
    doc = {'scenario': 'top_chern', 'seed': 11}
    assert source_to_json(io.StringIO(json.dumps(doc))) == doc
    assert source_to_json('  %s' % json.dumps(doc)) == doc
    handle, path = tempfile.mkstemp(suffix='.json')
    try:
        with os.fdopen(handle, 'w') as stream:
            json.dump(doc, stream)
        assert source_to_json(path) == doc
    finally:
        os.remove(path)


def test_norms():
    assert max_abs([]) == 0.0
    assert max_abs([[1.0, -4.0], [2.0, 3j]]) == 4.0
    a = np.array([[1j, 2.0], [0.0, 1.0]])
    assert inner(a, a) == 6.0
    assert inner([1.0, 0.0], [0.0, 1.0]) == 0.0
