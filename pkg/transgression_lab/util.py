import io
import json

import numpy as np

DEFAULT_STEP = 1e-5


def source_to_json(source):
    """
    Load a JSON document from a dict, a JSON string, an open stream or a
    file path.

    >>> source_to_json({'a': 1})
    {'a': 1}
    >>> source_to_json('{"seed": 7}')
    {'seed': 7}
    """
    if isinstance(source, dict):
        return source
    if hasattr(source, 'read'):
        return json.load(source)
    text = source.strip()
    if text.startswith('{') or text.startswith('['):
        return json.loads(text)
    with io.open(source, encoding='utf-8') as stream:
        return json.load(stream)


def merge_indices(first, second):
    """
    Shuffle two strictly increasing multi-indices into one, returning the
    sign of the sorting permutation (0 when they overlap).

    >>> merge_indices((0, 2), (1,))
    (-1, (0, 1, 2))
    >>> merge_indices((1,), (1,))
    (0, None)
    >>> merge_indices((), (3,))
    (1, (3,))
    """
    if not first:
        return 1, second
    if not second:
        return 1, first
    if set(first).intersection(second):
        return 0, None
    swaps = 0
    for j in second:
        swaps += sum(1 for i in first if i > j)
    return (-1 if swaps % 2 else 1), tuple(sorted(first + second))


def sort_sign(indices):
    """
    >>> sort_sign((2, 0, 1))
    (1, (0, 1, 2))
    >>> sort_sign((1, 0))
    (-1, (0, 1))
    >>> sort_sign((1, 1))
    (0, None)
    """
    indices = tuple(indices)
    if len(set(indices)) != len(indices):
        return 0, None
    swaps = 0
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            if indices[a] > indices[b]:
                swaps += 1
    return (-1 if swaps % 2 else 1), tuple(sorted(indices))


def to_complex(coords):
    """Interleaved real pairs to a complex vector.

    >>> to_complex([1.0, 2.0, 3.0, 4.0])
    array([1.+2.j, 3.+4.j])
    """
    coords = np.asarray(coords, dtype=float)
    return coords[0::2] + 1j * coords[1::2]


def to_real(z):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def central_difference(func, x, step=DEFAULT_STEP, lower=None, upper=None):
    """
    Derivatives of ``func`` along each coordinate of ``x``, stacked on the
    first axis. Second order one-sided stencils are used where the central
    stencil would leave ``[lower, upper]``.
    """
    x = np.asarray(x, dtype=float)
    out = []
    for axis in range(x.size):
        e = np.zeros_like(x)
        e[axis] = step
        if lower is not None and x[axis] - step < lower[axis]:
            f0, f1, f2 = func(x), func(x + e), func(x + 2 * e)
            out.append((-3 * np.asarray(f0) + 4 * np.asarray(f1)
                        - np.asarray(f2)) / (2 * step))
        elif upper is not None and x[axis] + step > upper[axis]:
            f0, f1, f2 = func(x), func(x - e), func(x - 2 * e)
            out.append((3 * np.asarray(f0) - 4 * np.asarray(f1)
                        + np.asarray(f2)) / (2 * step))
        else:
            out.append((np.asarray(func(x + e))
                        - np.asarray(func(x - e))) / (2 * step))
    return np.array(out)


def richardson_difference(func, x, step=DEFAULT_STEP, **kwargs):
    coarse = central_difference(func, x, step, **kwargs)
    fine = central_difference(func, x, step / 2, **kwargs)
    return (4 * fine - coarse) / 3


def max_abs(value):
    value = np.asarray(value)
    return float(np.max(np.abs(value))) if value.size else 0.0


def inner(a, b):
    """Real inner product Re tr(a* b) on vectors and matrices alike."""
    return float(np.real(np.vdot(np.asarray(a), np.asarray(b))))
