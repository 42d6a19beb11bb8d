# -*- coding: utf-8 -*-
"""
Exterior algebra of forms evaluated at a single point of a chart, and of
square matrices whose entries are such forms.

Multi-indices are strictly increasing tuples of 0-based coordinate numbers.

    >>> dx = AlternatingForm.basis(2, 0)
    >>> dy = AlternatingForm.basis(2, 1)
    >>> dx.wedge(dy).coeffs
    {(0, 1): (1+0j)}
    >>> dy.wedge(dx).coeffs
    {(0, 1): (-1+0j)}
    >>> dx.wedge(dx).coeffs
    {}

"""
import itertools
from math import factorial

import numpy as np
from scipy import linalg

from . import errors
from .util import max_abs, merge_indices, sort_sign

__all__ = ['AlternatingForm', 'FormMatrix', 'wedge', 'form_matrix_product',
           'supertrace', 'berezin', 'form_exp', 'form_determinant',
           'form_pfaffian', 'SUPERTRACE_MODES']


SUPERTRACE_MODES = ('plain', 'even', 'odd', 'wstr')

COMMUTE_TOL = 1e-12


class AlternatingForm(object):
    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, dim, coeffs=None):
        self.dim = int(dim)
        self.coeffs = {}
        for index, value in (coeffs or {}).items():
            index = tuple(index)
            if any(i < 0 or i >= self.dim for i in index):
                raise errors.DimensionError(
                        "index %r outside chart of dimension %s"
                        % (index, self.dim))
            sign, key = sort_sign(index)
            if sign == 0 or value == 0:
                continue
            self.coeffs[key] = self.coeffs.get(key, 0j) + sign * complex(value)
        self.coeffs = {k: v for k, v in self.coeffs.items() if v != 0}

    @classmethod
    def basis(cls, dim, *indices):
        return cls(dim, {tuple(indices): 1.0})

    @classmethod
    def constant(cls, dim, value):
        return cls(dim, {(): value})

    @property
    def degree(self):
        """Common degree of all nonzero coefficients, None when mixed."""
        degrees = set(len(k) for k in self.coeffs)
        if len(degrees) > 1:
            return None
        return degrees.pop() if degrees else 0

    @property
    def is_mixed(self):
        return self.degree is None

    def component(self, k):
        coeffs = self.coeffs
        return AlternatingForm(
            self.dim, {I: v for I, v in coeffs.items() if len(I) == k})

    def coefficient(self, *indices):
        sign, key = sort_sign(indices)
        if sign == 0:
            return 0j
        return sign * self.coeffs.get(key, 0j)

    @property
    def top(self):
        return self.coeffs.get(tuple(range(self.dim)), 0j)

    def wedge(self, other):
        if self.dim != other.dim:
            raise errors.DimensionError(
                    "cannot wedge forms on charts of dimension %s and %s"
                    % (self.dim, other.dim))
        out = {}
        for I, a in self.coeffs.items():
            for J, b in other.coeffs.items():
                sign, K = merge_indices(I, J)
                if sign:
                    out[K] = out.get(K, 0j) + sign * a * b
        return AlternatingForm(self.dim, out)

    def map_degrees(self, factor):
        """Multiply the degree ``k`` part by ``factor(k)``."""
        return AlternatingForm(
                self.dim,
                {I: v * factor(len(I)) for I, v in self.coeffs.items()})

    def shifted(self, offset, new_dim):
        if offset + self.dim > new_dim:
            raise errors.DimensionError("shifted form does not fit")
        return AlternatingForm(
                new_dim,
                {tuple(i + offset for i in I): v
                 for I, v in self.coeffs.items()})

    def pullback(self, jacobian):
        """
        Pull back along a map whose Jacobian has shape
        ``(self.dim, new_dim)``.
        """
        jacobian = np.asarray(jacobian)
        if jacobian.ndim != 2 or jacobian.shape[0] != self.dim:
            raise errors.DimensionError("Jacobian shape %r does not match "
                                        "form dimension %s"
                                        % (jacobian.shape, self.dim))
        new_dim = jacobian.shape[1]
        out = {}
        for I, v in self.coeffs.items():
            k = len(I)
            if k == 0:
                out[()] = out.get((), 0j) + v
                continue
            for A in itertools.combinations(range(new_dim), k):
                minor = jacobian[np.ix_(I, A)]
                out[A] = out.get(A, 0j) + v * linalg.det(minor)
        return AlternatingForm(new_dim, out)

    def conjugate(self):
        return AlternatingForm(
                self.dim, {I: v.conjugate() for I, v in self.coeffs.items()})

    def allclose(self, other, atol=1e-10):
        if isinstance(other, (int, float, complex)):
            other = AlternatingForm.constant(self.dim, other)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(abs(self.coeffs.get(k, 0j) - other.coeffs.get(k, 0j))
                   <= atol for k in keys)

    def norm(self):
        return max([abs(v) for v in self.coeffs.values()] or [0.0])

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = AlternatingForm.constant(self.dim, other)
        if self.dim != other.dim:
            raise errors.DimensionError("cannot add forms of different "
                                        "chart dimension")
        out = dict(self.coeffs)
        for I, v in other.coeffs.items():
            out[I] = out.get(I, 0j) + v
        return AlternatingForm(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if isinstance(scalar, AlternatingForm):
            return self.wedge(scalar)
        return AlternatingForm(
                self.dim, {I: v * scalar for I, v in self.coeffs.items()})

    def __rmul__(self, scalar):
        return self * scalar

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __repr__(self):
        return "AlternatingForm(%s, %r)" % (self.dim, self.coeffs)


def wedge(a, b):
    return a.wedge(b)


class FormMatrix(object):
    """
    An ``size x size`` matrix of forms on a ``dim`` dimensional chart,
    stored as one complex coefficient matrix per multi-index. ``split`` is
    an optional grading ``(p, q)`` with ``p + q == size``.
    """

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, size, dim, blocks=None, split=None):
        self.size = int(size)
        self.dim = int(dim)
        if split is not None:
            split = tuple(int(s) for s in split)
            if len(split) != 2 or sum(split) != self.size or min(split) < 0:
                raise errors.DimensionError(
                        "grading split %r does not add up to %s"
                        % (split, self.size))
        self.split = split
        self.blocks = {}
        for index, block in (blocks or {}).items():
            block = np.asarray(block, dtype=complex)
            if block.shape != (self.size, self.size):
                raise errors.DimensionError(
                        "block of shape %r in a matrix of size %s"
                        % (block.shape, self.size))
            sign, key = sort_sign(index)
            if sign == 0:
                continue
            if any(i < 0 or i >= self.dim for i in key):
                raise errors.DimensionError(
                        "index %r outside chart of dimension %s"
                        % (key, self.dim))
            if key in self.blocks:
                self.blocks[key] = self.blocks[key] + sign * block
            else:
                self.blocks[key] = sign * block

    @classmethod
    def identity(cls, size, dim, split=None):
        return cls(size, dim, {(): np.eye(size)}, split)

    @classmethod
    def from_matrix(cls, matrix, dim, split=None):
        matrix = np.asarray(matrix, dtype=complex)
        return cls(matrix.shape[0], dim, {(): matrix}, split)

    @classmethod
    def scalar(cls, form, size=1, split=None):
        return cls(size, form.dim,
                   {I: v * np.eye(size) for I, v in form.coeffs.items()},
                   split)

    @classmethod
    def from_forms(cls, entries, split=None):
        size = len(entries)
        dims = set(f.dim for row in entries for f in row)
        if len(dims) != 1 or any(len(row) != size for row in entries):
            raise errors.DimensionError(
                    "entries must be a square array of forms on one chart")
        dim = dims.pop()
        blocks = {}
        for i, row in enumerate(entries):
            for j, form in enumerate(row):
                for I, v in form.coeffs.items():
                    if I not in blocks:
                        blocks[I] = np.zeros((size, size), dtype=complex)
                    blocks[I][i, j] += v
        return cls(size, dim, blocks, split)

    @classmethod
    def from_one_forms(cls, components, split=None):
        """Matrix-valued one-form ``sum_a components[a] dx_a``."""
        components = np.asarray(components, dtype=complex)
        dim, size = components.shape[0], components.shape[1]
        return cls(size, dim,
                   {(a,): components[a] for a in range(dim)}, split)

    def with_split(self, split):
        return FormMatrix(self.size, self.dim, self.blocks, split)

    def entry(self, i, j):
        return AlternatingForm(
                self.dim, {I: b[i, j] for I, b in self.blocks.items()})

    @property
    def degree0(self):
        return self.blocks.get((), np.zeros((self.size, self.size),
                                            dtype=complex))

    def positive_part(self):
        return FormMatrix(self.size, self.dim,
                          {I: b for I, b in self.blocks.items() if I},
                          self.split)

    def component(self, k):
        return FormMatrix(self.size, self.dim,
                          {I: b for I, b in self.blocks.items()
                           if len(I) == k}, self.split)

    def map_degrees(self, factor):
        return FormMatrix(self.size, self.dim,
                          {I: b * factor(len(I))
                           for I, b in self.blocks.items()}, self.split)

    def truncated(self, degree):
        return FormMatrix(self.size, self.dim,
                          {I: b for I, b in self.blocks.items()
                           if len(I) <= degree}, self.split)

    def transform(self, left, right):
        """Entrywise ``left . M . right`` with degree-0 matrices."""
        left = np.asarray(left)
        right = np.asarray(right)
        return FormMatrix(left.shape[0], self.dim,
                          {I: left.dot(b).dot(right)
                           for I, b in self.blocks.items()}, self.split)

    def trace(self):
        return supertrace(self, 'plain')

    def power(self, k):
        out = FormMatrix.identity(self.size, self.dim, self.split)
        for _ in range(k):
            out = form_matrix_product(out, self)
        return out

    def norm(self):
        return max([max_abs(b) for b in self.blocks.values()] or [0.0])

    def allclose(self, other, atol=1e-10):
        keys = set(self.blocks) | set(other.blocks)
        zero = np.zeros((self.size, self.size))
        get, other_get = self.blocks.get, other.blocks.get
        return all(max_abs(get(k, zero) - other_get(k, zero)) <= atol
                   for k in keys)

    def _check(self, other):
        if self.size != other.size or self.dim != other.dim:
            raise errors.DimensionError(
                    "form matrices of size/dimension %s/%s and %s/%s"
                    % (self.size, self.dim, other.size, other.dim))

    def __add__(self, other):
        self._check(other)
        blocks = dict(self.blocks)
        for I, b in other.blocks.items():
            blocks[I] = blocks[I] + b if I in blocks else b
        return FormMatrix(self.size, self.dim, blocks,
                          self.split or other.split)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return FormMatrix(self.size, self.dim,
                          {I: b * scalar for I, b in self.blocks.items()},
                          self.split)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return form_matrix_product(self, other)

    def __repr__(self):
        return "FormMatrix(%s, %s, %d blocks, split=%r)" % (
                self.size, self.dim, len(self.blocks), self.split)


def form_matrix_product(P, Q):
    P._check(Q)
    out = {}
    for I, a in P.blocks.items():
        for J, b in Q.blocks.items():
            sign, K = merge_indices(I, J)
            if not sign:
                continue
            term = sign * a.dot(b)
            out[K] = out[K] + term if K in out else term
    return FormMatrix(P.size, P.dim, out, P.split or Q.split)


def supertrace(M, mode='plain'):
    """
    Trace of a form matrix under one of four gradings.

    ``even`` is ``tr(top-left) - tr(bottom-right)``, ``odd`` the trace of the
    bottom-left block of a doubled matrix and ``wstr`` the weighted trace
    ``n tr(bottom-right) - (n - 1) tr(top-left)`` with ``n = p + q``, meant
    for splits ``(n - 1, 1)``.

    >>> supertrace(FormMatrix.identity(3, 0, split=(2, 1)), 'even').coeffs
    {(): (1+0j)}
    """
    if mode not in SUPERTRACE_MODES:
        raise errors.UsageError("unknown supertrace mode %r" % mode)
    if mode == 'plain':
        return AlternatingForm(
                M.dim, {I: np.trace(b) for I, b in M.blocks.items()})
    if M.split is None:
        raise errors.MISSING_SPLIT
    p, q = M.split
    if mode == 'even':
        func = lambda b: np.trace(b[:p, :p]) - np.trace(b[p:, p:])
    elif mode == 'odd':
        if p != q:
            raise errors.DimensionError(
                    "odd supertrace needs a doubled matrix, split %r"
                    % (M.split,))
        func = lambda b: np.trace(b[p:, :p])
    else:
        n = p + q
        func = lambda b: (n * np.trace(b[p:, p:])
                          - (n - 1) * np.trace(b[:p, :p]))
    return AlternatingForm(M.dim, {I: func(b) for I, b in M.blocks.items()})


def berezin(element, fiber_rank, fiber_orientation=1):
    """
    Top fiber-degree coefficient of an element of the exterior algebra on
    ``base + fiber`` generators, where the fiber generators are the last
    ``fiber_rank`` ones. Returns a form on the base chart.

    >>> berezin(AlternatingForm.basis(2, 0, 1), 2).coeffs
    {(): (1+0j)}
    >>> berezin(AlternatingForm.basis(2, 0), 2).coeffs
    {}
    """
    if isinstance(element, FormMatrix):
        if element.size != 1:
            raise errors.DimensionError("Berezin integral of a %sx%s matrix"
                                        % (element.size, element.size))
        element = element.entry(0, 0)
    base = element.dim - fiber_rank
    if base < 0:
        raise errors.DimensionError("fiber rank exceeds chart dimension")
    fiber = tuple(range(base, element.dim))
    out = {}
    for I, v in element.coeffs.items():
        if I[len(I) - fiber_rank:] == fiber and len(I) >= fiber_rank:
            out[I[:len(I) - fiber_rank]] = fiber_orientation * v
    return AlternatingForm(base, out)


def _commutes(M0, blocks):
    scale = max(max_abs(M0), 1.0)
    return all(max_abs(M0.dot(b) - b.dot(M0)) <= COMMUTE_TOL * scale
               * max(max_abs(b), 1.0) for b in blocks.values())


def _divided_differences(values, order):
    """
    Divided differences of exp on all ``order + 1`` tuples of ``values``,
    read off the corner of the exponential of a bidiagonal matrix.
    """
    n = len(values)
    tuples = np.array(list(itertools.product(range(n), repeat=order + 1)))
    stack = np.zeros((len(tuples), order + 1, order + 1), dtype=complex)
    rows = np.arange(order + 1)
    stack[:, rows, rows] = values[tuples]
    stack[:, rows[:-1], rows[1:]] = 1.0
    corner = linalg.expm(stack)[:, 0, order]
    return corner.reshape((n,) * (order + 1))


def form_exp(M, truncation_degree=None):
    """
    Exponential of a form matrix. The positive degree part is nilpotent so
    the series is finite; it is cut at ``truncation_degree`` (default the
    chart dimension).

    When the degree-0 part commutes with the rest the result is
    ``expm(M0) . sum N^k / k!``. Otherwise ``M0`` must be hermitian and the
    Duhamel expansion is summed in its eigenbasis.
    """
    if truncation_degree is None:
        truncation_degree = M.dim
    if truncation_degree < 0:
        raise errors.DegreeError("negative truncation degree")
    M0 = M.degree0
    N = M.positive_part()
    if _commutes(M0, N.blocks):
        E0 = linalg.expm(M0)
        total = FormMatrix.identity(M.size, M.dim)
        term = FormMatrix.identity(M.size, M.dim)
        for k in range(1, truncation_degree + 1):
            term = form_matrix_product(term, N).truncated(truncation_degree)
            if not term.blocks:
                break
            total = total + term * (1.0 / factorial(k))
        return total.transform(E0, np.eye(M.size)).with_split(M.split)
    if max_abs(M0 - M0.conj().T) > 1e-10 * max(max_abs(M0), 1.0):
        raise errors.UsageError("form_exp needs a hermitian degree-0 part "
                                "when it does not commute with the rest")
    values, V = linalg.eigh((M0 + M0.conj().T) / 2)
    values = values.astype(complex)
    rotated = {I: V.conj().T.dot(b).dot(V) for I, b in N.blocks.items()}
    out = {(): np.diag(np.exp(values))}
    paths = {(): np.ones(M.size, dtype=complex)}
    for k in range(1, truncation_degree + 1):
        grown = {}
        for K, path in paths.items():
            for J, b in rotated.items():
                sign, L = merge_indices(K, J)
                if not sign or len(L) > truncation_degree:
                    continue
                # extend every path by one more edge
                step = sign * path[..., :, None] * b
                grown[L] = grown[L] + step if L in grown else step
        if not grown:
            break
        paths = grown
        dd = _divided_differences(values, k)
        for L, path in paths.items():
            summed = path * dd
            inner_axes = tuple(range(1, k))
            term = summed.sum(axis=inner_axes) if inner_axes else summed
            out[L] = out[L] + term if L in out else term
    blocks = {I: V.dot(b).dot(V.conj().T) for I, b in out.items()}
    return FormMatrix(M.size, M.dim, blocks, M.split)


def _entry_forms(M):
    return [[M.entry(i, j) for j in range(M.size)] for i in range(M.size)]


def form_determinant(M):
    """Leibniz determinant; entries are assumed to commute (even forms)."""
    entries = _entry_forms(M)
    total = AlternatingForm(M.dim)
    for perm in itertools.permutations(range(M.size)):
        sign, _ = sort_sign(perm)
        term = AlternatingForm.constant(M.dim, sign)
        for i, j in enumerate(perm):
            term = term.wedge(entries[i][j])
        total = total + term
    return total


def form_pfaffian(M):
    """Pfaffian of an antisymmetric matrix of even forms."""
    if M.size % 2:
        raise errors.ODD_DIMENSION
    return _form_pfaffian(_entry_forms(M), list(range(M.size)), M.dim)


def _form_pfaffian(entries, rows, dim):
    if not rows:
        return AlternatingForm.constant(dim, 1.0)
    first, rest = rows[0], rows[1:]
    total = AlternatingForm(dim)
    for pos, j in enumerate(rest):
        keep = [k for k in rest if k != j]
        sign = -1.0 if pos % 2 else 1.0
        total = total + sign * entries[first][j].wedge(
                _form_pfaffian(entries, keep, dim))
    return total
