# -*- coding: utf-8 -*-
"""
Characteristic forms: Chern and Pfaffian forms of connections, the odd
forms ``c_{k-1/2}`` on the unitary group, the superconnection Chern
character and the Mathai-Quillen form.

A :class:`FormField` is evaluated at a point of a model space together with
tangent vectors there, and returns the form pulled back to the span of
those vectors. Forms written in chart coordinates are wrapped with
:meth:`FormField.on_chart`.

    >>> import numpy as np
    >>> c = unitary_odd_chern_form(1)
    >>> U = np.array([[1j]])
    >>> form = c.evaluate(U, np.array([[[-1.0]]]))
    >>> bool(np.isclose(form.coefficient(0), 1 / (2 * np.pi)))
    True

"""
from math import factorial

import numpy as np
from scipy import linalg

from . import errors
from .exterior import AlternatingForm, FormMatrix, berezin, form_exp, \
        form_determinant, form_pfaffian, supertrace
from .spaces import curvature
from .util import central_difference, max_abs

__all__ = ['FormField', 'top_chern_form', 'pfaffian_form', 'pfaffian_field',
           'odd_chern_form', 'unitary_odd_chern_form', 'maslov_form',
           'tilde_maslov_form', 'superconnection_curvature',
           'chern_character', 'chern_character_field', 'mathai_quillen_form',
           'mathai_quillen_field', 'superconnection_residue',
           'odd_chern_constant']


class FormField(object):
    """
    ``evaluate(x, tangents)`` returns an AlternatingForm on
    ``len(tangents)`` coordinates. ``degree`` is None for mixed forms.
    """

    def __init__(self, evaluate, degree, space_id=None, closed=False):
        self.evaluate = evaluate
        self.degree = degree
        self.space_id = space_id
        self.closed = closed

    @classmethod
    def on_chart(cls, func, dim, degree, space_id=None, closed=False):
        """Wrap ``x -> AlternatingForm(dim)`` written in chart coordinates."""
        def evaluate(x, tangents):
            form = func(np.asarray(x, dtype=float))
            tangents = np.asarray(tangents, dtype=float)
            if tangents.shape == (dim, dim) and \
                    np.array_equal(tangents, np.eye(dim)):
                return form
            return form.pullback(tangents.reshape(len(tangents), dim).T)
        field = cls(evaluate, degree, space_id, closed)
        field.chart_dim = dim
        return field

    def __call__(self, x, tangents):
        return self.evaluate(x, tangents)

    def at(self, x):
        """The form in chart coordinates (identity tangents)."""
        x = np.asarray(x, dtype=float)
        return self.evaluate(x, np.eye(x.size))

    def pullback(self, param):
        """``u -> AlternatingForm`` on the parameter box of ``param``."""
        return lambda u: self.evaluate(param(u), param.tangents(u))

    def flowed(self, flow, t):
        """The pullback by the time ``t`` map of ``flow``."""
        def evaluate(x, tangents):
            return self.evaluate(flow(t, x),
                                 flow.pushforward(t, x, tangents))
        return FormField(evaluate, self.degree, self.space_id, self.closed)

    def wedge(self, other):
        degree = None if None in (self.degree, other.degree) \
            else self.degree + other.degree
        return FormField(
                lambda x, T: self.evaluate(x, T).wedge(other.evaluate(x, T)),
                degree, self.space_id, self.closed and other.closed)

    def scaled(self, factor):
        return FormField(lambda x, T: self.evaluate(x, T) * factor,
                         self.degree, self.space_id, self.closed)

    def check_degree(self, x, tangents):
        form = self.evaluate(x, tangents)
        if self.degree is not None and form.coeffs and \
                form.degree != self.degree:
            raise errors.DegreeError("declared degree %s, evaluated %s"
                                     % (self.degree, form.degree))
        return form

    def __repr__(self):
        return "FormField(%s, degree=%s, closed=%s)" % (
                self.space_id, self.degree, self.closed)


def top_chern_form(bundle):
    """``(i/2pi)^n det F`` of a rank ``n`` bundle."""
    n = bundle.rank
    scale = (1j / (2 * np.pi)) ** n

    def func(x):
        return form_determinant(curvature(bundle, x)) * scale

    return FormField.on_chart(func, bundle.dim, 2 * n,
                              space_id=bundle.space_id, closed=True)


def _orthonormal_curvature(bundle, x):
    F = curvature(bundle, x)
    G = bundle.metric_at(x)
    values, V = linalg.eigh(G)
    if values[0] <= 0:
        raise errors.ValidationError("metric is not positive definite")
    root = (V * np.sqrt(values)).dot(V.conj().T)
    inverse = (V / np.sqrt(values)).dot(V.conj().T)
    return F.transform(root, inverse)


def pfaffian_form(bundle, x):
    """``(2pi)^{-n/2} Pf F`` in an oriented orthonormal frame."""
    n = bundle.rank
    if n % 2:
        raise errors.ODD_DIMENSION
    F = _orthonormal_curvature(bundle, x)
    for block in F.blocks.values():
        if max_abs(block + block.T) > 1e-6 * max(F.norm(), 1.0):
            raise errors.ValidationError("curvature is not antisymmetric in "
                                         "an orthonormal frame")
    return form_pfaffian(F) * (bundle.orientation / (2 * np.pi) ** (n // 2))


def pfaffian_field(bundle):
    return FormField.on_chart(lambda x: pfaffian_form(bundle, x),
                              bundle.dim, bundle.rank,
                              space_id=bundle.space_id, closed=True)


def odd_chern_constant(k):
    """
    >>> round(odd_chern_constant(1).imag, 12) == round(-1 / (2 * np.pi), 12)
    True
    """
    return -(1j / (2 * np.pi)) ** k * factorial(k - 1) ** 2 \
        / float(factorial(2 * k - 1))


def unitary_odd_chern_form(k):
    """``c_{k-1/2}`` on U(n), evaluated on matrix tangent vectors."""
    constant = odd_chern_constant(k)

    def evaluate(U, tangents):
        theta = FormMatrix.from_one_forms(
                [linalg.solve(U, T) for T in tangents])
        return theta.power(2 * k - 1).trace() * constant

    return FormField(evaluate, 2 * k - 1, space_id='U(n)', closed=True)


def odd_chern_form(k, phi):
    """``c_{k-1/2}`` pulled back to the parameter box of ``phi``."""
    field = unitary_odd_chern_form(k)
    return FormField.on_chart(
            lambda u: field.evaluate(phi(u), phi.tangents(u)),
            phi.dim, 2 * k - 1, space_id=phi.space_id, closed=True)


def tilde_maslov_form(n=None):
    """``(1/2pi i) tr U^-1 dU`` on U(n)."""
    def evaluate(U, tangents):
        return AlternatingForm(len(tangents), {
            (a,): np.trace(linalg.solve(U, T)) / (2j * np.pi)
            for a, T in enumerate(tangents)})
    return FormField(evaluate, 1, space_id='U(n)', closed=True)


def maslov_form(section, bundle):
    """
    ``(1/2pi i) tr U^-1 (nabla U)`` for a unitary endomorphism ``section`` of
    a bundle over a chart. The connection terms are computed and checked to
    cancel in the trace.
    """
    def func(x):
        U = np.asarray(section(x))
        nabla = bundle.covariant_derivative(section, x)
        plain = central_difference(section, x, bundle.step)
        coeffs = {}
        for a in range(bundle.dim):
            value = np.trace(linalg.solve(U, nabla[a]))
            if abs(value - np.trace(linalg.solve(U, plain[a]))) > \
                    1e-9 * max(abs(value), 1.0):
                raise errors.ValidationError("connection terms do not cancel "
                                             "in tr U^-1 nabla U")
            coeffs[(a,)] = value / (2j * np.pi)
        return AlternatingForm(bundle.dim, coeffs)

    return FormField.on_chart(func, bundle.dim, 1, space_id=bundle.space_id,
                              closed=True)


def _grading(size, split):
    p, q = split
    return np.concatenate([np.ones(p), -np.ones(q)])


def superconnection_curvature(bundle, A, t, parity, x):
    """
    Curvature ``F(nabla) - t^2 A^2 + t nabla A`` of the superconnection
    ``nabla + tA``; for odd parity in doubled block form with split
    ``(r, r)`` and ``nabla A`` in the off-diagonal blocks.
    """
    if parity not in ('even', 'odd'):
        raise errors.UsageError("parity must be even or odd")
    x = np.asarray(x, dtype=float)
    r, dim = bundle.rank, bundle.dim
    value = np.asarray(A(x), dtype=complex)
    nabla = bundle.covariant_derivative(A, x)
    F = curvature(bundle, x)
    A2 = value.dot(value)
    if parity == 'odd':
        zero = np.zeros((r, r))
        blocks = {(): np.block([[-t * t * A2, zero], [zero, -t * t * A2]])}
        for a in range(dim):
            blocks[(a,)] = np.block([[zero, t * nabla[a]],
                                     [t * nabla[a], zero]])
        for index, block in F.blocks.items():
            doubled = np.block([[block, zero], [zero, block]])
            blocks[index] = blocks[index] + doubled if index in blocks \
                else doubled
        return FormMatrix(2 * r, dim, blocks, split=(r, r))
    split = bundle.split
    if split is None:
        raise errors.MISSING_SPLIT
    eps = _grading(r, split)
    if max_abs(value * np.equal.outer(eps, eps)) > 1e-12 * max(
            max_abs(value), 1.0):
        raise errors.ValidationError("A must be odd for the grading")
    blocks = {(): -t * t * A2}
    for a in range(dim):
        blocks[(a,)] = t * nabla[a]
    out = FormMatrix(r, dim, blocks, split)
    return out + F.with_split(split)


def _twist(M, eps):
    """Multiply the odd degree blocks by the grading on the left."""
    return FormMatrix(M.size, M.dim,
                      {I: (eps[:, None] * b if len(I) % 2 else b)
                       for I, b in M.blocks.items()}, M.split)


def _normalization(degree):
    j = degree // 2
    value = (1j / (2 * np.pi)) ** j
    if degree % 2:
        value /= np.sqrt(np.pi)
    return value


def chern_character(Fm, parity):
    """
    ``str exp F`` with the graded signs of the tensor product with the
    exterior algebra, rescaled to integral normalization.
    """
    if parity not in ('even', 'odd'):
        raise errors.UsageError("parity must be even or odd")
    if Fm.split is None:
        raise errors.MISSING_SPLIT
    eps = _grading(Fm.size, Fm.split)
    exponential = _twist(form_exp(_twist(Fm, eps)), eps)
    trace = supertrace(exponential, parity)
    return trace.map_degrees(_normalization)


def chern_character_field(bundle, A, t, parity):
    return FormField.on_chart(
            lambda x: chern_character(
                    superconnection_curvature(bundle, A, t, parity, x),
                    parity),
            bundle.dim, None, space_id=bundle.space_id, closed=True)


def mathai_quillen_form(bundle, t, b, x):
    """
    ``mu_t`` at the point ``x`` of the fiber over ``b`` of an oriented real
    bundle of even rank, as a form on the chart ``(b, x)``.
    """
    n = bundle.rank
    if n % 2:
        raise errors.ODD_DIMENSION
    if t < 0:
        raise errors.ValidationError("t must be nonnegative")
    b = np.atleast_1d(np.asarray(b, dtype=float))
    x = np.asarray(x, dtype=float)
    base = bundle.dim
    total = base + 2 * n
    theta = bundle.connection(b)
    F = curvature(bundle, b) if base else FormMatrix(n, 0)
    e = [AlternatingForm.basis(total, base + n + i) for i in range(n)]
    omega = AlternatingForm.constant(total, 0.5 * t * t * x.dot(x))
    for i in range(n):
        nabla = AlternatingForm.basis(total, base + i)
        for a in range(base):
            coefficient = sum(theta.blocks.get((a,), np.zeros((n, n)))[i, j]
                              * x[j] for j in range(n))
            if coefficient:
                nabla = nabla + coefficient * AlternatingForm.basis(total, a)
        omega = omega + t * nabla.wedge(e[i])
    for i in range(n):
        for j in range(i + 1, n):
            entry = F.entry(i, j).shifted(0, total)
            omega = omega + entry.wedge(e[i]).wedge(e[j])
    exponential = form_exp(FormMatrix.scalar(-omega))
    sign = (-1) ** (n * (n - 1) // 2)
    return berezin(exponential, n, bundle.orientation) \
        * (sign / (2 * np.pi) ** (n // 2))


def mathai_quillen_field(bundle, t):
    """``mu_t`` as a form on the total chart ``(b, x)``."""
    base = bundle.dim
    return FormField.on_chart(
            lambda y: mathai_quillen_form(bundle, t, y[:base], y[base:]),
            base + bundle.rank, bundle.rank, space_id='E', closed=True)


def superconnection_residue(parity, t, scheme=None):
    """
    Integral of the Chern character of the rank one kernel model over the
    normal space: ``A(s) = s`` on R (odd) or ``[[0, conj a], [a, 0]]`` on
    ``R^2 = C`` (even). Both equal 1.
    """
    from .integrate import Scheme, integrate_full_chart
    from .spaces import BundleWithConnection
    if parity == 'odd':
        bundle = BundleWithConnection.trivial(1, 1)
        A = lambda s: np.array([[s[0]]])
    elif parity == 'even':
        bundle = BundleWithConnection.trivial(2, 2, split=(1, 1))
        A = lambda v: np.array([[0, v[0] - 1j * v[1]],
                                [v[0] + 1j * v[1], 0]])
    else:
        raise errors.UsageError("parity must be even or odd")
    field = chern_character_field(bundle, A, t, parity)
    top = lambda u: field.at(u).component(bundle.dim)
    scheme = scheme or Scheme.gauss(24)
    value, _ = integrate_full_chart(top, bundle.dim, scheme,
                                    radius=6.0 / t)
    return value
