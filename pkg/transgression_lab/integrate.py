# -*- coding: utf-8 -*-
"""
Oriented integration of forms over parametrized boxes: tensor Gauss rules
(optionally graded towards focus points), Monte-Carlo sampling, fiber
integration, transgression pairings and flow-tube volumes.

    >>> import numpy as np
    >>> value, err = integrate_function(lambda u: u[0] ** 2, [0.0], [3.0],
    ...                                 Scheme.gauss(4))
    >>> round(float(value), 12)
    9.0

"""
from collections import namedtuple
import itertools
import logging
import warnings

import numpy as np
from scipy.special import roots_legendre

from . import errors
from .charforms import FormField
from .exterior import AlternatingForm
from .spaces import Parametrization
from .util import to_real

__all__ = ['Scheme', 'BoundaryCheck', 'integrate_function', 'integrate_form',
           'integrate_full_chart', 'exterior_derivative',
           's1_residue_integral', 's1_residue_expected', 'fiber_integrate',
           'transgression_pairing', 'flowed_pairings', 'boundary_check',
           'flow_tube_volume', 'tube_volume_increments', 'chart_form']

log = logging.getLogger(__name__)


KINDS = ('gauss', 'monte_carlo')
ERROR_MODES = ('none', 'richardson', 'mc_stderr')

D_TEST_STEP = 1e-4


_Scheme = namedtuple('Scheme',
                     'kind points samples seed error_mode focus depth')


class Scheme(_Scheme):
    """
    A quadrature scheme. ``gauss`` is a tensor Gauss-Legendre rule with
    ``points`` nodes per axis on every cell; cells whose closure contains a
    ``focus`` point are quartered recursively ``depth`` times.
    ``monte_carlo`` draws ``samples`` uniform points from a seeded
    generator.
    """
    __slots__ = ()

    @classmethod
    def gauss(cls, points, focus=(), depth=0, error_mode='none'):
        if points < 2:
            raise errors.ValidationError("points per axis must be >= 2")
        return cls('gauss', int(points), None, None, error_mode,
                   tuple(tuple(float(c) for c in f) for f in focus),
                   int(depth))

    @classmethod
    def monte_carlo(cls, samples, seed=0, error_mode='mc_stderr'):
        if samples < 100:
            raise errors.ValidationError("Monte-Carlo needs >= 100 samples")
        return cls('monte_carlo', None, int(samples), int(seed), error_mode,
                   (), 0)

    def focused(self, focus, depth):
        return self._replace(focus=tuple(tuple(float(c) for c in f)
                                         for f in focus), depth=int(depth))


BoundaryCheck = namedtuple('BoundaryCheck', 'lhs rhs defect')


def _gauss_rule(points):
    nodes, weights = roots_legendre(points)
    return (nodes + 1) / 2, weights / 2


def _contains(f, lower, upper):
    free = np.isnan(f)
    return bool(np.all(free | ((f >= lower) & (f <= upper))))


def _cells(lower, upper, focus, depth):
    """
    Composite cells of the box. Cells containing a focus point are split in
    halves along every axis where the point has a coordinate; a NaN
    coordinate marks a focus line free along that axis.
    """
    hits = [f for f in focus if _contains(f, lower, upper)] if depth > 0 \
        else []
    if not hits:
        yield lower, upper
        return
    split = ~np.all([np.isnan(f) for f in hits], axis=0)
    middle = (lower + upper) / 2
    for corner in itertools.product((0, 1), repeat=int(split.sum())):
        upper_half = np.zeros(lower.size, dtype=bool)
        upper_half[split] = np.array(corner, dtype=bool)
        lo = np.where(upper_half, middle, lower)
        hi = np.where(upper_half | ~split, upper, middle)
        for cell in _cells(lo, hi, focus, depth - 1):
            yield cell


def _evaluate(f, u):
    value = np.asarray(f(u))
    if np.any(np.isnan(value)):
        raise errors.IntegrationError("integrand is NaN at u = %r"
                                      % (np.asarray(u).tolist(),))
    return value


def _gauss(f, lower, upper, points, focus, depth):
    nodes, weights = _gauss_rule(points)
    d = lower.size
    focus = [np.asarray(p, dtype=float) for p in focus]
    values = []
    count = 0
    for lo, hi in _cells(lower, upper, focus, depth):
        width = hi - lo
        for index in itertools.product(range(points), repeat=d):
            index = list(index)
            u = lo + width * nodes[index]
            weight = np.prod(weights[index]) * np.prod(width)
            values.append(weight * _evaluate(f, u))
            count += 1
    log.debug("gauss rule: %d nodes on a %d-dimensional box", count, d)
    return np.sum(values, axis=0)


def _monte_carlo(f, lower, upper, samples, seed):
    rng = np.random.default_rng(seed)
    volume = np.prod(upper - lower)
    draws = lower + (upper - lower) * rng.random((samples, lower.size))
    values = np.array([_evaluate(f, u) for u in draws])
    log.debug("monte carlo: %d samples, seed %d", samples, seed)
    mean = values.mean(axis=0)
    stderr = values.std(axis=0, ddof=1) / np.sqrt(samples)
    return volume * mean, volume * np.max(np.abs(stderr))


def integrate_function(f, lower, upper, scheme):
    """
    Integrate ``f`` (scalar or array valued) over the box; returns
    ``(value, error_estimate)``.
    """
    lower = np.atleast_1d(np.asarray(lower, dtype=float))
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    if scheme.kind == 'gauss':
        value = _gauss(f, lower, upper, scheme.points, scheme.focus,
                       scheme.depth)
        err = 0.0
        if scheme.error_mode == 'richardson':
            coarse = _gauss(f, lower, upper, max(scheme.points // 2 + 1, 2),
                            scheme.focus, scheme.depth)
            err = float(np.max(np.abs(value - coarse)))
        return value, err
    elif scheme.kind == 'monte_carlo':
        value, err = _monte_carlo(f, lower, upper, scheme.samples,
                                  scheme.seed)
        return value, (err if scheme.error_mode == 'mc_stderr' else 0.0)
    raise errors.UsageError("unknown scheme kind %r" % (scheme.kind,))


def chart_form(P, F):
    """``u -> AlternatingForm`` for a FormField or a chart form callable."""
    if hasattr(F, 'evaluate'):
        return F.pullback(P)
    return F


def integrate_form(P, F, scheme):
    """
    Oriented integral of the degree ``P.dim`` form ``F`` over ``P``.
    """
    degree = getattr(F, 'degree', None)
    if degree is not None and degree != P.dim:
        raise errors.DegreeError("cannot integrate a %s-form over a %s-"
                                 "dimensional box" % (degree, P.dim))
    form = chart_form(P, F)
    value, err = integrate_function(lambda u: form(u).top, P.lower, P.upper,
                                    scheme)
    return complex(value) * P.orientation, err


def integrate_full_chart(form, dim, scheme, radius=4.0, tol=1e-8,
                         max_doublings=6):
    """
    Integral of the top coefficient of ``form`` over R^dim, truncated to
    ``[-R, R]^dim`` with ``R`` doubled until the shell added by the last
    doubling contributes less than ``tol``. Each shell is cut into cells of
    side ``R`` so the resolution per cell stays fixed. Returns
    ``(value, tail_estimate)``.
    """
    top = lambda u: form(u).top

    def integrate(lower, upper):
        value, _ = integrate_function(top, lower, upper, scheme)
        return complex(value)

    value = 0j
    # the inner box as 2^dim cells of side R
    for corner in itertools.product((-1, 0), repeat=dim):
        lower = radius * np.array(corner, dtype=float)
        value += integrate(lower, lower + radius)
    tail = abs(value)
    for _ in range(max_doublings):
        shell = 0j
        for corner in itertools.product((-2, -1, 0, 1), repeat=dim):
            if all(c in (-1, 0) for c in corner):
                continue
            lower = radius * np.array(corner, dtype=float)
            shell += integrate(lower, lower + radius)
        radius *= 2
        value += shell
        tail = abs(shell)
        if tail < tol:
            return value, tail
    warnings.warn("tail estimate %g above %g at R = %g" % (tail, tol, radius),
                  errors.ConvergenceWarning)
    return value, tail


def exterior_derivative(form, u, step=D_TEST_STEP):
    """Central difference ``d`` of a chart form ``u -> AlternatingForm``."""
    u = np.asarray(u, dtype=float)
    dim = u.size
    out = AlternatingForm(dim)
    for a in range(dim):
        e = np.zeros(dim)
        e[a] = step
        plus, minus = form(u + e), form(u - e)
        keys = set(plus.coeffs) | set(minus.coeffs)
        derivative = AlternatingForm(dim, {
            I: (plus.coeffs.get(I, 0j) - minus.coeffs.get(I, 0j)) / (2 * step)
            for I in keys})
        out = out + AlternatingForm.basis(dim, a).wedge(derivative)
    return out


def s1_residue_expected(n):
    """
    >>> s1_residue_expected(2) == -4j * np.pi
    True
    """
    from scipy.special import comb
    return (-1) ** (n - 1) * 2j * np.pi * comb(2 * n - 2, n - 1, exact=True)


def s1_residue_integral(n, scheme=None):
    """``(-1)^{n-1}`` times the loop integral of ``|l - 1|^{2n-2} l^-1 dl``."""
    if n < 1:
        raise errors.ValidationError("n must be positive")
    scheme = scheme or Scheme.gauss(64)
    sign = (-1) ** (n - 1)

    def integrand(u):
        lam = np.exp(1j * u[0])
        return sign * abs(lam - 1) ** (2 * n - 2) * 1j
    value, _ = integrate_function(integrand, [0.0], [2 * np.pi], scheme)
    return complex(value)


def fiber_integrate(total, F, fiber_dim, scheme):
    """
    Integrate out the first ``fiber_dim`` coordinates of ``total``. The
    result is a form in the remaining (base) coordinates, with the fiber
    directions placed first.
    """
    if fiber_dim > total.dim:
        raise errors.DimensionError("fiber larger than the total space")
    base_dim = total.dim - fiber_dim
    degree = getattr(F, 'degree', None)
    if degree is not None and degree < fiber_dim:
        raise errors.DegreeError("form degree below fiber dimension")
    form = chart_form(total, F)
    if degree is None:
        degrees = range(base_dim + 1)
    else:
        degrees = [degree - fiber_dim]
    base_indices = [J for k in degrees
                    for J in itertools.combinations(range(base_dim), k)]
    fiber = tuple(range(fiber_dim))

    def func(b):
        def coefficients(w):
            value = form(np.concatenate([w, b]))
            return np.array([value.coeffs.get(
                    fiber + tuple(j + fiber_dim for j in J), 0j)
                    for J in base_indices])
        values, _ = integrate_function(coefficients, total.lower[:fiber_dim],
                                       total.upper[:fiber_dim], scheme)
        values = values * total.orientation
        return AlternatingForm(base_dim, dict(zip(base_indices, values)))

    return FormField.on_chart(
            func, base_dim,
            None if degree is None else degree - fiber_dim,
            closed=getattr(F, 'closed', False))


def _tube(flow, section):
    """The map ``(s, u) -> flow(s, section(u))`` with its tangents."""
    def tube_map(v):
        return flow(v[0], section(v[1:]))

    def tube_jacobian(v):
        s, u = v[0], v[1:]
        x = section(u)
        out = [flow.velocity(s, x)]
        if section.dim:
            out.extend(flow.pushforward(s, x, section.tangents(u)))
        return np.array(out)

    return tube_map, tube_jacobian


def transgression_pairing(flow, section, omega, eta, t, scheme):
    """
    ``T_t(omega)(eta)``: the integral of ``Phi* omega ^ p2* eta`` over
    ``[0, t] x B`` with time as the first coordinate, where
    ``Phi(s, u) = flow(s, section(u))`` and ``eta`` is a form in the
    section's parameters.
    """
    d = section.dim
    degree = omega.degree + eta.degree if None not in (
            omega.degree, getattr(eta, 'degree', None)) else None
    if degree is not None and degree != d + 1:
        raise errors.DegreeError("deg omega + deg eta = %s, expected %s"
                                 % (degree, d + 1))
    if t == 0:
        return 0j
    tube_map, tube_jacobian = _tube(flow, section)
    orientation = section.orientation * (1 if t > 0 else -1)
    lower = np.concatenate([[min(0.0, t)], section.lower])
    upper = np.concatenate([[max(0.0, t)], section.upper])
    tube = Parametrization(lower, upper, tube_map, orientation,
                           jacobian=tube_jacobian)
    eta_form = _base_form(eta)

    def integrand(v):
        pulled = omega.evaluate(tube(v), tube.tangents(v))
        return pulled.wedge(eta_form(v[1:]).shifted(1, d + 1)).top

    value, _ = integrate_function(integrand, lower, upper,
                                  _time_scheme(scheme))
    return complex(value) * orientation


def _base_form(eta):
    if hasattr(eta, 'at'):
        return eta.at
    return eta


def _time_scheme(scheme):
    # focus points live on the base; extend them to lines along time
    if scheme.kind == 'gauss' and scheme.focus:
        return scheme._replace(focus=tuple((np.nan,) + tuple(f)
                                           for f in scheme.focus))
    return scheme


def flowed_pairings(flow, section, omega, etas, t, scheme):
    """
    ``int_B phi_t* omega ^ eta`` for every ``eta`` in ``etas``, sharing one
    set of quadrature nodes.
    """
    forms = [_base_form(eta) for eta in etas]

    def integrand(u):
        x = section(u)
        pulled = omega.evaluate(flow(t, x),
                                flow.pushforward(t, x, section.tangents(u)))
        return np.array([pulled.wedge(form(u)).top for form in forms])

    values, _ = integrate_function(integrand, section.lower, section.upper,
                                   scheme)
    return np.atleast_1d(values).astype(complex) * section.orientation


def _flowed_integral(flow, section, omega, eta, t, scheme):
    return complex(flowed_pairings(flow, section, omega, [eta], t, scheme)[0])


def boundary_check(flow, section, omega, eta, t, scheme):
    """
    Both sides of the boundary identity for a closed ``omega``::

        (-1)^deg(omega) T_t(omega)(d eta)
            = int phi_t* omega ^ eta - int phi_0* omega ^ eta
    """
    d = section.dim
    eta_form = _base_form(eta)
    deta = FormField.on_chart(lambda u: exterior_derivative(eta_form, u),
                              d, None if eta.degree is None
                              else eta.degree + 1)
    lhs = (-1) ** omega.degree * transgression_pairing(
            flow, section, omega, deta, t, scheme)
    rhs = (_flowed_integral(flow, section, omega, eta, t, scheme)
           - _flowed_integral(flow, section, omega, eta, 0.0, scheme))
    return BoundaryCheck(lhs, rhs, abs(lhs - rhs))


def _flatten(vector):
    vector = np.asarray(vector)
    if np.iscomplexobj(vector):
        return to_real(vector.ravel())
    return vector.ravel()


def _volume_density(tangents):
    rows = np.array([_flatten(T) for T in tangents])
    gram = rows.dot(rows.T)
    return np.sqrt(max(np.linalg.det(gram), 0.0))


def flow_tube_volume(flow, section, T, scheme, strong=False, start=0.0):
    """
    Volume of ``{(s, flow(s, section(u))) : start <= s <= T}`` in the flat
    metric of the ambient coordinates. ``strong`` measures the graph map
    ``(s, u) -> (flow(s, x), x)`` instead.
    """
    if T <= start:
        return 0.0
    tube_map, tube_jacobian = _tube(flow, section)
    lower = np.concatenate([[start], section.lower])
    upper = np.concatenate([[T], section.upper])

    def density(v):
        tangents = tube_jacobian(v)
        if strong:
            base = [np.zeros_like(_flatten(section(v[1:])))]
            if section.dim:
                base.extend(_flatten(X) for X in section.tangents(v[1:]))
            tangents = [np.concatenate([_flatten(a), b])
                        for a, b in zip(tangents, base)]
        return _volume_density(tangents)

    value, _ = integrate_function(density, lower, upper, scheme)
    return float(np.real(value))


def tube_volume_increments(flow, section, times, scheme, strong=False):
    """Volumes over consecutive ``[times[i], times[i+1]]``."""
    return [flow_tube_volume(flow, section, b, scheme, strong, start=a)
            for a, b in zip(times[:-1], times[1:])]
