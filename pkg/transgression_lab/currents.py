# -*- coding: utf-8 -*-
"""
Point currents and their verification: signed zeros of sections, crossings
of a unitary loop with the Maslov cycle, pairings with test functions and
weak-convergence reports comparing flowed forms with predicted currents.

    >>> current = find_signed_zeros(lambda u: u, [-1.0, -1.0], [1.0, 1.0],
    ...                             grid=4)
    >>> len(current), current.signed_count()
    (1, 1)
    >>> current.pair(lambda u: 2.0)
    (2+0j)

"""
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import itertools
import logging
import warnings

import numpy as np
from scipy.linalg import schur
from scipy.optimize import brentq, linear_sum_assignment

from . import errors
from .charforms import FormField
from .exterior import AlternatingForm
from .integrate import Scheme, flowed_pairings, integrate_function
from .util import central_difference, to_real

__all__ = ['CurrentPoint', 'PointCurrent', 'ConvergenceReport',
           'find_signed_zeros', 'find_maslov_crossings', 'pair',
           'function_form', 'gap_verdict', 'weak_convergence_report']

log = logging.getLogger(__name__)


NEWTON_STEP = 1e-7
ZERO_RESIDUAL = 1e-8
CONDITION_LIMIT = 1e8
MASLOV_SAMPLES = 512
KERNEL_TOL = 1e-6
MONOTONE_SLACK = 1e-6


CurrentPoint = namedtuple('CurrentPoint', 'point sign weight')


class PointCurrent(object):
    """
    A finite sum of signed, weighted Dirac currents on a base chart.
    Sums concatenate their points; coincident points are not merged.
    """

    def __init__(self, points=()):
        self.points = []
        for point, sign, weight in points:
            if sign not in (-1, 1):
                raise errors.ValidationError("current signs must be +1 or -1")
            self.points.append(CurrentPoint(
                    np.atleast_1d(np.asarray(point, dtype=float)),
                    int(sign), complex(weight)))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def signed_count(self):
        return sum(p.sign for p in self.points)

    def total(self):
        """The pairing with the constant function 1."""
        return sum((p.sign * p.weight for p in self.points), 0j)

    def pair(self, eta):
        return sum((p.sign * p.weight * _point_value(eta, p.point)
                    for p in self.points), 0j)

    def scaled(self, factor):
        return PointCurrent((p.point, p.sign, p.weight * factor)
                            for p in self.points)

    @classmethod
    def linear_combination(cls, terms):
        """``sum c_i T_i`` for ``terms = [(c_i, T_i), ...]``."""
        points = []
        for factor, current in terms:
            points.extend(current.scaled(factor).points)
        return cls(points)

    def __add__(self, other):
        return PointCurrent(self.points + other.points)

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def __repr__(self):
        return "PointCurrent(%s points, total=%s)" % (len(self), self.total())


def _point_value(eta, point):
    if eta is None:
        return 1.0
    if hasattr(eta, 'at'):
        form = eta.at(point)
    else:
        form = eta(point)
    if isinstance(form, AlternatingForm):
        if form.coeffs and form.degree != 0:
            raise errors.DegreeError(
                    "point currents pair with functions, not %s-forms"
                    % form.degree)
        return form.coefficient()
    return complex(form)


def pair(current, eta):
    """``sum sign * weight * eta(point)`` over the points of ``current``."""
    return current.pair(eta)


def function_form(func, dim):
    """The 0-form ``u -> func(u)`` on a chart of dimension ``dim``."""
    return FormField.on_chart(
            lambda u: AlternatingForm.constant(dim, func(u)), dim, 0)


# zeros of sections


def _real_section(section, is_complex):
    def func(u):
        value = np.atleast_1d(section(u))
        if is_complex or np.iscomplexobj(value):
            return to_real(np.asarray(value, dtype=complex))
        return np.asarray(value, dtype=float)
    return func


def _jacobian(func, u):
    return central_difference(func, u, NEWTON_STEP).T


def _wrap(u, lower, upper, periodic):
    u = u.copy()
    for axis in periodic:
        width = upper[axis] - lower[axis]
        u[axis] = lower[axis] + np.mod(u[axis] - lower[axis], width)
    return u


def _inside(u, lower, upper, margin=0.0):
    return bool(np.all(u >= lower - margin) and np.all(u <= upper + margin))


def _distance(a, b, lower, upper, periodic):
    diff = np.abs(a - b)
    for axis in periodic:
        width = upper[axis] - lower[axis]
        diff[axis] = min(diff[axis], width - diff[axis])
    return np.linalg.norm(diff)


def _seeds(lower, upper, grid):
    grid = np.broadcast_to(np.asarray(grid, dtype=int), lower.shape)
    axes = [lower[i] + (np.arange(g) + 0.5) * (upper[i] - lower[i]) / g
            for i, g in enumerate(grid)]
    for seed in itertools.product(*axes):
        yield np.array(seed)


def _newton(func, u, lower, upper, periodic, max_iter, tol):
    """Returns ``(point, converged)``; ``point`` is None once it escapes."""
    for _ in range(max_iter):
        try:
            step = np.linalg.solve(_jacobian(func, u), func(u))
        except np.linalg.LinAlgError:
            return None, False
        u = _wrap(u - step, lower, upper, periodic)
        if not _inside(u, lower, upper, margin=NEWTON_STEP):
            return None, False
        if np.linalg.norm(step) <= tol:
            return u, np.linalg.norm(func(u)) <= ZERO_RESIDUAL
    return u, False


def find_signed_zeros(section, lower, upper, grid=16, max_iter=50, tol=1e-10,
                      periodic=(), complex_valued=False, orientation=1):
    """
    Zeros of ``section`` on the box ``[lower, upper]`` by Newton iteration
    from the centres of a ``grid`` of cells, with the sign of the real
    Jacobian determinant (times ``orientation``) as multiplicity.

    Axes listed in ``periodic`` are wrapped into the box. A complex section
    of ``k`` components is read as ``2k`` interleaved real components.
    """
    lower = np.atleast_1d(np.asarray(lower, dtype=float))
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    func = _real_section(section, complex_valued)
    probe = func(0.5 * (lower + upper))
    if probe.size != lower.size:
        raise errors.DimensionError(
                "section has %s real components on a %s-dimensional chart"
                % (probe.size, lower.size))

    found = []
    stalled = 0
    for seed in _seeds(lower, upper, grid):
        u, converged = _newton(func, seed, lower, upper, periodic,
                               max_iter, tol)
        if u is None:
            continue
        if not converged:
            stalled += 1
            continue
        J = _jacobian(func, u)
        cond = np.linalg.cond(J)
        if not np.isfinite(cond) or cond > CONDITION_LIMIT:
            raise errors.TransversalityError(
                    "section is not transversal at %s (condition number %.3g)"
                    % (np.round(u, 8).tolist(), cond))
        radius = 10 * tol * max(1.0, cond)
        if any(_distance(u, other, lower, upper, periodic) <= radius
               for other, _ in found):
            continue
        sign = int(np.sign(np.linalg.det(J))) * orientation
        log.debug("zero at %s, sign %+d, condition %.3g", u, sign, cond)
        found.append((u, sign))

    if stalled:
        warnings.warn("%s Newton seeds did not converge" % stalled,
                      errors.ConvergenceWarning)
    return PointCurrent((u, sign, 1.0) for u, sign in found)


# crossings with the Maslov cycle


def _eigenvalues(U):
    T, _ = schur(np.asarray(U, dtype=complex), output='complex')
    return np.diag(T)


def _track(previous, current):
    cost = np.abs(previous[:, None] - current[None, :])
    _, order = linear_sum_assignment(cost)
    return current[order]


def _offset(mu):
    # angle of -mu: zero exactly when mu = -1
    return np.angle(-mu)


def _nearest_offset(U_loop):
    def h(theta):
        mu = _eigenvalues(U_loop(theta))
        return _offset(mu[np.argmin(np.abs(mu + 1))])
    return h


def find_maslov_crossings(U_loop, tol=1e-10, samples=MASLOV_SAMPLES,
                          lower=0.0, upper=2 * np.pi):
    """
    Parameters where the loop ``U_loop`` crosses ``{dim Ker(1 + U) = 1}``,
    signed +1 where the crossing eigenvalue moves counterclockwise
    through -1.
    """
    thetas = np.linspace(lower, upper, samples + 1)
    branches = [_eigenvalues(U_loop(thetas[0]))]
    for theta in thetas[1:]:
        branches.append(_track(branches[-1], _eigenvalues(U_loop(theta))))
    offsets = _offset(np.array(branches))
    h = _nearest_offset(U_loop)

    points = []
    for j in range(samples):
        a, b = offsets[j], offsets[j + 1]
        # a sign change away from the branch cut at mu = +1
        crossing = ((a < 0) != (b < 0)) & (np.abs(a) < np.pi / 2) \
            & (np.abs(b) < np.pi / 2)
        count = int(np.count_nonzero(crossing))
        if count == 0:
            continue
        left, right = thetas[j], thetas[j + 1]
        if count > 1:
            raise errors.DegenerateCrossingError(
                    "%s eigenvalues cross -1 in [%g, %g]"
                    % (count, left, right))
        ha, hb = h(left), h(right)
        if ha * hb > 0:
            raise errors.DegenerateCrossingError(
                    "crossing in [%g, %g] is not isolated" % (left, right))
        root = brentq(h, left, right, xtol=tol) if ha * hb < 0 else \
            (left if ha == 0 else right)
        mu = _eigenvalues(U_loop(root))
        if np.count_nonzero(np.abs(mu + 1) < KERNEL_TOL) > 1:
            raise errors.DegenerateCrossingError(
                    "Ker(1 + U) has dimension > 1 at %g" % root)
        sign = 1 if a[crossing][0] < 0 else -1
        log.debug("Maslov crossing at %.12g, sign %+d", root, sign)
        points.append((root, sign, 1.0))
    return PointCurrent(points)


# weak convergence


class ConvergenceReport(namedtuple('ConvergenceReport',
                                   't_schedule names gaps tolerance verdict')):
    __slots__ = ()

    @property
    def final_gaps(self):
        return dict((name, gaps[-1]) for name, gaps in self.gaps.items())

    @property
    def final_gap(self):
        return max(self.final_gaps.values())


def _named(test_forms, dim):
    out = []
    for index, item in enumerate(test_forms):
        if isinstance(item, tuple):
            name, eta = item
        else:
            name, eta = 'eta_%s' % index, item
        if not hasattr(eta, 'at'):
            eta = function_form(eta, dim)
        out.append((name, eta))
    return out


def _smooth_pairing(smooth, eta, section, scheme):
    def integrand(u):
        return smooth.at(u).wedge(eta.at(u)).top

    value, _ = integrate_function(integrand, section.lower, section.upper,
                                  scheme)
    return complex(value) * section.orientation


def gap_verdict(gaps, tol):
    """Final gaps within ``tol``, none growing between the last two times."""
    for series in gaps.values():
        if series[-1] > tol:
            return False
        if len(series) > 1 and series[-1] > series[-2] + MONOTONE_SLACK:
            return False
    return True


def weak_convergence_report(flow, section, omega, predicted, test_forms,
                            t_schedule, scheme, tol=5e-2, smooth=None,
                            jobs=1):
    """
    ``gap(t) = |int_B phi_t* omega ^ eta - predicted(eta)|`` for every test
    form and every ``t``.

    ``predicted`` is a PointCurrent (or None) and ``smooth`` an optional
    form on the base chart; the prediction is their sum. ``scheme`` may be a
    Scheme or a callable ``t -> Scheme``. The verdict passes when every
    final gap is within ``tol`` and no gap grows between the last two
    times.
    """
    if isinstance(predicted, tuple):
        predicted, smooth = predicted
    t_schedule = [float(t) for t in t_schedule]
    if not t_schedule:
        raise errors.ValidationError("empty t schedule")
    if any(b <= a for a, b in zip(t_schedule, t_schedule[1:])):
        raise errors.ValidationError("t schedule must be strictly increasing")
    d = section.dim
    forms = _named(test_forms, d)
    for name, eta in forms:
        if None not in (omega.degree, eta.degree) and \
                omega.degree + eta.degree != d:
            raise errors.DegreeError(
                    "test form %s of degree %s does not pair with a %s-form "
                    "over a %s-dimensional base"
                    % (name, eta.degree, omega.degree, d))

    def scheme_at(t):
        return scheme(t) if callable(scheme) and \
            not isinstance(scheme, Scheme) else scheme

    expected = np.zeros(len(forms), dtype=complex)
    for k, (name, eta) in enumerate(forms):
        if predicted is not None:
            expected[k] += predicted.pair(eta)
        if smooth is not None:
            expected[k] += _smooth_pairing(smooth, eta, section,
                                           scheme_at(t_schedule[-1]))

    def compute(t):
        log.debug("pairing flowed form at t = %g", t)
        return flowed_pairings(flow, section, omega,
                               [eta for _, eta in forms], t, scheme_at(t))

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        values = list(pool.map(compute, t_schedule))

    gaps = dict((name, [float(abs(v[k] - expected[k])) for v in values])
                for k, (name, _) in enumerate(forms))
    verdict = gap_verdict(gaps, tol)
    log.info("weak convergence: final gaps %s, verdict %s",
             dict((n, '%.3g' % g[-1]) for n, g in gaps.items()), verdict)
    return ConvergenceReport(t_schedule, [name for name, _ in forms], gaps,
                             tol, verdict)
