# -*- coding: utf-8 -*-
"""
The scenario catalog. Each scenario runs a fixed list of checks against
known topological values and returns a :class:`Report`; the command line
tool and the acceptance tests only ever call :func:`run_scenario`.

    >>> list_scenarios()[0][:2]
    ('top_chern', '§6')

"""
from collections import OrderedDict, namedtuple
from functools import partial
from itertools import combinations
import logging
import time

import numpy as np
import rdflib
import scipy
from scipy.optimize import brentq

from . import __version__, errors
from .algebra import inverse_cayley, random_hermitian, random_unitary
from .charforms import (chern_character_field, mathai_quillen_field,
                        mathai_quillen_form, odd_chern_form, pfaffian_field,
                        pfaffian_form, superconnection_residue,
                        tilde_maslov_form, top_chern_form,
                        unitary_odd_chern_form)
from .config import ANCHORS, SCENARIO_NAMES
from .currents import (ConvergenceReport, find_maslov_crossings,
                       find_signed_zeros, function_form, gap_verdict,
                       weak_convergence_report)
from .exterior import AlternatingForm, FormMatrix, supertrace
from .flows import (FlowSpec, chordal_distance, classify_unitary_stratum,
                    critical_reflection, fA_flow, fA_limit, fA_velocity,
                    graph_chart_flow_spec, grassmann_linear_flow,
                    grassmann_potential, kernel_image_limit, local_model_flow,
                    radial_flow_spec, sphere_flow_spec, sphere_height_flow,
                    sphere_height_potential, tanh_flow_spec, unitary_tanh_flow,
                    unitary_tanh_limit, unitary_tanh_velocity)
from .integrate import (Scheme, boundary_check, exterior_derivative,
                        integrate_form, integrate_full_chart,
                        integrate_function, s1_residue_expected,
                        s1_residue_integral, tube_volume_increments)
from .resolution import (LocalModel, family_blowup, flowline_level_point, psi,
                         theta_delta)
from .serializer import CheckRecord, Report
from .spaces import (BundleWithConnection, Parametrization, bott_samelson_map,
                     circle_chart, complex_basis, curvature, fubini_study_form,
                     projected_connection, spherical_chart,
                     stereographic_frame, stereographic_frame_jacobian,
                     tautological_bundle, tautological_frame)
from .util import max_abs, to_complex, to_real

__all__ = ['Scenario', 'SCENARIOS', 'MODES', 'Book', 'scenario',
           'list_scenarios', 'run_scenario', 'versions']

log = logging.getLogger(__name__)


MODES = ('abs', 'rel', 'integer', 'max', 'min')

SPHERE_BOX = ([0.0, 0.0], [np.pi, 2 * np.pi])
TORUS_BOX = ([0.0, 0.0], [2 * np.pi, 2 * np.pi])

# finite difference step for velocities checked against closed forms
VELOCITY_STEP = 1e-5


Scenario = namedtuple('Scenario', 'name anchor summary run')

SCENARIOS = OrderedDict()


def _known_anchor(anchor):
    if anchor not in ANCHORS:
        raise errors.UsageError("unknown anchor %r" % (anchor,))


def scenario(name, anchor, summary):
    """Register ``func(book)`` as the runner of the scenario ``name``."""
    if name not in SCENARIO_NAMES:
        raise errors.UsageError("unknown scenario %r" % (name,))
    _known_anchor(anchor)

    def register(func):
        SCENARIOS[name] = Scenario(name, anchor, summary, func)
        return func
    return register


def list_scenarios():
    return [(s.name, s.anchor, s.summary)
            for s in sorted(SCENARIOS.values(),
                            key=lambda s: SCENARIO_NAMES.index(s.name))]


def versions():
    return {'transgression_lab': __version__, 'numpy': np.__version__,
            'scipy': scipy.__version__, 'rdflib': rdflib.__version__}


def _passes(computed, expected, tolerance, mode):
    if mode == 'integer':
        return computed == expected
    if mode == 'min':
        return float(np.real(computed)) >= float(np.real(expected))
    if mode == 'max':
        return abs(computed) <= tolerance
    if mode == 'rel':
        return abs(computed - expected) <= tolerance * abs(expected)
    return abs(computed - expected) <= tolerance


class Book(object):
    """
    Check bookkeeping for one scenario run: the seeded generator, the
    configured sizes and the list of recorded checks.
    """

    def __init__(self, config):
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        self.records = []

    def dim(self, key):
        return self.config.dims[key]

    def tolerance(self, key):
        return self.config.tolerances[key]

    @property
    def t_schedule(self):
        return [float(t) for t in self.config.t_schedule]

    def gauss(self, points=None, focus=(), depth=0):
        return Scheme.gauss(points or self.config.scheme.get('points', 16),
                            focus, depth)

    def monte_carlo(self):
        return Scheme.monte_carlo(self.config.scheme.get('samples', 10000),
                                  seed=self.config.seed)

    @property
    def extra_depth(self):
        return self.config.scheme.get('depth', 0)

    def check(self, name, anchor, compute, expected, tolerance, mode='abs'):
        """Run ``compute()`` and record it against ``expected``."""
        if mode not in MODES:
            raise errors.UsageError("unknown check mode %r" % (mode,))
        _known_anchor(anchor)
        log.info("check %s: start", name)
        started = time.time()
        try:
            computed = compute()
        except errors.NumericalBreakdown:
            raise
        except errors.LabException as e:
            log.error("check %s raised %s: %s", name, type(e).__name__, e)
            computed = float('nan')
            passed = False
        else:
            passed = bool(_passes(computed, expected, tolerance, mode))
        if mode == 'integer' and computed == computed:
            computed = int(computed)
        record = CheckRecord(name, anchor, computed, expected, tolerance,
                             passed)
        self.records.append(record)
        log.info("check %s: %s = %s (expected %s, tol %g, %s) in %.2fs",
                 name, 'pass' if passed else 'FAIL', computed, expected,
                 tolerance, mode, time.time() - started)
        if not passed:
            log.warning("check %s failed", name)
        return record

    def converge(self, name, anchor, compute):
        """Record the final gap of a ConvergenceReport with its verdict."""
        _known_anchor(anchor)
        log.info("check %s: start", name)
        started = time.time()
        report = compute()
        for test, series in sorted(report.gaps.items()):
            log.info("  %s: gaps %s over t = %s", test,
                     ', '.join('%.3g' % g for g in series),
                     ', '.join('%g' % t for t in report.t_schedule))
        record = CheckRecord(name, anchor, report.final_gap, 0.0,
                             report.tolerance, bool(report.verdict))
        self.records.append(record)
        log.info("check %s: %s, final gap %.3g in %.2fs", name,
                 'pass' if report.verdict else 'FAIL', report.final_gap,
                 time.time() - started)
        if not report.verdict:
            log.warning("check %s failed", name)
        return report

    @property
    def passed(self):
        return all(r.passed for r in self.records)


def _config_echo(config):
    return {'scenario': config.scenario, 'dims': dict(config.dims),
            'seed': config.seed, 'scheme': dict(config.scheme),
            'tolerances': dict(config.tolerances),
            't_schedule': list(config.t_schedule), 'quick': config.quick}


def run_scenario(config):
    """Run the scenario named by ``config`` and return its Report."""
    try:
        entry = SCENARIOS[config.scenario]
    except KeyError:
        raise errors.ConfigError('scenario', "unknown scenario %r"
                                 % (config.scenario,))
    log.info("scenario %s (%s), seed %s", entry.name, entry.anchor,
             config.seed)
    book = Book(config)
    started = time.time()
    entry.run(book)
    elapsed = time.time() - started
    log.info("scenario %s: %d checks, %s in %.1fs", entry.name,
             len(book.records), 'pass' if book.passed else 'FAIL', elapsed)
    return Report(entry.name, entry.anchor, _config_echo(config),
                  list(book.records), elapsed, versions())


# shared builders


def _identity_chart(lower, upper, space_id=None):
    dim = len(lower)
    return Parametrization(lower, upper, lambda u: np.asarray(u),
                           jacobian=lambda u: np.eye(dim),
                           space_id=space_id, chart_id='identity')


def _graph_section(lower, upper, s, ds, complex_valued=False):
    """``u -> (u, s(u))`` with ``ds(u)`` of shape ``(d, k)``."""
    d = len(lower)
    flat = to_real if complex_valued else (lambda v: np.asarray(v, float))

    def map(u):
        return np.concatenate([u, flat(np.atleast_1d(s(u)))])

    def jacobian(u):
        derivative = np.atleast_2d(ds(u))
        eye = np.eye(d)
        return np.array([np.concatenate([eye[a], flat(derivative[a])])
                         for a in range(d)])

    return Parametrization(lower, upper, map, jacobian=jacobian,
                           chart_id='graph')


def _focus_depth(side, width, extra):
    """Refinement levels to bring cells of ``side`` down to ``width``."""
    return max(0, int(np.ceil(np.log2(side / width)))) + extra


def _sphere_point(u):
    return spherical_chart()(u)


def _sphere_line_bundle():
    """A trivial line bundle over the spherical box, curved connection."""
    def connection(x):
        th, ph = x
        return FormMatrix(1, 2, {(0,): [[1j * np.cos(ph)]],
                                 (1,): [[-1j * np.cos(th) * np.sin(th)
                                         * np.sin(ph)]]})

    def analytic(x):
        th, ph = x
        return FormMatrix(1, 2, {(0, 1): [[2j * np.sin(th) ** 2
                                           * np.sin(ph)]]})

    return BundleWithConnection(1, 2, connection, curvature=analytic,
                                space_id='S2')


def _sphere_line_section(rng):
    """``x -> x . w`` restricted to the sphere; two zeros of opposite sign."""
    w = np.array([1.0, 0.0, 1j]) + 0.1 * (rng.standard_normal(3)
                                         + 1j * rng.standard_normal(3))
    chart = spherical_chart()
    s = lambda u: np.array([chart(u).dot(w)])
    ds = lambda u: chart.tangents(u).dot(w)[:, None]
    return s, ds


def _tautological_complement(base):
    """
    The complement of the tautological line over the graph chart ``(b, v)``
    of ``P(E + C)``, with the connection projected from ``E + C``.
    """
    r, d = base.rank, base.dim

    def connection(x):
        theta = base.connection(x[:d])
        blocks = {}
        for index, block in theta.blocks.items():
            padded = np.zeros((r + 1, r + 1), dtype=complex)
            padded[:r, :r] = block
            blocks[index] = padded
        return FormMatrix(r + 1, d + 2 * r, blocks)

    def frame(x):
        return tautological_frame(to_complex(x[d:]))[0]

    def jacobian(x):
        _, dF = tautological_frame(to_complex(x[d:]))
        return np.concatenate([np.zeros((d, r + 1, r), dtype=complex), dF])

    ambient = BundleWithConnection(r + 1, d + 2 * r, connection,
                                   space_id='P(E+C)')
    return projected_connection(ambient, frame, jacobian, rank=r)


def _sphere_tangent_bundle():
    """TS^2 in the orthonormal frame of the coordinate directions."""
    def connection(x):
        c = np.cos(x[0])
        return FormMatrix(2, 2, {(1,): [[0.0, -c], [c, 0.0]]})

    def analytic(x):
        s = np.sin(x[0])
        return FormMatrix(2, 2, {(0, 1): [[0.0, s], [-s, 0.0]]})

    return BundleWithConnection(2, 2, connection, field='real',
                                curvature=analytic, space_id='S2')


def _stereographic_tangent_bundle():
    ambient = BundleWithConnection.trivial(3, 2, field='real', space_id='S2')
    return projected_connection(ambient, stereographic_frame,
                                stereographic_frame_jacobian, rank=2)


def _torus_bundle():
    """A flat-topology rank 2 bundle over T^2 with a curved connection."""
    def connection(x):
        a = np.sin(x[0])
        return FormMatrix(2, 2, {(1,): [[0.0, -a], [a, 0.0]]})

    def analytic(x):
        c = np.cos(x[0])
        return FormMatrix(2, 2, {(0, 1): [[0.0, -c], [c, 0.0]]})

    return BundleWithConnection(2, 2, connection, field='real',
                                curvature=analytic, space_id='T2')


def _torus_section(u):
    return np.array([np.sin(u[0] - 0.3), np.sin(u[1] - 0.7)])


def _torus_section_derivative(u):
    return np.array([[np.cos(u[0] - 0.3), 0.0], [0.0, np.cos(u[1] - 0.7)]])


def _sphere_field(u):
    th, ph = u
    return np.array([np.cos(th) * np.sin(ph), np.cos(ph)])


def _sphere_field_derivative(u):
    th, ph = u
    return np.array([[-np.sin(th) * np.sin(ph), 0.0],
                     [np.cos(th) * np.cos(ph), -np.sin(ph)]])


def _integral(P, F, scheme):
    return integrate_form(P, F, scheme)[0]


def _focus(current):
    return [tuple(p.point) for p in current]


# top Chern class


def _origin_curvature_defect(n):
    bundle = tautological_bundle(n, analytic=False)
    F = curvature(bundle, np.zeros(2 * n))
    basis = [complex_basis(2 * n, j) for j in range(n)]
    expected = FormMatrix.from_forms([[basis[j][0].wedge(basis[k][1])
                                       for k in range(n)] for j in range(n)])
    return (F - expected).norm()


def _analytic_curvature_defect(n, rng):
    x = 0.6 * rng.standard_normal(2 * n)
    numeric = curvature(tautological_bundle(n, analytic=False), x)
    analytic = curvature(tautological_bundle(n, analytic=True), x)
    return (numeric - analytic).norm()


def _fubini_study_defect(rng, probes):
    bundle = tautological_bundle(1)
    form = top_chern_form(bundle)
    worst = 0.0
    for _ in range(probes):
        x = rng.standard_normal(2)
        worst = max(worst, (form.at(x) - fubini_study_form(x)).norm())
    return worst


def _zero_count(section, lower, upper, **kwargs):
    return len(find_signed_zeros(section, lower, upper, **kwargs))


def _signed_count(section, lower, upper, **kwargs):
    return find_signed_zeros(section, lower, upper, **kwargs).signed_count()


@scenario('top_chern', '§6', 'top Chern class as a zero current')
def top_chern(book):
    """
    Tautological curvature, residue 1 on CP^n and the flowed top Chern form
    converging to the zeros of a section.
    """
    anchor = '§6'
    rng = book.rng
    for n in range(1, book.dim('n') + 1):
        book.check('curvature of tau^perp at the origin, n=%d' % n, anchor,
                   partial(_origin_curvature_defect, n), 0.0,
                   book.tolerance('curvature'), 'max')
        book.check('analytic vs numeric curvature, n=%d' % n, anchor,
                   partial(_analytic_curvature_defect, n, rng), 0.0,
                   book.tolerance('curvature'), 'max')
    book.check('c_1 of tau^perp is Fubini-Study', anchor,
               partial(_fubini_study_defect, rng, book.dim('probes')), 0.0,
               book.tolerance('curvature'), 'max')

    for n in range(1, book.dim('n') + 1):
        # the closed unstable fiber of the zero section of P(C^n (+) C)
        chart = graph_chart_flow_spec(0, n).strata[0].residue_parametrization
        form = top_chern_form(tautological_bundle(n))
        if n == 1:
            book.check('residue over CP^1', anchor,
                       partial(_integral, chart, form, book.gauss()), 1.0,
                       book.tolerance('residue'))
        else:
            book.check('residue over CP^%d' % n, anchor,
                       partial(_integral, chart, form, book.monte_carlo()),
                       1.0, book.tolerance('residue_mc'), 'rel')

    lower, upper = SPHERE_BOX
    bundle = _sphere_line_bundle()
    s, ds = _sphere_line_section(rng)
    grid = book.dim('grid')
    zeros = find_signed_zeros(s, lower, upper, grid=grid, periodic=(1,),
                              complex_valued=True)
    book.check('zeros of s', anchor,
               partial(_zero_count, s, lower, upper, grid=grid,
                       periodic=(1,), complex_valued=True), 2, 0, 'integer')
    book.check('integral of c_1 equals the signed zeros', anchor,
               partial(_integral, _identity_chart(lower, upper),
                       top_chern_form(bundle), book.gauss(24)),
               zeros.signed_count(), book.tolerance('integral'))

    section = _graph_section(lower, upper, s, ds, complex_valued=True)
    omega = top_chern_form(_tautological_complement(bundle))
    focus = _focus(zeros)
    tests = [('one', lambda u: 1.0),
             ('y', lambda u: _sphere_point(u)[1]),
             ('exp(x)', lambda u: np.exp(_sphere_point(u)[0]))]

    def scheme_at(t):
        return book.gauss(focus=focus, depth=_focus_depth(
                np.pi, np.exp(-2 * t), book.extra_depth))

    book.converge('flowed c_1 converges to [s = 0]', anchor,
                  lambda: weak_convergence_report(
                          graph_chart_flow_spec(2, 1), section, omega, zeros,
                          tests, book.t_schedule, scheme_at,
                          tol=book.tolerance('weak'), jobs=book.config.jobs))


# Gauss-Bonnet-Chern


def _sphere_zeros(**kwargs):
    lower, upper = SPHERE_BOX
    return find_signed_zeros(_sphere_field, lower, upper, periodic=(1,),
                             **kwargs)


def _sphere_fiber():
    return sphere_flow_spec(0, 2).strata[0].residue_parametrization


@scenario('gauss_bonnet', '§7', 'Euler form as a zero current')
def gauss_bonnet(book):
    """
    Pfaffian integrals over S^2 against the signed zeros of a tangent
    vector field.
    """
    anchor = '§7'
    book.check('Pfaffian of the stereographic sphere', anchor,
               partial(_integral, _sphere_fiber(),
                       pfaffian_field(_stereographic_tangent_bundle()),
                       book.gauss()), 2.0, book.tolerance('sphere'))
    lower, upper = SPHERE_BOX
    book.check('Pfaffian of TS^2 in the coordinate frame', anchor,
               partial(_integral, _identity_chart(lower, upper),
                       pfaffian_field(_sphere_tangent_bundle()),
                       book.gauss()), 2.0, book.tolerance('pfaffian'))
    grid = book.dim('grid')
    book.check('zeros of the vector field', anchor,
               lambda: len(_sphere_zeros(grid=grid)), 2, 0, 'integer')
    book.check('signed zeros equal chi(S^2)', anchor,
               lambda: _sphere_zeros(grid=grid).signed_count(), 2, 0,
               'integer')


# Maslov index


def _random_loop(rng, n):
    """A loop in U(n) with Maslov index ``sum(k)``; returns (loop, index)."""
    W1, W2 = random_unitary(n, rng), random_unitary(n, rng)
    k = rng.integers(-2, 3, size=n)
    phases = rng.uniform(0, 2 * np.pi, size=n)
    twist = np.zeros(n)
    twist[min(1, n - 1)] = 1.0

    def parts(u):
        a = u[0]
        V = (W1 * np.exp(1j * twist * a)).dot(W2)
        dV = (W1 * (1j * twist * np.exp(1j * twist * a))).dot(W2)
        d = np.exp(1j * (k * a + phases))
        return V, dV, d

    def map(u):
        V, _, d = parts(u)
        return (V * d).dot(V.conj().T)

    def jacobian(u):
        V, dV, d = parts(u)
        Vh = V.conj().T
        return np.array([(dV * d).dot(Vh) + (V * (1j * k * d)).dot(Vh)
                         + (V * d).dot(dV.conj().T)])

    loop = Parametrization([0.0], [2 * np.pi], map, jacobian=jacobian,
                           space_id='U%d' % n, chart_id='loop')
    return loop, int(k.sum())


def _loop_crossings(loop):
    return find_maslov_crossings(lambda a: loop(np.array([a])))


@scenario('maslov_spark', '§8', 'Maslov index as a zero current')
def maslov_spark(book):
    """
    Signed crossings of random loops with the Maslov cycle, the winding
    integral and the flowed Maslov form.
    """
    anchor = '§8'
    n = book.dim('n')
    loops = [_random_loop(book.rng, n) for _ in range(book.dim('loops'))]
    form = tilde_maslov_form(n)
    for i, (loop, index) in enumerate(loops):
        book.check('crossings of loop %d' % i, anchor,
                   lambda loop=loop: _loop_crossings(loop).signed_count(),
                   index, 0, 'integer')
        book.check('winding of loop %d' % i, anchor,
                   partial(_integral, loop, form, book.gauss()), index,
                   book.tolerance('winding'))

    loop, _ = loops[0]
    crossings = _loop_crossings(loop)
    focus = _focus(crossings)
    tests = [('one', lambda u: 1.0), ('cos', lambda u: np.cos(u[0])),
             ('exp(sin)', lambda u: np.exp(np.sin(u[0])))]

    def scheme_at(t):
        return book.gauss(16, focus, _focus_depth(
                2 * np.pi, np.exp(-2 * t), book.extra_depth))

    book.converge('flowed Maslov form converges to the crossings', anchor,
                  lambda: weak_convergence_report(
                          tanh_flow_spec(n), loop, form, crossings, tests,
                          book.t_schedule, scheme_at,
                          tol=book.tolerance('weak'), jobs=book.config.jobs))


# odd Chern forms


def _wstr_ratio(n):
    """``wstr D^{n-1}`` over ``eta^{n-1}`` at the base point of CP^{n-1}."""
    m = n - 1
    dim = 2 * m
    basis = [complex_basis(dim, j) for j in range(m)]
    zero = AlternatingForm(dim)
    tau = zero
    sigma = zero
    for dz, dzbar in basis:
        tau = tau + dzbar.wedge(dz)
        sigma = sigma + dz.wedge(dzbar)
    entries = [[basis[j][0].wedge(basis[k][1]) for k in range(m)] + [zero]
               for j in range(m)]
    entries.append([zero] * m + [tau])
    D = FormMatrix.from_forms(entries, split=(m, 1))
    eta = sigma * (1j / (2 * np.pi))
    power = AlternatingForm.constant(dim, 1.0)
    for _ in range(m):
        power = power.wedge(eta)
    return supertrace(D.power(m), 'wstr').top / power.top


def _wstr_expected(n):
    return (-1) ** (n - 1) * (2 * n - 1) * (2 * np.pi / 1j) ** (n - 1)


def _wedge_power_defect(n, rng, lam=np.exp(0.7j)):
    """
    Relative defect of ``omega^{2n-1} = B^{2n-2}(nC + (n-1)C_1) + B^{2n-1}``
    for ``omega = C + B`` built from a random ``dS``.
    """
    dim = 2 * n - 1
    alpha = lam - 1
    M = rng.standard_normal((n - 1, 2 * n - 2)) \
        + 1j * rng.standard_normal((n - 1, 2 * n - 2))
    zero = np.zeros((n, n), dtype=complex)
    C = [zero.copy() for _ in range(dim)]
    C1 = [zero.copy() for _ in range(dim)]
    B = [zero.copy() for _ in range(dim)]
    C[0][0, 0] = 1j
    C1[0][1:, 1:] = -1j * np.eye(n - 1)
    for a in range(1, dim):
        B[a][0, 1:] = -np.conj(alpha) * M[:, a - 1].conj()
        B[a][1:, 0] = alpha * M[:, a - 1]
    C, C1, B = (FormMatrix.from_one_forms(c) for c in (C, C1, B))
    lhs = (C + B).power(2 * n - 1)
    rhs = B.power(2 * n - 2) @ (C * n + C1 * (n - 1)) + B.power(2 * n - 1)
    return (lhs - rhs).norm() / max(lhs.norm(), 1.0)


def _embedded_vanishing(k, rng):
    """``c_{k-1/2}`` on tangents of ``U(k-1)`` inside ``U(k)``."""
    inner = random_unitary(k - 1, rng)
    U = np.eye(k, dtype=complex)
    U[:-1, :-1] = inner
    tangents = []
    for _ in range(2 * k - 1):
        X = np.zeros((k, k), dtype=complex)
        X[:-1, :-1] = 1j * random_hermitian(k - 1, rng)
        tangents.append(U.dot(X))
    return unitary_odd_chern_form(k).evaluate(U, tangents).norm()


def _su2_chart():
    """SU(2) by Hopf angles ``(chi, psi, phi)``."""
    def entries(u):
        chi, ps, ph = u
        return (np.cos(chi) * np.exp(1j * ps), np.sin(chi) * np.exp(1j * ph))

    def matrix(a, b):
        return np.array([[a, b], [-np.conj(b), np.conj(a)]])

    def map(u):
        return matrix(*entries(u))

    def jacobian(u):
        chi, ps, ph = u
        a, b = entries(u)
        return np.array([
            matrix(-np.sin(chi) * np.exp(1j * ps),
                   np.cos(chi) * np.exp(1j * ph)),
            matrix(1j * a, 0.0),
            matrix(0.0, 1j * b)])

    return Parametrization([0.0, 0.0, 0.0], [np.pi / 2, 2 * np.pi, 2 * np.pi],
                           map, jacobian=jacobian, space_id='U2',
                           chart_id='hopf')


def _su2_degree(scheme):
    chart = _su2_chart()
    return abs(_integral(chart, odd_chern_form(2, chart), scheme))


@scenario('nicolaescu_residue', 'Appendix B',
          'odd Chern forms and their residues')
def nicolaescu_residue(book):
    """
    Residues of the odd Chern forms over the Bott-Samelson cycles, the S^1
    residue integrals and the algebra behind them.
    """
    anchor = 'Appendix B'
    rng = book.rng
    for k in range(1, book.dim('k') + 1):
        phi = bott_samelson_map(k)
        form = odd_chern_form(k, phi)
        if k == 1:
            scheme, key, mode = book.gauss(), 'residue_1', 'abs'
        elif k == 2:
            scheme, key, mode = book.gauss(), 'residue_2', 'abs'
        else:
            scheme, key, mode = book.monte_carlo(), 'residue_mc', 'rel'
        book.check('residue of c_%d/2 over S^1 x CP^%d' % (2 * k - 1, k - 1),
                   anchor, partial(_integral, phi, form, scheme), 1.0,
                   book.tolerance(key), mode)

    for n in range(1, book.dim('n') + 1):
        book.check('S^1 residue integral, n=%d' % n, anchor,
                   partial(s1_residue_integral, n), s1_residue_expected(n),
                   book.tolerance('s1'), 'rel')

    for n in range(2, book.dim('lemma_n') + 1):
        book.check('weighted supertrace ratio, n=%d' % n, anchor,
                   partial(_wstr_ratio, n), _wstr_expected(n),
                   book.tolerance('algebra'), 'rel')
        book.check('wedge power identity, n=%d' % n, anchor,
                   partial(_wedge_power_defect, n, rng), 0.0,
                   book.tolerance('algebra'), 'max')

    for k in range(2, book.dim('k') + 2):
        book.check('c_%d/2 vanishes on U(%d)' % (2 * k - 1, k - 1), '§8',
                   partial(_embedded_vanishing, k, rng), 0.0,
                   book.tolerance('vanishing'), 'max')
    book.check('degree of c_3/2 on SU(2)', '§8',
               partial(_su2_degree, book.gauss()), 1.0,
               book.tolerance('degree'))


# unitary flows


def _semigroup_defect(flow, U, schedule):
    worst = 0.0
    for s, t in zip(schedule[:-1], schedule[1:]):
        worst = max(worst, max_abs(flow(s, flow(t, U)) - flow(s + t, U)))
    return worst


def _unitarity_defect(flow, U, schedule):
    n = U.shape[0]
    return max(max_abs(flow(t, U).conj().T.dot(flow(t, U)) - np.eye(n))
               for t in schedule)


def _velocity_defect(flow, velocity, U, schedule, h=VELOCITY_STEP):
    return max(max_abs((flow(t + h, U) - flow(t - h, U)) / (2 * h)
                       - velocity(t, U)) for t in schedule)


def _unitary_with_minus_one(rng, n):
    Z = random_unitary(n, rng)
    angles = np.concatenate([[np.pi], rng.uniform(-2.0, 2.0, n - 1)])
    return (Z * np.exp(1j * angles)).dot(Z.conj().T)


def _reflection_defect(A, n):
    worst = 0.0
    for size in range(n + 1):
        for indices in combinations(range(1, n + 1), size):
            R = critical_reflection(indices, n=n)
            worst = max(worst, max_abs(fA_flow(1.5, R, A) - R))
    return worst


def _fA_limit_defect(U, A):
    L = fA_limit(U, A)
    return max(max_abs(L.dot(L) - np.eye(len(L))),
               max_abs(L.dot(A) - A.dot(L)))


def _grassmann_limit_defect(rng):
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    Atilde = np.outer(a, b.conj())
    frame = np.vstack([Atilde, np.eye(2)])
    return chordal_distance(grassmann_linear_flow(12.0, frame, 2),
                            kernel_image_limit(Atilde))


def _smallest_increment(potential, flow, x, schedule):
    values = [potential(flow(t, x)) for t in schedule]
    return min(np.diff(values))


@scenario('unitary_flows', '§8', 'Morse-Bott flows on U(n) and Grassmannians')
def unitary_flows(book):
    """
    Closed formulas of the tanh and f_A flows against their defining
    properties, limits and strata.
    """
    anchor = '§8'
    rng = book.rng
    n = book.dim('n')
    schedule = book.t_schedule
    A = np.diag(np.linspace(-1.3, 1.1, n))
    fA = lambda t, U: fA_flow(t, U, A)
    short = [t for t in schedule if abs(t) <= 2] or schedule[:1]
    for i in range(book.dim('samples')):
        U = random_unitary(n, rng)
        book.check('tanh semigroup, sample %d' % i, anchor,
                   partial(_semigroup_defect, unitary_tanh_flow, U, schedule),
                   0.0, book.tolerance('semigroup'), 'max')
        book.check('tanh unitarity, sample %d' % i, anchor,
                   partial(_unitarity_defect, unitary_tanh_flow, U, schedule),
                   0.0, book.tolerance('unitarity'), 'max')
        book.check('tanh velocity 1 - U_t^2, sample %d' % i, anchor,
                   partial(_velocity_defect, unitary_tanh_flow,
                           unitary_tanh_velocity, U, schedule),
                   0.0, book.tolerance('velocity'), 'max')
        book.check('f_A semigroup, sample %d' % i, anchor,
                   partial(_semigroup_defect, fA, U, short),
                   0.0, book.tolerance('semigroup'), 'max')
        book.check('f_A unitarity, sample %d' % i, anchor,
                   partial(_unitarity_defect, fA, U, short),
                   0.0, book.tolerance('unitarity'), 'max')
        book.check('f_A velocity A - U_t A U_t, sample %d' % i, anchor,
                   partial(_velocity_defect, fA,
                           lambda t, V: fA_velocity(t, V, A), U, short),
                   0.0, book.tolerance('velocity'), 'max')

    U = _unitary_with_minus_one(rng, n)
    limit = unitary_tanh_limit(U)
    book.check('stratum of U', anchor,
               lambda: classify_unitary_stratum(U).k, 1, 0, 'integer')
    book.check('tanh flow reaches its limit', anchor,
               lambda: max_abs(unitary_tanh_flow(9.0, U) - limit), 0.0,
               book.tolerance('limit'), 'max')
    book.check('the limit stays in the stratum', anchor,
               lambda: classify_unitary_stratum(limit).k, 1, 0, 'integer')

    book.check('critical reflections are fixed', anchor,
               partial(_reflection_defect, A, n), 0.0,
               book.tolerance('fixed'), 'max')
    book.check('f_A limit is a reflection commuting with A', anchor,
               partial(_fA_limit_defect, random_unitary(n, rng), A), 0.0,
               book.tolerance('limit'), 'max')
    book.check('Grassmann flow limit is Im A + Ker A', '§3',
               partial(_grassmann_limit_defect, rng), 0.0,
               book.tolerance('limit'), 'max')

    v = rng.standard_normal(2)
    book.check('height increases along the sphere flow', '§3',
               partial(_smallest_increment, sphere_height_potential,
                       sphere_height_flow, v, schedule), 0.0, 0, 'min')
    frame = np.vstack([np.eye(2), rng.standard_normal((2, 2))
                       + 1j * rng.standard_normal((2, 2))])
    book.check('potential increases along the Grassmann flow', '§3',
               partial(_smallest_increment, grassmann_potential(2),
                       lambda t, F: grassmann_linear_flow(t, F, 2), frame,
                       schedule), 0.0, 0, 'min')


# superconnections


def _trivial_line():
    return BundleWithConnection.trivial(1, 1)


def _odd_density(A, t, u):
    field = chern_character_field(_trivial_line(), A, t, 'odd')
    return field.at(u).component(1).top


def _odd_integral(A, t, scheme):
    value, _ = integrate_function(partial(_odd_density, A, t), [0.0],
                                  [2 * np.pi], scheme)
    return complex(value)


def _cayley_datum(u):
    return inverse_cayley(np.array([[np.exp(1j * u[0])]]))


def _shifted_sine(c, u):
    return np.array([[np.sin(u[0] - c)]])


def _bump(center, width, u):
    return np.exp((np.cos(u[0] - center) - 1) / width ** 2)


def _bump_report(book, c, t_schedule, tol):
    A = partial(_shifted_sine, c)
    zeros = find_signed_zeros(lambda u: np.array([np.sin(u[0] - c)]), [0.0],
                              [2 * np.pi], grid=8, periodic=(0,))
    centres = [c, c + np.pi / 2, c + np.pi + 0.3][:book.dim('bumps')]
    tests = [('bump@%.2f' % m, partial(_bump, m, 0.7)) for m in centres]
    gaps = dict((name, []) for name, _ in tests)
    focus = _focus(zeros)
    for t in t_schedule:
        scheme = book.gauss(focus=focus, depth=_focus_depth(
                2 * np.pi, 1.0 / t, book.extra_depth))
        values, _ = integrate_function(
                lambda u, t=t: np.array([_odd_density(A, t, u) * func(u)
                                         for _, func in tests]),
                [0.0], [2 * np.pi], scheme)
        for (name, func), value in zip(tests, np.atleast_1d(values)):
            gaps[name].append(float(abs(value - zeros.pair(func))))
    return ConvergenceReport(list(t_schedule), [name for name, _ in tests],
                             gaps, tol, gap_verdict(gaps, tol))


def _invertible_mass(t, scheme):
    A = lambda u: np.array([[2.0 + np.cos(u[0])]])
    value, _ = integrate_function(lambda u: abs(_odd_density(A, t, u)),
                                  [0.0], [2 * np.pi], scheme)
    return float(np.real(value))


@scenario('superconnection', '§9', 'superconnection Chern characters')
def superconnection(book):
    """
    Residues of the rescaled superconnection characters, the odd character
    against the Maslov form and its collapse onto the zeros of the datum.
    """
    anchor = '§9'
    for t in (1.0, 2.0):
        for parity in ('odd', 'even'):
            book.check('%s residue at t=%g' % (parity, t), anchor,
                       partial(superconnection_residue, parity, t), 1.0,
                       book.tolerance('residue'))
    scheme = book.gauss(focus=[(np.pi,)], depth=book.extra_depth)
    book.check('odd character of the Cayley datum is the Maslov form',
               anchor, partial(_odd_integral, _cayley_datum, 1.0, scheme),
               _integral(circle_chart(), tilde_maslov_form(1),
                         book.gauss(64)), book.tolerance('residue'))
    c = book.rng.uniform(0.2, 1.2)
    book.converge('odd character converges to the zeros of A', anchor,
                  lambda: _bump_report(book, c, book.t_schedule,
                                       book.tolerance('weak')))
    book.check('invertible datum carries no mass', anchor,
               partial(_invertible_mass, 8.0, book.gauss(32)), 0.0,
               book.tolerance('mass'), 'max')


# Mathai-Quillen forms


def _fiber_integral(t, scheme):
    bundle = BundleWithConnection.trivial(2, 0, field='real')
    field = mathai_quillen_field(bundle, t)
    value, _ = integrate_full_chart(field.at, 2, scheme, radius=6.0 / t)
    return value


def _closedness_defect(rng, probes):
    field = mathai_quillen_field(_sphere_tangent_bundle(), 1.0)
    worst = 0.0
    for _ in range(probes):
        u = np.concatenate([[rng.uniform(0.4, 2.7), rng.uniform(0, 2 * np.pi)],
                            0.7 * rng.standard_normal(2)])
        worst = max(worst, exterior_derivative(field.at, u).norm())
    return worst


def _pfaffian_limit_defect(rng, probes):
    bundle = _sphere_tangent_bundle()
    worst = 0.0
    for _ in range(probes):
        b = np.array([rng.uniform(0.4, 2.7), rng.uniform(0, 2 * np.pi)])
        x = rng.standard_normal(2)
        mu = mathai_quillen_form(bundle, 0.0, b, x)
        worst = max(worst, (mu - pfaffian_form(bundle, b).shifted(0, 4))
                    .norm())
    return worst


@scenario('mathai_quillen', '§10', 'Mathai-Quillen forms')
def mathai_quillen(book):
    """
    Fiber integrals, closedness and the t -> 0 limit of the Mathai-Quillen
    forms and their collapse onto the zeros of a section.
    """
    anchor = '§10'
    rng = book.rng
    for t in (0.5, 1.0, 2.0):
        book.check('fiber integral at t=%g' % t, anchor,
                   partial(_fiber_integral, t, book.gauss()), 1.0,
                   book.tolerance('fiber'))
    book.check('mu_1 is closed', anchor,
               partial(_closedness_defect, rng, book.dim('probes')), 0.0,
               book.tolerance('closed'), 'max')
    book.check('mu_0 is the Pfaffian form', anchor,
               partial(_pfaffian_limit_defect, rng, book.dim('probes')), 0.0,
               book.tolerance('pfaffian'), 'max')

    lower, upper = SPHERE_BOX
    zeros = _sphere_zeros(grid=8)
    section = _graph_section(lower, upper, _sphere_field,
                             _sphere_field_derivative)
    omega = mathai_quillen_field(_sphere_tangent_bundle(), 1.0)
    focus = _focus(zeros)
    tests = [('one', lambda u: 1.0),
             ('1+y/2', lambda u: 1 + _sphere_point(u)[1] / 2),
             ('1+z^2/2', lambda u: 1 + _sphere_point(u)[2] ** 2 / 2)]
    # mu_t is mu_1 flowed for time log t by the fiber scaling
    flow_times = [float(np.log(t)) for t in book.t_schedule]

    def scheme_at(s):
        return book.gauss(focus=focus, depth=_focus_depth(
                np.pi, np.exp(-s), book.extra_depth))

    book.converge('mu_t converges to [s = 0]', anchor,
                  lambda: weak_convergence_report(
                          sphere_flow_spec(2, 2), section, omega, zeros,
                          tests, flow_times, scheme_at,
                          tol=book.tolerance('weak'), jobs=book.config.jobs))


# local models


def _psi_defect(rng, samples):
    worst = 0.0
    for t, q in zip(rng.uniform(-1, 1, samples), rng.uniform(0, 1, samples)):
        r, s = psi(t, q)
        worst = max(worst, abs(r * s - q), abs((r * r - s * s) / 2 - t))
    return worst


def _unit_vector(rng, size):
    v = rng.standard_normal(size)
    return v / np.linalg.norm(v)


def _family_defect(rng, samples, model=LocalModel(2, 3, 1)):
    worst = 0.0
    for _ in range(samples):
        t, q = rng.uniform(-1, 1), rng.uniform(0.01, 1)
        xhat, yhat = _unit_vector(rng, model.k), _unit_vector(rng, model.m)
        x, y, z = family_blowup(t, q, xhat, yhat, rng.standard_normal(1))
        worst = max(worst,
                    abs(np.linalg.norm(x) * np.linalg.norm(y) - q),
                    abs(LocalModel.potential(x, y) - t),
                    max_abs(x / np.linalg.norm(x) - xhat),
                    max_abs(y / np.linalg.norm(y) - yhat))
    return worst


def _flowline_defect(rng, samples):
    worst = 0.0
    for _ in range(samples):
        x, y, z = (rng.standard_normal(2), rng.standard_normal(2),
                   rng.standard_normal(1))
        t = rng.uniform(-1, 1)
        level = lambda s: LocalModel.potential(
                *local_model_flow(s, x, y, z)[:2]) - t
        oracle = local_model_flow(brentq(level, -40.0, 40.0, xtol=1e-15),
                                  x, y, z)
        found = flowline_level_point(x, y, z, t)
        worst = max(worst, max(max_abs(a - b)
                               for a, b in zip(found, oracle)))
    return worst


def _theta_continuity(rng, samples, delta=0.5, step=1e-7):
    M = rng.standard_normal((2, 2))
    c0 = rng.standard_normal(2)
    w = rng.standard_normal(2)
    alpha = lambda a, b: M.dot(a) + np.sin(b[0]) * c0
    beta = lambda a, b: b + a.dot(w)
    worst = 0.0
    for _ in range(samples):
        v = _unit_vector(rng, 2)
        b = rng.standard_normal(1)
        near = theta_delta(step, v, b, alpha, beta, delta)
        at = theta_delta(0.0, v, b, alpha, beta, delta)
        worst = max(worst, max(max_abs(p - q) for p, q in zip(near, at)))
    return worst


@scenario('blowup_models', 'Appendix A', 'resolutions of the local models')
def blowup_models(book):
    """
    The corner map, the family blow-up, level points of flowlines and the
    continuity of the blown-up section.
    """
    anchor = 'Appendix A'
    rng = book.rng
    samples = book.dim('samples')
    book.check('psi inverts (r s, (r^2 - s^2)/2)', anchor,
               partial(_psi_defect, rng, samples), 0.0,
               book.tolerance('exact'), 'max')
    book.check('Psi lands on the level with unit directions', anchor,
               partial(_family_defect, rng, max(samples // 10, 1)), 0.0,
               book.tolerance('exact'), 'max')
    book.check('level point of a flowline', anchor,
               partial(_flowline_defect, rng, 100), 0.0,
               book.tolerance('flowline'), 'max')
    book.check('blown-up section is continuous at lambda = 0', anchor,
               partial(_theta_continuity, rng, 100), 0.0,
               book.tolerance('continuity'), 'max')


# transgression


def _boundary_defect(flow, section, omega, eta, t, scheme):
    return boundary_check(flow, section, omega, eta, t, scheme).defect


@scenario('transgression_stokes', '§2', 'the transgression boundary identity')
def transgression_stokes(book):
    """
    Stokes' identity d T_t = phi_t* - phi_0* for the top Chern form over
    S^2 and the Euler form over T^2.
    """
    anchor = '§2'
    lower, upper = SPHERE_BOX
    s, ds = _sphere_line_section(book.rng)
    zeros = find_signed_zeros(s, lower, upper, grid=12, periodic=(1,),
                              complex_valued=True)
    sphere = (graph_chart_flow_spec(2, 1),
              _graph_section(lower, upper, s, ds, complex_valued=True),
              top_chern_form(_tautological_complement(_sphere_line_bundle())),
              function_form(lambda u: 1 + _sphere_point(u)[1]
                            + _sphere_point(u)[0] * _sphere_point(u)[2] / 2,
                            2),
              _focus(zeros), np.pi, 2.0)

    lower, upper = TORUS_BOX
    torus_zeros = find_signed_zeros(_torus_section, lower, upper, grid=8,
                                    periodic=(0, 1))
    book.check('signed zeros on T^2', anchor,
               lambda: torus_zeros.signed_count(), 0, 0, 'integer')
    torus = (sphere_flow_spec(2, 2),
             _graph_section(lower, upper, _torus_section,
                            _torus_section_derivative),
             mathai_quillen_field(_torus_bundle(), 1.0),
             function_form(lambda u: 1 + np.cos(u[0]) + 0.5 * np.sin(u[1]),
                           2),
             _focus(torus_zeros), 2 * np.pi, 1.0)

    for label, (flow, section, omega, eta, focus, side, rate) in (
            ('S^2 top Chern', sphere), ('T^2 Euler', torus)):
        for t in book.t_schedule:
            scheme = book.gauss(focus=focus, depth=_focus_depth(
                    side, np.exp(-rate * t), book.extra_depth))
            book.check('boundary identity, %s, t=%g' % (label, t), anchor,
                       partial(_boundary_defect, flow, section, omega, eta,
                               t, scheme),
                       0.0, book.tolerance('boundary'), 'max')


# volumes of flow tubes


def _circle_loop(center, V):
    """``alpha -> V diag(e^{i alpha}, center) V*`` in U(2)."""
    Vh = V.conj().T
    return Parametrization(
            [0.0], [2 * np.pi],
            lambda u: (V * np.array([np.exp(1j * u[0]), center])).dot(Vh),
            jacobian=lambda u: np.array([
                (V * np.array([1j * np.exp(1j * u[0]), 0.0])).dot(Vh)]),
            space_id='U2', chart_id='loop')


def _grassmann_loop():
    c, s = np.cos(1.0), np.sin(1.0)
    return Parametrization(
            [0.0], [2 * np.pi],
            lambda u: np.array([[c], [s * np.exp(1j * u[0])]]),
            jacobian=lambda u: np.array(
                [[[0.0], [1j * s * np.exp(1j * u[0])]]]),
            space_id='Gr(1,2)', chart_id='loop')


def _unit_circle():
    return Parametrization(
            [0.0], [2 * np.pi],
            lambda u: np.array([np.cos(u[0]), np.sin(u[0])]),
            jacobian=lambda u: np.array([[-np.sin(u[0]), np.cos(u[0])]]),
            space_id='R2', chart_id='circle')


def _increment_sum(flow, section, times, scheme, strong=False):
    return sum(tube_volume_increments(flow, section, times, scheme, strong))


def _smallest_volume_increment(flow, section, times, scheme):
    return min(tube_volume_increments(flow, section, times, scheme))


@scenario('atomicity_volumes', '§2', 'finite volume of flow tubes')
def atomicity_volumes(book):
    """
    Tube volumes of bounded flows stop growing while the radial flow on R^2
    does not.
    """
    anchor = '§2'
    times = book.t_schedule
    # the loops cross -1 at alpha = pi, where the flowed loops concentrate
    crossing = book.gauss(focus=[(np.nan, np.pi)], depth=_focus_depth(
            2 * np.pi, np.exp(-2 * times[0]), 0))
    book.check('strong tube of the tanh flow on U(1)', anchor,
               partial(_increment_sum, tanh_flow_spec(1), circle_chart(),
                       times, crossing, True), 0.0,
               book.tolerance('increment'), 'max')
    loop = _circle_loop(np.exp(1j), random_unitary(2, book.rng))
    book.check('tube of the tanh flow on U(2)', anchor,
               partial(_increment_sum, tanh_flow_spec(2), loop, times,
                       crossing), 0.0, book.tolerance('increment'), 'max')
    grassmann = FlowSpec('Gr(1,2)',
                         lambda t, F: grassmann_linear_flow(t, F, 1),
                         grassmann_potential(1))
    book.check('tube of the Grassmann flow', '§3',
               partial(_increment_sum, grassmann, _grassmann_loop(), times,
                       book.gauss()), 0.0, book.tolerance('increment'),
               'max')
    book.check('radial tube keeps growing', '§5',
               partial(_smallest_volume_increment, radial_flow_spec(2),
                       _unit_circle(), [0.0, 1.0, 2.0, 3.0], book.gauss()),
               book.tolerance('divergence'), 0, 'min')
