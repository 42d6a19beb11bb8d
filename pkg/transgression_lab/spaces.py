# -*- coding: utf-8 -*-
"""
Model manifolds, charts and bundles with connection.

Points of a model space are plain arrays: real coordinate vectors for the
chart based spaces (complex charts as interleaved real pairs) and complex
matrices for the unitary groups. A :class:`Parametrization` maps a closed
box onto such points and knows its tangent vectors.

    >>> import numpy as np
    >>> sphere = spherical_chart()
    >>> np.allclose(sphere([np.pi / 2, 0.0]), [1.0, 0.0, 0.0])
    True
    >>> stereographic(np.zeros(2))
    array([1., 0., 0.])

"""
from collections import namedtuple
import warnings

import numpy as np
from scipy import linalg

from . import errors
from .exterior import AlternatingForm, FormMatrix, form_matrix_product
from .util import DEFAULT_STEP, central_difference, max_abs, \
        richardson_difference, to_complex, to_real

__all__ = ['ChartPoint', 'Parametrization', 'BundleWithConnection',
           'projective_bundle_chart', 'tautological_frame',
           'tautological_curvature', 'tautological_bundle',
           'projected_connection', 'curvature', 'maurer_cartan_pullback',
           'stereographic_frame_jacobian',
           'stereographic', 'inverse_stereographic', 'stereographic_frame',
           'fubini_study_form', 'complex_basis', 'projective_polar_chart',
           'spherical_chart', 'sphere_polar_chart', 'bott_samelson_map',
           'circle_chart']


ChartPoint = namedtuple('ChartPoint', 'space_id chart_id coords')

COMPATIBILITY_TOL = 1e-6


class Parametrization(object):
    """
    A smooth map from the closed box ``[lower, upper]`` of R^d into a model
    space. ``jacobian(u)``, when given, returns the tangent vectors stacked
    on the first axis; otherwise central differences with ``step`` are used,
    one-sided near the box faces.
    """

    def __init__(self, lower, upper, map, orientation=1, jacobian=None,
                 space_id=None, chart_id=None, step=DEFAULT_STEP):
        self.lower = np.atleast_1d(np.asarray(lower, dtype=float))
        self.upper = np.atleast_1d(np.asarray(upper, dtype=float))
        if self.lower.shape != self.upper.shape:
            raise errors.DimensionError("box bounds of different length")
        if np.any(self.upper < self.lower):
            raise errors.ValidationError("empty parameter box")
        if orientation not in (1, -1):
            raise errors.ValidationError("orientation must be +1 or -1")
        self.map = map
        self.orientation = orientation
        self.jacobian = jacobian
        self.space_id = space_id
        self.chart_id = chart_id
        self.step = step

    @property
    def dim(self):
        return self.lower.size

    @property
    def jacobian_mode(self):
        return 'analytic' if self.jacobian else 'finite_difference'

    def __call__(self, u):
        return np.asarray(self.map(np.asarray(u, dtype=float)))

    def point(self, u):
        value = self(u)
        coords = to_real(value.ravel()) if np.iscomplexobj(value) \
            else value.ravel()
        return ChartPoint(self.space_id, self.chart_id, coords)

    def tangents(self, u):
        u = np.asarray(u, dtype=float)
        if self.jacobian is not None:
            return np.asarray(self.jacobian(u))
        if self.dim == 0:
            return np.zeros((0,) + self(u).shape)
        return central_difference(self, u, self.step, self.lower, self.upper)

    def flipped(self):
        return self._copy(orientation=-self.orientation)

    def restricted(self, lower, upper):
        return self._copy(lower=lower, upper=upper)

    def bisected(self, axis=0):
        middle = (self.lower[axis] + self.upper[axis]) / 2
        upper = self.upper.copy()
        upper[axis] = middle
        lower = self.lower.copy()
        lower[axis] = middle
        return (self.restricted(self.lower, upper),
                self.restricted(lower, self.upper))

    def _copy(self, **changes):
        args = dict(lower=self.lower, upper=self.upper, map=self.map,
                    orientation=self.orientation, jacobian=self.jacobian,
                    space_id=self.space_id, chart_id=self.chart_id,
                    step=self.step)
        args.update(changes)
        return Parametrization(**args)

    def __repr__(self):
        return "Parametrization(%s/%s, box=%s..%s, orientation=%+d)" % (
                self.space_id, self.chart_id, self.lower.tolist(),
                self.upper.tolist(), self.orientation)


class BundleWithConnection(object):
    """
    A trivialized vector bundle over a chart of dimension ``dim``.

    ``connection(x)`` returns the local connection form as a FormMatrix of
    one-forms, acting on coefficient columns: ``nabla s = ds + Theta s``.
    ``metric(x)`` is the fiber metric in the trivialization (identity when
    omitted). An analytic ``curvature(x)`` is used in preference to finite
    differences.
    """

    def __init__(self, rank, dim, connection, metric=None, field='complex',
                 orientation=1, curvature=None, split=None, lower=None,
                 upper=None, compatible=True, step=DEFAULT_STEP,
                 space_id=None):
        if field not in ('real', 'complex'):
            raise errors.UsageError("bundle field must be real or complex")
        self.rank = int(rank)
        self.dim = int(dim)
        self.connection = connection
        self.metric = metric
        self.field = field
        self.orientation = orientation
        self.analytic_curvature = curvature
        self.split = split
        self.lower = lower
        self.upper = upper
        self.compatible = compatible
        self.step = step
        self.space_id = space_id

    @classmethod
    def trivial(cls, rank, dim, field='complex', **kwargs):
        flat = lambda x: FormMatrix(rank, dim)
        return cls(rank, dim, flat, field=field,
                   curvature=lambda x: FormMatrix(rank, dim), **kwargs)

    def metric_at(self, x):
        if self.metric is None:
            return np.eye(self.rank)
        return np.asarray(self.metric(x))

    def covariant_derivative(self, section, x):
        """``nabla`` of a section ``x -> vector`` (or endomorphism) at x."""
        theta = self.connection(x)
        value = np.asarray(section(x))
        derivative = central_difference(section, x, self.step)
        components = []
        for a in range(self.dim):
            block = theta.blocks.get((a,), np.zeros((self.rank, self.rank)))
            if value.ndim == 2:
                components.append(derivative[a] + block.dot(value)
                                  - value.dot(block))
            else:
                components.append(derivative[a] + block.dot(value))
        return np.array(components)

    def __repr__(self):
        return "BundleWithConnection(rank=%s, dim=%s, %s)" % (
                self.rank, self.dim, self.field)


def _one_form_components(theta, dim, rank):
    zero = np.zeros((rank, rank), dtype=complex)
    return np.array([theta.blocks.get((a,), zero) for a in range(dim)])


def curvature(bundle, x, step=None):
    """
    Curvature ``d Theta + Theta ^ Theta`` at the chart point ``x``.
    """
    x = np.asarray(x, dtype=float)
    if bundle.analytic_curvature is not None:
        return bundle.analytic_curvature(x)
    step = step or bundle.step
    if bundle.lower is not None and np.any(x - step < bundle.lower):
        raise errors.BoundaryError("point %r within %g of the chart boundary"
                                   % (x.tolist(), step))
    if bundle.upper is not None and np.any(x + step > bundle.upper):
        raise errors.BoundaryError("point %r within %g of the chart boundary"
                                   % (x.tolist(), step))
    F = _curvature(bundle, x, step, central_difference)
    if bundle.compatible and not _is_skew(bundle, x, F):
        F = _curvature(bundle, x, step, richardson_difference)
        if not _is_skew(bundle, x, F):
            warnings.warn("curvature at %r fails the metric compatibility "
                          "check" % (x.tolist(),), errors.ConvergenceWarning)
    return F


def _curvature(bundle, x, step, differentiate):
    dim, rank = bundle.dim, bundle.rank
    theta = bundle.connection(x)
    components = lambda y: _one_form_components(
            bundle.connection(y), dim, rank)
    # derivative[c, a] = d_c Theta_a
    derivative = differentiate(components, x, step)
    blocks = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            blocks[(a, b)] = derivative[a, b] - derivative[b, a]
    dtheta = FormMatrix(rank, dim, blocks, bundle.split)
    return dtheta + form_matrix_product(theta, theta)


def _is_skew(bundle, x, F):
    G = bundle.metric_at(x)
    scale = max(F.norm(), 1.0)
    for block in F.blocks.values():
        lowered = G.dot(block)
        if max_abs(lowered + lowered.conj().T) > COMPATIBILITY_TOL * scale:
            return False
    return True


def projected_connection(bundle, frame, frame_jacobian=None, rank=None):
    """
    Connection induced on the subbundle spanned by the columns of
    ``frame(x)`` by orthogonal projection: ``G^-1 F* (dF + Theta F)`` with
    ``G = F* F`` the induced metric.
    """
    def derivative(x):
        if frame_jacobian is not None:
            return np.asarray(frame_jacobian(x))
        return central_difference(frame, x, bundle.step)

    def gram(x):
        F = np.asarray(frame(x))
        H = bundle.metric_at(x)
        G = F.conj().T.dot(H).dot(F)
        singular = linalg.svdvals(F)
        if singular[-1] <= 1e-12 * max(singular[0], 1.0):
            raise errors.FrameError("frame loses rank at %r"
                                    % (np.asarray(x).tolist(),))
        return F, H, G

    def connection(x):
        F, H, G = gram(x)
        dF = derivative(x)
        theta = _one_form_components(bundle.connection(x), bundle.dim,
                                     bundle.rank)
        rows = F.conj().T.dot(H)
        blocks = {}
        for a in range(bundle.dim):
            blocks[(a,)] = linalg.solve(G, rows.dot(dF[a] + theta[a].dot(F)),
                                        assume_a='her')
        return FormMatrix(F.shape[1], bundle.dim, blocks)

    def metric(x):
        return gram(x)[2]

    if rank is None:
        rank = np.asarray(frame(np.zeros(bundle.dim))).shape[1]
    return BundleWithConnection(rank, bundle.dim, connection, metric=metric,
                                field=bundle.field,
                                orientation=bundle.orientation,
                                lower=bundle.lower, upper=bundle.upper,
                                compatible=bundle.compatible,
                                step=bundle.step, space_id=bundle.space_id)


def tautological_frame(v):
    """
    Frame ``[I; -v*]`` of the orthogonal complement of the line spanned by
    ``(v, 1)`` in ``E + C`` and its derivative along the interleaved real
    coordinates of ``v``.
    """
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    n = v.size
    F = np.vstack([np.eye(n), -v.conj()[None, :]])
    dF = np.zeros((2 * n, n + 1, n), dtype=complex)
    for j in range(n):
        dF[2 * j, n, j] = -1.0
        dF[2 * j + 1, n, j] = 1j
    return F, dF


def projective_bundle_chart(bundle, b, v):
    """
    Chart point of the line through ``(v, 1)`` of ``P(E + C)`` over the base
    point ``b``: base coordinates followed by the interleaved fiber chart.
    """
    b = np.atleast_1d(np.asarray(b, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    if v.size != bundle.rank:
        raise errors.DimensionError("fiber vector of length %s for a rank %s "
                                    "bundle" % (v.size, bundle.rank))
    return ChartPoint('P(E+C)', 'graph', np.concatenate([b, to_real(v)]))


def tautological_curvature(v):
    """
    Curvature ``c G^-1 dv ^ dv*`` of the projected connection on the frame
    ``[I; -v*]``, with ``G = 1 + v v*`` and ``c = 1 / (1 + |v|^2)``.
    """
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    n = v.size
    c = 1.0 / (1 + np.vdot(v, v).real)
    G_inv = linalg.inv(np.eye(n) + np.outer(v, v.conj()))
    basis = [complex_basis(2 * n, j) for j in range(n)]
    entries = []
    for j in range(n):
        row = []
        for k in range(n):
            form = AlternatingForm(2 * n)
            for m in range(n):
                form = form + (c * G_inv[j, m]) * basis[m][0].wedge(
                        basis[k][1])
            row.append(form)
        entries.append(row)
    return FormMatrix.from_forms(entries)


def tautological_bundle(n, analytic=True):
    """
    ``tau^perp`` over the affine chart of CP^n (interleaved coordinates)
    with the connection projected from the flat ``C^{n+1}``.
    """
    ambient = BundleWithConnection.trivial(n + 1, 2 * n, space_id='CP%d' % n)
    bundle = projected_connection(
            ambient, lambda x: tautological_frame(to_complex(x))[0],
            lambda x: tautological_frame(to_complex(x))[1], rank=n)
    if analytic:
        bundle.analytic_curvature = lambda x: tautological_curvature(
                to_complex(x))
    return bundle


def maurer_cartan_pullback(phi, u):
    """``g^-1 dg`` pulled back by a map into U(n), in the parameters."""
    u = np.asarray(u, dtype=float)
    U = phi(u)
    tangents = phi.tangents(u)
    return FormMatrix.from_one_forms(
            [linalg.solve(U, T) for T in tangents])


def stereographic(v):
    v = np.asarray(v, dtype=float)
    r2 = v.dot(v)
    return np.concatenate([[1 - r2], 2 * v]) / (1 + r2)


def inverse_stereographic(p):
    p = np.asarray(p, dtype=float)
    if p[0] <= -1 + 1e-15:
        raise errors.ValidationError("the antipode of the chart center is "
                                     "not in the chart")
    return p[1:] / (1 + p[0])


def stereographic_frame(v):
    """Columns ``dS/dv_j`` spanning the tangent space of the sphere."""
    v = np.asarray(v, dtype=float)
    n = v.size
    D = 1 + v.dot(v)
    frame = np.empty((n + 1, n))
    frame[0] = -4 * v / D ** 2
    frame[1:] = 2 * np.eye(n) / D - 4 * np.outer(v, v) / D ** 2
    return frame


def stereographic_frame_jacobian(v):
    v = np.asarray(v, dtype=float)
    n = v.size
    D = 1 + v.dot(v)
    eye = np.eye(n)
    out = np.empty((n, n + 1, n))
    for c in range(n):
        out[c, 0] = -4 * eye[c] / D ** 2 + 16 * v * v[c] / D ** 3
        out[c, 1:] = (-4 * eye * v[c] / D ** 2
                      - 4 * (np.outer(eye[c], v)
                             + np.outer(v, eye[c])) / D ** 2
                      + 16 * np.outer(v, v) * v[c] / D ** 3)
    return out


def complex_basis(dim, j):
    """``dz_j`` and ``dzbar_j`` on a chart with interleaved real pairs."""
    dx = AlternatingForm.basis(dim, 2 * j)
    dy = AlternatingForm.basis(dim, 2 * j + 1)
    return dx + 1j * dy, dx - 1j * dy


def fubini_study_form(coords):
    """
    The invariant Kahler form ``(i/2pi) d dbar log(1 + |z|^2)`` on the
    affine chart of CP^n at the interleaved point ``coords``; it equals
    ``(i/2pi) sum dz_j ^ dzbar_j`` at the origin.
    """
    z = to_complex(coords)
    n = z.size
    D = 1 + np.vdot(z, z).real
    # g_jk = (delta_jk D - zbar_j z_k) / D^2
    g = (np.eye(n) * D - np.outer(z.conj(), z)) / D ** 2
    out = AlternatingForm(2 * n)
    basis = [complex_basis(2 * n, j) for j in range(n)]
    for j in range(n):
        for k in range(n):
            if g[j, k] != 0:
                out = out + g[j, k] * basis[j][0].wedge(basis[k][1])
    return out * (1j / (2 * np.pi))


def circle_chart():
    """``alpha -> e^{i alpha}`` as a 1x1 unitary."""
    return Parametrization(
            [0.0], [2 * np.pi],
            lambda u: np.array([[np.exp(1j * u[0])]]),
            jacobian=lambda u: np.array([[[1j * np.exp(1j * u[0])]]]),
            space_id='U1', chart_id='angle')


def spherical_chart():
    """S^2 in R^3 by colatitude and longitude, outward orientation."""
    def map(u):
        th, ph = u
        return np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph),
                         np.cos(th)])

    def jacobian(u):
        th, ph = u
        return np.array([
            [np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)],
            [-np.sin(th) * np.sin(ph), np.sin(th) * np.cos(ph), 0.0]])

    return Parametrization([0.0, 0.0], [np.pi, 2 * np.pi], map,
                           jacobian=jacobian, space_id='S2',
                           chart_id='spherical')


def sphere_polar_chart():
    """
    The stereographic plane of S^2 by ``v = tan(rho/2)(cos beta, sin beta)``
    over ``[0, pi] x [0, 2pi]``, covering the sphere up to a null set.
    """
    def map(u):
        rho, beta = u
        r = np.tan(rho / 2)
        return r * np.array([np.cos(beta), np.sin(beta)])

    def jacobian(u):
        rho, beta = u
        r = np.tan(rho / 2)
        dr = 0.5 / np.cos(rho / 2) ** 2
        return np.array([dr * np.array([np.cos(beta), np.sin(beta)]),
                         r * np.array([-np.sin(beta), np.cos(beta)])])

    return Parametrization([0.0, 0.0], [np.pi, 2 * np.pi], map,
                           jacobian=jacobian, space_id='S2',
                           chart_id='stereographic-polar')


def projective_polar_chart(n):
    """
    The affine chart of CP^n by ``z_j = tan(rho_j) e^{i beta_j}``, over
    ``([0, pi/2] x [0, 2pi])^n`` with the complex orientation. Values are
    interleaved real pairs.
    """
    lower = np.zeros(2 * n)
    upper = np.tile([np.pi / 2, 2 * np.pi], n)

    def map(u):
        rho, beta = u[0::2], u[1::2]
        return to_real(np.tan(rho) * np.exp(1j * beta))

    def jacobian(u):
        rho, beta = u[0::2], u[1::2]
        z = np.tan(rho) * np.exp(1j * beta)
        out = np.zeros((2 * n, n), dtype=complex)
        for j in range(n):
            out[2 * j, j] = np.exp(1j * beta[j]) / np.cos(rho[j]) ** 2
            out[2 * j + 1, j] = 1j * z[j]
        return np.array([to_real(row) for row in out])

    return Parametrization(lower, upper, map, jacobian=jacobian,
                           space_id='CP%d' % n, chart_id='affine-polar')


def bott_samelson_map(k):
    """
    ``(lambda, L) -> lambda P_L + (1 - P_L)`` from S^1 x CP^{k-1} into U(k),
    with ``lambda = e^{i alpha}`` and ``L`` the line through ``(1, a)``, ``a``
    in the polar chart. The product orientation is declared orientation
    preserving.
    """
    if k < 1:
        raise errors.DimensionError("k must be positive")
    polar = projective_polar_chart(k - 1) if k > 1 else None
    lower = np.concatenate([[0.0], polar.lower if polar else []])
    upper = np.concatenate([[2 * np.pi], polar.upper if polar else []])

    def pieces(u):
        lam = np.exp(1j * u[0])
        if polar is None:
            return lam, np.ones(1, dtype=complex), None
        a = to_complex(polar(u[1:]))
        ell = np.concatenate([[1.0], a])
        da = [to_complex(row) for row in polar.tangents(u[1:])]
        return lam, ell, da

    def map(u):
        lam, ell, _ = pieces(u)
        P = np.outer(ell, ell.conj()) / np.vdot(ell, ell).real
        return np.eye(k) + (lam - 1) * P

    def jacobian(u):
        lam, ell, da = pieces(u)
        norm2 = np.vdot(ell, ell).real
        P = np.outer(ell, ell.conj()) / norm2
        out = [1j * lam * P]
        for dA in da or []:
            dl = np.concatenate([[0.0], dA])
            dP = (np.outer(dl, ell.conj()) + np.outer(ell, dl.conj())) / norm2
            dP -= P * 2 * np.vdot(ell, dl).real / norm2
            out.append((lam - 1) * dP)
        return np.array(out)

    return Parametrization(lower, upper, map, jacobian=jacobian,
                           space_id='U%d' % k, chart_id='bott-samelson')
