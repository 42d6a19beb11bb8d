# -*- coding: utf-8 -*-
"""
Closed form vertical flows of Morse-Bott-Smale type and the classifiers of
their critical strata.

The unitary flows are evaluated in an eigenbasis (tanh flow) or on the
Lagrangian frame of ``U`` (the flow of ``Re Tr(AU)``), re-orthonormalized as
time advances, so they stay accurate for large ``|t|``.

    >>> import numpy as np
    >>> bool(np.allclose(unitary_tanh_flow(3.0, np.eye(2)), np.eye(2)))
    True
    >>> radial_flow(0.0, np.array([1.0, -3.0]))
    array([ 1., -3.])

"""
from collections import namedtuple
from itertools import combinations
import warnings

import numpy as np
from scipy import linalg

from . import errors
from .algebra import validate
from .spaces import projective_polar_chart, sphere_polar_chart
from .util import DEFAULT_STEP, central_difference, max_abs

__all__ = ['FlowSpec', 'CriticalStratum', 'StratumRecord',
           'unitary_tanh_flow', 'unitary_tanh_differential',
           'unitary_tanh_limit', 'fA_flow', 'fA_differential',
           'fA_velocity', 'fA_limit', 'unitary_potential', 'arnold_frame',
           'arnold_unitary', 'grassmann_linear_flow', 'graph_chart_flow',
           'kernel_image_limit', 'chordal_distance', 'sphere_height_flow',
           'sphere_height_potential', 'radial_flow', 'local_model_flow',
           'classify_unitary_stratum', 'schubert_codimension',
           'critical_reflection', 'unitary_strata', 'tanh_flow_spec',
           'fA_flow_spec', 'graph_chart_flow_spec', 'sphere_flow_spec',
           'radial_flow_spec']


STRATUM_TOL = 1e-7

# largest exponent applied between two re-orthonormalizations
FRAME_CHUNK = 5.0


CriticalStratum = namedtuple('CriticalStratum',
                             'name classifier codim_stable dim_unstable '
                             'residue_parametrization')
CriticalStratum.__new__.__defaults__ = (None,)

CriticalStratum.__doc__ = """
A critical stratum of a flow. ``classifier(x)`` tells whether ``x`` flows
into the stratum forward (``in_stable``), backward (``in_unstable``) or
neither; ``residue_parametrization`` covers the closure of one unstable
fiber where that closure is compact.
"""

StratumRecord = namedtuple('StratumRecord',
                           'k kernel_plus minus_dims plus_dims')


class FlowSpec(object):
    """
    A flow ``(t, x) -> x_t`` on a model space with its Morse-Bott potential.

    ``differential(t, x, X)`` pushes a tangent vector forward and
    ``velocity(t, x)`` is the time derivative at ``x_t``; both fall back to
    central differences.
    """

    def __init__(self, space_id, flow, potential, strata=(),
                 differential=None, velocity=None, step=DEFAULT_STEP):
        self.space_id = space_id
        self.flow = flow
        self.potential = potential
        self.strata = list(strata)
        self.differential = differential
        self._velocity = velocity
        self.step = step

    def __call__(self, t, x):
        return self.flow(t, x)

    def pushforward(self, t, x, tangents):
        x = np.asarray(x)
        if self.differential is not None:
            return np.array([self.differential(t, x, X) for X in tangents])
        h = self.step
        return np.array([(np.asarray(self.flow(t, x + h * X))
                          - np.asarray(self.flow(t, x - h * X))) / (2 * h)
                         for X in tangents])

    def velocity(self, t, x):
        if self._velocity is not None:
            return self._velocity(t, x)
        derivative = central_difference(
                lambda s: self.flow(s[0], x), np.array([t]), self.step)
        return derivative[0]

    def __repr__(self):
        return "FlowSpec(%s, %d strata)" % (self.space_id, len(self.strata))


def _normal_eigen(U):
    T, Z = linalg.schur(np.asarray(U, dtype=complex), output='complex')
    return np.diag(T), Z


def _tanh_parts(t, mu):
    a, b = 1 + mu, 1 - mu
    p, q = np.exp(t), np.exp(-t)
    return p * a + q * b, p * a - q * b


def unitary_tanh_flow(t, U):
    """
    ``(tanh t + U)(1 + U tanh t)^-1`` evaluated eigenvalue-wise as
    ``(e^t (1 + mu) - e^-t (1 - mu)) / (e^t (1 + mu) + e^-t (1 - mu))``.
    """
    validate(U, 'unitary')
    mu, Z = _normal_eigen(U)
    denominator, numerator = _tanh_parts(t, mu)
    return (Z * (numerator / denominator)).dot(Z.conj().T)


def unitary_tanh_differential(t, U, X):
    mu, Z = _normal_eigen(U)
    denominator, _ = _tanh_parts(t, mu)
    Xt = Z.conj().T.dot(X).dot(Z)
    return Z.dot(4 * Xt / np.outer(denominator, denominator)).dot(Z.conj().T)


def unitary_tanh_velocity(t, U):
    Ut = unitary_tanh_flow(t, U)
    return np.eye(Ut.shape[0]) - Ut.dot(Ut)


def unitary_tanh_limit(U, direction=1, tol=STRATUM_TOL):
    """
    Limit of the tanh flow: ``-1`` on ``ker(1 + U)`` and ``+1`` elsewhere as
    ``t -> +oo``; ``+1`` on ``ker(1 - U)`` and ``-1`` elsewhere as
    ``t -> -oo``.
    """
    if direction not in (1, -1):
        raise errors.UsageError("direction must be +1 or -1")
    mu, Z = _normal_eigen(U)
    fixed = np.abs(mu + direction) <= tol
    limit = np.where(fixed, -direction, direction).astype(complex)
    return (Z * limit).dot(Z.conj().T)


def unitary_potential(A=None):
    """``U -> Re Tr(A U)``; ``A = 1`` gives the potential of the tanh flow."""
    def potential(U):
        U = np.asarray(U)
        if A is None:
            return float(np.trace(U).real)
        return float(np.trace(np.asarray(A).dot(U)).real)
    return potential


def arnold_frame(U):
    """The Lagrangian frame ``[(1 + U); -i(1 - U)]`` of a unitary."""
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    return np.vstack([np.eye(n) + U, -1j * (np.eye(n) - U)])


def arnold_unitary(frame):
    """Inverse of :func:`arnold_frame`: ``(X - iY)(X + iY)^-1``."""
    frame = np.asarray(frame)
    n = frame.shape[1]
    X, Y = frame[:n], frame[n:]
    return linalg.solve((X + 1j * Y).T, (X - 1j * Y).T).T


def _flow_frame(frame, values, t):
    """Apply ``diag(e^{values t}, e^{-values t})`` in orthonormal chunks."""
    n = len(values)
    scale = np.max(np.abs(values)) if n else 0.0
    steps = max(1, int(np.ceil(abs(t) * scale / FRAME_CHUNK)))
    dt = t / steps
    grow = np.concatenate([np.exp(values * dt), np.exp(-values * dt)])
    for _ in range(steps):
        frame, _ = linalg.qr(grow[:, None] * frame, mode='economic')
    return frame


def fA_flow(t, U, A):
    """
    Gradient flow of ``Re Tr(AU)``:
    ``(sinh(At) + cosh(At)U)(cosh(At) + sinh(At)U)^-1``.
    """
    validate(U, 'unitary')
    values, Q = linalg.eigh(validate(A, 'hermitian'))
    Ub = Q.conj().T.dot(U).dot(Q)
    frame = _flow_frame(arnold_frame(Ub), values, t)
    n = len(values)
    X, Y = frame[:n], frame[n:]
    # a singular X + iY means the frame left the Lagrangian chart of U(n)
    if linalg.svdvals(X + 1j * Y)[-1] < 1e-12:
        raise errors.FlowBreakdownError("singular denominator in the f_A "
                                        "flow", t_star=t)
    Ut = arnold_unitary(frame)
    return Q.dot(Ut).dot(Q.conj().T)


def fA_differential(t, U, X, A):
    values, Q = linalg.eigh(validate(A, 'hermitian'))
    C = (Q * np.cosh(values * t)).dot(Q.conj().T)
    S = (Q * np.sinh(values * t)).dot(Q.conj().T)
    M = C + S.dot(U)
    Ut = fA_flow(t, U, A)
    return linalg.solve(M.T, ((C - Ut.dot(S)).dot(X)).T).T


def fA_velocity(t, U, A):
    """``A - U_t A U_t``, twice the gradient of ``Re Tr(AU)`` at ``U_t``."""
    A = np.asarray(A)
    Ut = fA_flow(t, U, A)
    return A - Ut.dot(A).dot(Ut)


def fA_limit(U, A, direction=1, tol=1e-9):
    """
    The reflection ``U_t`` converges to as ``t -> direction * oo``, found by
    flowing until every eigenvalue gap of ``A`` has separated the frame.
    """
    values = linalg.eigvalsh(A)
    gaps = np.diff(values)
    gap = np.min(gaps) if gaps.size else 1.0
    if gap <= 0:
        raise errors.ValidationError("A must have distinct eigenvalues")
    T = direction * (-np.log(tol) / gap + 5.0)
    Ut = fA_flow(T, U, A)
    mu, Z = _normal_eigen(Ut)
    signs = np.where(mu.real < 0, -1.0, 1.0)
    return (Z * signs).dot(Z.conj().T)


def critical_reflection(indices, basis=None, n=None):
    """``-1`` on the span of the (1-based) basis vectors ``indices``."""
    if basis is None:
        basis = np.eye(n)
    basis = np.asarray(basis)
    n = basis.shape[0]
    signs = np.ones(n)
    for i in indices:
        signs[i - 1] = -1.0
    return (basis * signs).dot(basis.conj().T)


def schubert_codimension(indices):
    """
    >>> schubert_codimension((1, 3))
    6
    """
    return sum(2 * i - 1 for i in indices)


def unitary_strata(n, A=None):
    """
    Critical strata of the flow of ``Re Tr(AU)`` on U(n): one reflection per
    subset of the eigenbasis of ``A`` (eigenvalues increasing).
    """
    if A is None:
        A = np.diag(np.arange(1.0, n + 1))
    _, basis = linalg.eigh(A)
    strata = []
    for k in range(n + 1):
        for I in combinations(range(1, n + 1), k):
            reflection = critical_reflection(I, basis)
            strata.append(CriticalStratum(
                    'U_{%s}' % ','.join(map(str, I)),
                    _reflection_classifier(reflection, A),
                    schubert_codimension(I), schubert_codimension(I)))
    return strata


def _reflection_classifier(reflection, A):
    def classify(U):
        if np.allclose(fA_limit(U, A, 1), reflection, atol=1e-6):
            return 'in_stable'
        if np.allclose(fA_limit(U, A, -1), reflection, atol=1e-6):
            return 'in_unstable'
        return 'neither'
    return classify


def classify_unitary_stratum(U, tol=STRATUM_TOL, basis=None):
    """
    Spectral stratum of ``U``: ``k = dim ker(1 + U)``, ``dim ker(1 - U)`` and
    the incidence dimensions of both kernels with the flag
    ``W_m = span(e_{m+1}, ..., e_n)``, ``m = 0..n``.

    >>> classify_unitary_stratum(-np.eye(3)).k
    3
    """
    U = validate(U, 'unitary')
    n = U.shape[0]
    mu, Z = _normal_eigen(U)
    for target in (-1.0, 1.0):
        distance = np.abs(mu - target)
        if np.any((distance > tol) & (distance < 10 * tol)):
            warnings.warn("eigenvalue within %g of %+d" % (10 * tol, target),
                          errors.AmbiguousStratumWarning)
    minus = Z[:, np.abs(mu + 1) <= tol]
    plus = Z[:, np.abs(mu - 1) <= tol]
    if basis is None:
        basis = np.eye(n)
    minus_dims = [_intersection_dim(minus, basis[:, m:], tol)
                  for m in range(n + 1)]
    plus_dims = [_intersection_dim(plus, basis[:, m:], tol)
                 for m in range(n + 1)]
    return StratumRecord(minus.shape[1], plus.shape[1], minus_dims, plus_dims)


def _intersection_dim(first, second, tol):
    if first.shape[1] == 0 or second.shape[1] == 0:
        return 0
    angles = linalg.subspace_angles(first, second)
    return int(np.sum(angles <= max(tol, 1e-10) * 10))


def grassmann_linear_flow(t, frame, p):
    """
    ``span[X; Y] -> span[e^t X; e^-t Y]`` on the Grassmannian of
    ``E+ (+) E-`` with ``dim E+ = p``, returned as an orthonormal frame.
    In the graph chart ``A = Y X^-1`` this is ``A -> e^{-2t} A``.
    """
    frame = np.asarray(frame, dtype=complex)
    if np.linalg.matrix_rank(frame) < frame.shape[1]:
        raise errors.ValidationError("frame does not have full rank")
    scale = np.concatenate([np.full(p, np.exp(t)),
                            np.full(frame.shape[0] - p, np.exp(-t))])
    out, _ = linalg.qr(scale[:, None] * frame, mode='economic')
    return out


def grassmann_potential(p):
    """``L -> Re Tr(eps P_L)`` with ``eps = +1`` on E+ and ``-1`` on E-."""
    def potential(frame):
        frame = np.asarray(frame)
        Q, _ = linalg.qr(frame, mode='economic')
        eps = np.concatenate([np.ones(p), -np.ones(frame.shape[0] - p)])
        return float(np.real(np.sum(eps[:, None] * np.abs(Q) ** 2)))
    return potential


def graph_chart_flow(t, v):
    """The linear flow in the chart ``[v : 1]`` of ``P(E (+) C)``."""
    return np.exp(2 * t) * np.asarray(v)


def kernel_image_limit(Atilde, tol=1e-10):
    """
    Orthonormal frame of ``Im A (+) Ker A`` inside ``E+ (+) E-``, the
    ``t -> +oo`` limit of the switched graph ``{(A y, y)}``.
    """
    Atilde = np.asarray(Atilde, dtype=complex)
    p, q = Atilde.shape
    Uq, s, Vh = linalg.svd(Atilde)
    r = int(np.sum(s > tol * max(s[0] if s.size else 0.0, 1.0)))
    image = np.vstack([Uq[:, :r], np.zeros((q, r))])
    kernel = np.vstack([np.zeros((p, q - r)), Vh[r:].conj().T])
    return np.hstack([image, kernel])


def chordal_distance(first, second):
    angles = linalg.subspace_angles(np.asarray(first), np.asarray(second))
    return float(np.linalg.norm(np.sin(angles)))


def sphere_height_flow(t, v):
    """On the stereographic chart centered at ``[0]``: ``v -> e^t v``."""
    return np.exp(t) * np.asarray(v, dtype=float)


def sphere_height_potential(v):
    """Minus the height ``(1 - |v|^2)/(1 + |v|^2)`` of the chart point."""
    v = np.asarray(v, dtype=float)
    r2 = v.dot(v)
    return -(1 - r2) / (1 + r2)


def radial_flow(t, v):
    return np.exp(t) * np.asarray(v)


def local_model_flow(t, x, y, z):
    """
    ``(x, y, z) -> (e^t x, e^-t y, z)``, the flow of
    ``f = (|x|^2 - |y|^2) / 2``.
    """
    return (np.exp(t) * np.asarray(x, dtype=float),
            np.exp(-t) * np.asarray(y, dtype=float),
            np.asarray(z, dtype=float))


def tanh_flow_spec(n):
    strata = []
    for k in range(n + 1):
        strata.append(CriticalStratum(
                'S(%d)' % k, _tanh_classifier(k), k * k, k * k))
    return FlowSpec('U%d' % n, unitary_tanh_flow, unitary_potential(),
                    strata, differential=unitary_tanh_differential,
                    velocity=unitary_tanh_velocity)


def _tanh_classifier(k):
    def classify(U):
        record = classify_unitary_stratum(U)
        if record.k == k:
            return 'in_stable'
        if record.kernel_plus == U.shape[0] - k:
            return 'in_unstable'
        return 'neither'
    return classify


def fA_flow_spec(A):
    A = np.asarray(A)
    return FlowSpec('U%d' % A.shape[0],
                    lambda t, U: fA_flow(t, U, A), unitary_potential(A),
                    unitary_strata(A.shape[0], A),
                    differential=lambda t, U, X: fA_differential(t, U, X, A),
                    velocity=lambda t, U: fA_velocity(t, U, A))


def _fiber_classifier(base_dim, at_zero, tol=STRATUM_TOL):
    """Classify ``(b, v)`` against the zero section or the section at
    infinity of a fiberwise expanding flow."""
    def classify(x):
        on_zero = max_abs(np.asarray(x)[base_dim:]) <= tol
        if at_zero:
            return 'in_stable' if on_zero else 'in_unstable'
        return 'neither' if on_zero else 'in_stable'
    return classify


def graph_chart_flow_spec(base_dim, rank):
    """
    Fiberwise linear flow on the chart ``(b, v)`` of ``P(E (+) C)``, real
    coordinates with the fiber interleaved after the base.
    """
    def scale(t):
        return np.concatenate([np.ones(base_dim),
                               np.full(2 * rank, np.exp(2 * t))])

    def flow(t, x):
        return scale(t) * np.asarray(x, dtype=float)

    def potential(x):
        v = np.asarray(x[base_dim:], dtype=float)
        r2 = v.dot(v)
        return (r2 - 1) / (r2 + 1)

    def velocity(t, x):
        out = flow(t, x)
        out[:base_dim] = 0.0
        return 2 * out

    return FlowSpec('P(E+C)', flow, potential,
                    [CriticalStratum('zero section',
                                     _fiber_classifier(base_dim, True),
                                     2 * rank, 2 * rank,
                                     projective_polar_chart(rank)),
                     CriticalStratum('infinity',
                                     _fiber_classifier(base_dim, False),
                                     0, 0)],
                    differential=lambda t, x, X: scale(t) * np.asarray(X),
                    velocity=velocity)


def sphere_flow_spec(base_dim, n):
    """Fiberwise height flow on the chart ``(b, v)`` of ``S(R (+) E)``."""
    def scale(t):
        return np.concatenate([np.ones(base_dim), np.full(n, np.exp(t))])

    def flow(t, x):
        return scale(t) * np.asarray(x, dtype=float)

    def velocity(t, x):
        out = flow(t, x)
        out[:base_dim] = 0.0
        return out

    # the stereographic chart covers the closed unstable fiber for n = 2 only
    fiber = sphere_polar_chart() if n == 2 else None
    return FlowSpec('S(R+E)', flow,
                    lambda x: sphere_height_potential(x[base_dim:]),
                    [CriticalStratum('[0]', _fiber_classifier(base_dim, True),
                                     n, n, fiber),
                     CriticalStratum('[oo]',
                                     _fiber_classifier(base_dim, False),
                                     0, 0)],
                    differential=lambda t, x, X: scale(t) * np.asarray(X),
                    velocity=velocity)


def radial_flow_spec(n):
    return FlowSpec('R%d' % n, radial_flow,
                    lambda v: 0.5 * np.dot(v, v),
                    [CriticalStratum('0', _fiber_classifier(0, True), n, n)],
                    differential=lambda t, v, X: np.exp(t) * np.asarray(X),
                    velocity=lambda t, v: radial_flow(t, v))
