"""
Characteristic forms
"""
import numpy as np
from nose.tools import raises

from transgression_lab import errors
from transgression_lab.charforms import (FormField, chern_character,
                                         mathai_quillen_field,
                                         mathai_quillen_form, maslov_form,
                                         odd_chern_constant, odd_chern_form,
                                         pfaffian_form,
                                         superconnection_curvature,
                                         superconnection_residue,
                                         tilde_maslov_form, top_chern_form,
                                         unitary_odd_chern_form)
from transgression_lab.exterior import AlternatingForm, FormMatrix
from transgression_lab.integrate import Scheme, integrate_full_chart
from transgression_lab.spaces import (BundleWithConnection, bott_samelson_map,
                                      circle_chart, fubini_study_form,
                                      tautological_bundle)

J = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _sphere_tangent_bundle():
    # orthonormal frame (e_theta, e_phi) on the spherical chart
    def connection(x):
        return FormMatrix(2, 2, {(1,): -np.cos(x[0]) * J})

    def curvature(x):
        return FormMatrix(2, 2, {(0, 1): np.sin(x[0]) * J})

    return BundleWithConnection(2, 2, connection, field='real',
                                curvature=curvature, space_id='S2')


def test_chart_fields_pull_back():
    area = FormField.on_chart(lambda x: AlternatingForm.basis(2, 0, 1) * x[0],
                              2, 2)
    assert area.at([3.0, 0.0]).top == 3
    assert area.evaluate([3.0, 0.0], np.diag([2.0, 5.0])).top == 30
    line = area.evaluate([1.0, 0.0], np.array([[1.0, 1.0]]))
    assert not line.coeffs
    doubled = area.scaled(2.0).wedge(FormField.on_chart(
            lambda x: AlternatingForm.constant(2, 1.0), 2, 0))
    assert doubled.degree == 2
    assert doubled.at([1.0, 1.0]).top == 2


@raises(errors.DegreeError)
def test_declared_degrees_are_checked():
    field = FormField.on_chart(lambda x: AlternatingForm.basis(2, 0), 2, 2)
    field.check_degree(np.zeros(2), np.eye(2))


def test_first_chern_form_of_the_tautological_line():
    c1 = top_chern_form(tautological_bundle(1))
    assert c1.degree == 2 and c1.closed
    for x in ([0.0, 0.0], [0.3, -1.2], [2.0, 0.5]):
        assert c1.at(x).allclose(fubini_study_form(np.array(x)), atol=1e-12)


def test_pfaffian_of_the_sphere():
    bundle = _sphere_tangent_bundle()
    form = pfaffian_form(bundle, np.array([0.7, 1.0]))
    assert abs(form.top - np.sin(0.7) / (2 * np.pi)) < 1e-14
    bundle.orientation = -1
    assert abs(pfaffian_form(bundle, np.array([0.7, 1.0])).top
               + np.sin(0.7) / (2 * np.pi)) < 1e-14


@raises(errors.DimensionError)
def test_pfaffian_needs_even_rank():
    pfaffian_form(BundleWithConnection.trivial(3, 2, field='real'),
                  np.zeros(2))


def test_odd_chern_forms_on_the_circle():
    circle = circle_chart()
    form = odd_chern_form(1, circle).at([0.4])
    assert abs(form.coefficient(0) - 1 / (2 * np.pi)) < 1e-14
    maslov = tilde_maslov_form().evaluate(circle([0.4]),
                                          circle.tangents([0.4]))
    assert maslov.allclose(form)
    assert abs(odd_chern_constant(2) - 1 / (24 * np.pi ** 2)) < 1e-15


def test_odd_chern_forms_are_conjugation_invariant():
    rng = np.random.default_rng(2)
    phi = bott_samelson_map(2)
    u = np.array([0.8, 0.4, 2.0])
    U, tangents = phi(u), phi.tangents(u)
    V = np.linalg.qr(rng.standard_normal((2, 2))
                     + 1j * rng.standard_normal((2, 2)))[0]
    field = unitary_odd_chern_form(2)
    moved = field.evaluate(V.dot(U).dot(V.conj().T),
                           [V.dot(T).dot(V.conj().T) for T in tangents])
    assert moved.allclose(field.evaluate(U, tangents), atol=1e-12)
    assert field.evaluate(U, tangents).degree == 3


def test_maslov_form_of_a_phase():
    bundle = BundleWithConnection.trivial(1, 1)
    section = lambda x: np.array([[np.exp(3j * x[0])]])
    form = maslov_form(section, bundle).at([0.2])
    assert abs(form.coefficient(0) - 3 / (2 * np.pi)) < 1e-8


def test_superconnection_curvature_layout():
    bundle = BundleWithConnection.trivial(1, 1)
    A = lambda s: np.array([[s[0]]])
    F = superconnection_curvature(bundle, A, 2.0, 'odd', np.array([0.5]))
    assert F.split == (1, 1)
    assert np.allclose(F.degree0, -np.eye(2))
    assert np.allclose(F.blocks[(0,)], [[0, 2], [2, 0]])


@raises(errors.ValidationError)
def test_even_superconnection_needs_an_odd_endomorphism():
    bundle = BundleWithConnection.trivial(2, 1, split=(1, 1))
    superconnection_curvature(bundle, lambda s: np.diag([s[0], 1.0]), 1.0,
                              'even', np.zeros(1))


@raises(errors.UsageError)
def test_chern_character_needs_a_grading():
    chern_character(FormMatrix.identity(2, 1), 'even')


def test_odd_kernel_residue():
    for t in (1.0, 2.0):
        assert abs(superconnection_residue('odd', t) - 1) < 1e-8


def test_even_kernel_residue():
    value = superconnection_residue('even', 1.0, Scheme.gauss(16))
    assert abs(value - 1) < 1e-6


def test_mathai_quillen_form_has_unit_mass():
    bundle = BundleWithConnection.trivial(2, 0, field='real')
    for t in (0.5, 2.0):
        field = mathai_quillen_field(bundle, t)
        value, tail = integrate_full_chart(field.at, 2, Scheme.gauss(16),
                                           radius=6.0 / t)
        assert abs(value - 1) < 1e-8, (t, value)


def test_mathai_quillen_at_zero_is_the_pfaffian():
    bundle = _sphere_tangent_bundle()
    b = np.array([1.1, 0.3])
    x = np.array([0.4, -0.9])
    form = mathai_quillen_form(bundle, 0.0, b, x)
    assert form.dim == 4
    assert form.allclose(pfaffian_form(bundle, b).shifted(0, 4), atol=1e-14)


def test_mathai_quillen_is_a_gaussian_in_the_fiber():
    bundle = _sphere_tangent_bundle()
    t = 1.5
    b = np.array([1.1, 0.3])
    x = np.array([0.4, -0.9])
    form = mathai_quillen_form(bundle, t, b, x)
    # fiber top part t^2 exp(-t^2 |x|^2 / 2) / 2pi
    expected = t * t * np.exp(-t * t * x.dot(x) / 2) / (2 * np.pi)
    assert abs(form.coefficient(2, 3) - expected) < 1e-14


@raises(errors.ValidationError)
def test_mathai_quillen_needs_nonnegative_time():
    mathai_quillen_form(BundleWithConnection.trivial(2, 0, field='real'),
                        -1.0, [], np.zeros(2))
