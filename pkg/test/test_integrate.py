"""
Quadrature, oriented integrals, fiber integration and flow tubes
"""
import numpy as np
from nose.tools import raises

from transgression_lab import errors
from transgression_lab.charforms import FormField, top_chern_form
from transgression_lab.currents import function_form
from transgression_lab.exterior import AlternatingForm
from transgression_lab.flows import radial_flow_spec
from transgression_lab.integrate import (Scheme, boundary_check,
                                         exterior_derivative, fiber_integrate,
                                         flow_tube_volume, integrate_form,
                                         integrate_full_chart,
                                         integrate_function,
                                         s1_residue_expected,
                                         s1_residue_integral,
                                         transgression_pairing,
                                         tube_volume_increments)
from transgression_lab.spaces import (Parametrization, fubini_study_form,
                                      projective_polar_chart,
                                      tautological_bundle)


def _identity_box(lower, upper):
    dim = len(lower)
    return Parametrization(lower, upper, lambda u: u,
                           jacobian=lambda u: np.eye(dim))


def _unit_circle():
    return Parametrization([0.0], [2 * np.pi],
                           lambda u: np.array([np.cos(u[0]), np.sin(u[0])]),
                           jacobian=lambda u: np.array([[-np.sin(u[0]),
                                                         np.cos(u[0])]]))


def test_gauss_is_exact_on_polynomials():
    f = lambda u: u[0] ** 5 * u[1] ** 2 - 3 * u[1]
    value, err = integrate_function(f, [0.0, -1.0], [2.0, 1.0],
                                    Scheme.gauss(3))
    assert abs(value - (64 / 6.0) * (2 / 3.0)) < 1e-12
    assert err == 0.0


def test_vector_valued_integrands():
    f = lambda u: np.array([1.0, u[0], 1j * u[0] ** 2])
    value, _ = integrate_function(f, [0.0], [1.0], Scheme.gauss(4))
    assert np.allclose(value, [1.0, 0.5, 1j / 3])


def test_focus_points_refine_the_cells():
    kink = lambda u: abs(u[0] - 0.3)
    exact = (0.3 ** 2 + 0.7 ** 2) / 2
    plain, _ = integrate_function(kink, [0.0], [1.0], Scheme.gauss(4))
    focused, _ = integrate_function(
            kink, [0.0], [1.0], Scheme.gauss(4, focus=[(0.3,)], depth=12))
    assert abs(plain - exact) > 1e-4
    assert abs(focused - exact) < 1e-7


def test_focus_lines_split_one_axis():
    ridge = lambda u: abs(u[1] - 0.5) * (1 + u[0])
    scheme = Scheme.gauss(4, focus=[(np.nan, 0.5)], depth=3)
    value, _ = integrate_function(ridge, [0.0, 0.0], [1.0, 1.0], scheme)
    assert abs(value - 0.25 * 1.5) < 1e-13


def test_richardson_error_estimate():
    f = lambda u: np.exp(u[0])
    value, err = integrate_function(f, [0.0], [1.0],
                                    Scheme.gauss(6, error_mode='richardson'))
    assert abs(value - (np.e - 1)) < 1e-12
    assert 0 < err < 1e-4


def test_monte_carlo_is_seeded():
    f = lambda u: u[0] * u[1]
    scheme = Scheme.monte_carlo(20000, seed=3)
    value, err = integrate_function(f, [0.0, 0.0], [1.0, 1.0], scheme)
    again, _ = integrate_function(f, [0.0, 0.0], [1.0, 1.0], scheme)
    assert value == again
    assert 0 < err < 0.01
    assert abs(value - 0.25) < 5 * err
    other, _ = integrate_function(f, [0.0, 0.0], [1.0, 1.0],
                                  Scheme.monte_carlo(20000, seed=4))
    assert other != value


@raises(errors.ValidationError)
def test_gauss_needs_two_points():
    Scheme.gauss(1)


@raises(errors.ValidationError)
def test_monte_carlo_needs_samples():
    Scheme.monte_carlo(50)


@raises(errors.IntegrationError)
def test_nan_integrands_are_reported():
    integrate_function(lambda u: np.nan, [0.0], [1.0], Scheme.gauss(2))


def test_fubini_study_volume():
    chart = projective_polar_chart(1)
    area = FormField.on_chart(fubini_study_form, 2, 2)
    value, _ = integrate_form(chart, area, Scheme.gauss(12))
    assert abs(value - 1) < 1e-12
    value, _ = integrate_form(chart.flipped(), area, Scheme.gauss(12))
    assert abs(value + 1) < 1e-12


def test_first_chern_number_of_the_tautological_line():
    chart = projective_polar_chart(1)
    c1 = top_chern_form(tautological_bundle(1))
    value, _ = integrate_form(chart, c1, Scheme.gauss(12))
    assert abs(value - 1) < 1e-12


@raises(errors.DegreeError)
def test_integrated_degree_must_match():
    line = FormField.on_chart(lambda x: AlternatingForm.basis(2, 0), 2, 1)
    integrate_form(_identity_box([0.0, 0.0], [1.0, 1.0]), line,
                   Scheme.gauss(2))


def test_full_chart_gaussian():
    gaussian = lambda u: AlternatingForm(2, {(0, 1): np.exp(-u.dot(u))})
    value, tail = integrate_full_chart(gaussian, 2, Scheme.gauss(16))
    assert abs(value - np.pi) < 1e-8
    assert tail < 1e-8


def test_exterior_derivative():
    form = lambda u: AlternatingForm(2, {(1,): u[0] ** 2, (0,): u[1]})
    d = exterior_derivative(form, np.array([1.5, -2.0]))
    # d(x^2 dy + y dx) = (2x - 1) dx ^ dy
    assert abs(d.coefficient(0, 1) - 2.0) < 1e-8
    assert d.degree == 2


def test_s1_residues():
    for n in (1, 2, 3, 4):
        expected = s1_residue_expected(n)
        assert abs(s1_residue_integral(n) - expected) < 1e-10 * abs(expected)
    assert s1_residue_expected(1) == 2j * np.pi
    assert s1_residue_expected(3) == 12j * np.pi


def test_fiber_integration():
    total = _identity_box([0.0, 0.0], [1.0, 1.0])
    form = FormField.on_chart(
            lambda x: AlternatingForm(2, {(0, 1): x[0] + x[1]}), 2, 2)
    pushed = fiber_integrate(total, form, 1, Scheme.gauss(4))
    assert pushed.degree == 1
    assert abs(pushed.at([0.3]).coefficient(0) - 0.8) < 1e-14


def _interval_data():
    flow = radial_flow_spec(1)
    section = _identity_box([0.5], [2.0])
    omega = FormField.on_chart(lambda x: AlternatingForm(1, {(0,): x[0]}),
                               1, 1, closed=True)
    # eta vanishes on the ends of the interval
    eta = function_form(lambda u: (u[0] - 0.5) * (2.0 - u[0]), 1)
    return flow, section, omega, eta


def test_boundary_identity_on_an_interval():
    flow, section, omega, eta = _interval_data()
    for t in (0.5, 1.0):
        check = boundary_check(flow, section, omega, eta, t, Scheme.gauss(8))
        assert check.defect < 1e-9
        # int u (u - 1/2)(2 - u) du over [1/2, 2] is 45/64
        assert abs(check.rhs - (np.exp(2 * t) - 1) * 45 / 64.) < 1e-10


def test_transgression_pairing_of_a_zero_interval():
    flow, section, omega, eta = _interval_data()
    deta = FormField.on_chart(lambda u: AlternatingForm(1, {(0,): 1.0}), 1, 1)
    assert transgression_pairing(flow, section, omega, deta, 0,
                                 Scheme.gauss(4)) == 0


@raises(errors.DegreeError)
def test_transgression_pairing_degrees():
    flow, section, omega, eta = _interval_data()
    transgression_pairing(flow, section, omega, eta, 1.0, Scheme.gauss(4))


def test_radial_tube_volumes():
    flow = radial_flow_spec(2)
    circle = _unit_circle()
    scheme = Scheme.gauss(16)
    volume = flow_tube_volume(flow, circle, 1.0, scheme)
    assert abs(volume - np.pi * (np.e ** 2 - 1)) < 1e-9
    increments = tube_volume_increments(flow, circle, [0.0, 1.0, 2.0],
                                        scheme)
    assert abs(increments[1] - np.pi * (np.e ** 4 - np.e ** 2)) < 1e-8
    assert flow_tube_volume(flow, circle, -1.0, scheme) == 0.0


def test_strong_tube_of_a_point():
    flow = radial_flow_spec(1)
    point = Parametrization(np.zeros(0), np.zeros(0),
                            lambda u: np.array([1.0]))
    weak = flow_tube_volume(flow, point, 2.0, Scheme.gauss(12))
    strong = flow_tube_volume(flow, point, 2.0, Scheme.gauss(12),
                              strong=True)
    assert abs(weak - (np.exp(2) - 1)) < 1e-10
    assert abs(strong - weak) < 1e-10
