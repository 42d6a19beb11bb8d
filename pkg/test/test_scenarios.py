"""
The scenario catalog and its acceptance runs
"""
import numpy as np
from nose.tools import raises

from transgression_lab import errors
from transgression_lab.algebra import pfaffian
from transgression_lab.config import ANCHORS, SCENARIO_NAMES, default_config
from transgression_lab.scenarios import (Book, list_scenarios, run_scenario,
                                         scenario, versions)


def test_every_scenario_is_registered():
    listed = list_scenarios()
    assert [name for name, _, _ in listed] == list(SCENARIO_NAMES)
    assert all(anchor in ANCHORS and summary for _, anchor, summary in listed)
    assert listed[0][:2] == ('top_chern', '§6')
    assert dict((name, anchor) for name, anchor, _ in listed)[
        'nicolaescu_residue'] == 'Appendix B'


def test_quick_blowup_models():
    config = default_config('blowup_models', quick=True)
    report = run_scenario(config)
    assert report.scenario == 'blowup_models'
    assert report.anchor == 'Appendix A'
    assert all(check.anchor == 'Appendix A' for check in report.checks)
    assert len(report.checks) == 4
    assert all(check.passed for check in report.checks), report.checks
    assert report.config['dims'] == {'samples': 500}
    assert set(report.versions) == set(['transgression_lab', 'numpy',
                                         'scipy', 'rdflib'])
    again = run_scenario(config)
    assert [c.computed for c in again.checks] == \
        [c.computed for c in report.checks]


def _quick(name):
    report = run_scenario(default_config(name, quick=True))
    assert all(check.anchor in ANCHORS for check in report.checks)
    return report, dict((check.name, check) for check in report.checks)


def test_quick_odd_chern_residues():
    report, checks = _quick('nicolaescu_residue')
    assert report.anchor == 'Appendix B'
    assert len(report.checks) == 12
    for n in (2, 3):
        ratio = checks['weighted supertrace ratio, n=%d' % n]
        assert ratio.passed, ratio
        assert abs(ratio.computed - (-1) ** (n - 1) * (2 * n - 1)
                   * (2 * np.pi / 1j) ** (n - 1)) < 1e-9
        assert checks['wedge power identity, n=%d' % n].passed
    for n in (1, 2, 3):
        assert checks['S^1 residue integral, n=%d' % n].passed
    assert checks['degree of c_3/2 on SU(2)'].anchor == '§8'
    assert all(check.passed for check in report.checks), report.checks


def test_quick_unitary_flows():
    report, checks = _quick('unitary_flows')
    assert report.anchor == '§8'
    assert len(report.checks) == 38
    assert checks['Grassmann flow limit is Im A + Ker A'].anchor == '§3'
    assert checks['stratum of U'].computed == 1
    assert all(check.passed for check in report.checks), report.checks


def test_versions():
    assert versions()['numpy'] == np.__version__


def test_check_modes():
    book = Book(default_config('blowup_models'))
    a = '§2'
    assert book.check('count', a, lambda: 3.0, 3, 0, 'integer').computed == 3
    assert book.check('rel', a, lambda: 101.0, 100.0, 0.02, 'rel').passed
    assert not book.check('abs', a, lambda: 101.0, 100.0, 0.02).passed
    assert book.check('min', a, lambda: 2.0, 1.0, 0, 'min').passed
    assert not book.check('max', a, lambda: 0.1, 0.0, 0.01, 'max').passed
    assert len(book.records) == 5
    assert not book.passed


def test_failing_computations_are_recorded():
    book = Book(default_config('blowup_models'))
    record = book.check('odd', '§7', lambda: pfaffian(np.zeros((3, 3))), 0.0,
                        1e-12)
    assert not record.passed
    assert record.computed != record.computed


@raises(errors.IntegrationError)
def test_breakdowns_abort_the_run():
    book = Book(default_config('blowup_models'))

    def broken():
        raise errors.IntegrationError("non-finite integrand")
    book.check('broken', '§2', broken, 0.0, 1.0)


@raises(errors.UsageError)
def test_check_modes_are_known():
    Book(default_config('blowup_models')).check('x', '§2', lambda: 0, 0, 0,
                                                'close')


@raises(errors.UsageError)
def test_checks_cite_known_anchors():
    Book(default_config('blowup_models')).check('x', 'local models',
                                                lambda: 0, 0, 0)


@raises(errors.UsageError)
def test_scenarios_cite_known_anchors():
    scenario('top_chern', 'top Chern class', 'x')


@raises(errors.UsageError)
def test_scenarios_have_catalog_names():
    scenario('hodge_theory', '§6', 'y')


def _accept(name):
    report = run_scenario(default_config(name))
    failed = [check.name for check in report.checks if not check.passed]
    assert report.checks and not failed, (name, failed)


def test_acceptance():
    for name in SCENARIO_NAMES:
        yield _accept, name


test_acceptance.slow = True
