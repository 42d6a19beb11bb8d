"""
Scenario configuration
"""
import io
import os
import tempfile

from nose.tools import raises

from transgression_lab import errors
from transgression_lab.config import (SCENARIO_NAMES, default_config,
                                      load_config, merge)


def test_defaults_exist_for_every_scenario():
    for name in SCENARIO_NAMES:
        config = default_config(name)
        assert config.scenario == name
        assert config.seed == 0 and config.jobs == 1
        assert config.output_path is None and not config.quick


def test_quick_sizes_override_single_fields():
    config = default_config('top_chern', quick=True)
    assert config.quick
    assert config.dims['n'] == 1
    assert config.dims['base_dim'] == 2
    assert config.t_schedule == [2.0, 3.0]
    assert default_config('top_chern').dims['n'] == 2


def test_loading_documents():
    config = load_config('{"scenario": "gauss_bonnet", '
                         '"scheme": {"points": 12}}')
    assert config.scheme == {'points': 12}
    assert config.tolerances == default_config('gauss_bonnet').tolerances
    config = load_config({'seed': 5}, scenario='maslov_spark')
    assert (config.scenario, config.seed) == ('maslov_spark', 5)
    config = load_config({'scenario': 'blowup_models', 'quick': True})
    assert config.dims['samples'] == 500


def test_loading_from_a_path():
    fd, path = tempfile.mkstemp(suffix='.json')
    try:
        with io.open(fd, 'w', encoding='utf-8') as stream:
            stream.write(u'{"scenario": "unitary_flows", "jobs": 2}')
        config = load_config(path)
        assert config.jobs == 2
        assert config.t_schedule[0] == -3.0
    finally:
        os.remove(path)


def test_merge_ignores_missing_overrides():
    config = merge(default_config('superconnection'), seed=None, jobs=4)
    assert config.jobs == 4 and config.seed == 0
    assert merge(config, seed=2 ** 64 - 1).seed == 2 ** 64 - 1


def _config_error_path(document):
    try:
        load_config(dict(document, scenario='top_chern'))
    except errors.ConfigError as e:
        return e.path
    return None


def test_validation_names_the_field():
    cases = [
        ({'dims': {'n': 9}}, 'dims.n'),
        ({'dims': {'n': 2.0}}, 'dims.n'),
        ({'dims': {'grid': 0}}, 'dims.grid'),
        ({'scheme': {'points': 1}}, 'scheme.points'),
        ({'scheme': {'samples': 50}}, 'scheme.samples'),
        ({'scheme': {'depth': -1}}, 'scheme.depth'),
        ({'scheme': {'order': 3}}, 'scheme.order'),
        ({'tolerances': {'weak': 0}}, 'tolerances.weak'),
        ({'tolerances': {'weak': True}}, 'tolerances.weak'),
        ({'t_schedule': [1.0, 1.0]}, 't_schedule[1]'),
        ({'t_schedule': [1.0, 'x']}, 't_schedule[1]'),
        ({'t_schedule': []}, 't_schedule'),
        ({'seed': -1}, 'seed'),
        ({'seed': 2 ** 64}, 'seed'),
        ({'jobs': 0}, 'jobs'),
        ({'colour': 'red'}, 'colour'),
    ]
    for document, path in cases:
        assert _config_error_path(document) == path, (document, path)


@raises(errors.ConfigError)
def test_unknown_scenario():
    default_config('hodge_theory')


@raises(errors.ConfigError)
def test_scenario_is_required():
    load_config({'seed': 1})


@raises(errors.ConfigError)
def test_merge_rejects_unknown_fields():
    merge(default_config('top_chern'), colour='red')


@raises(errors.ConfigError)
def test_configs_are_objects():
    load_config('[1, 2]')
