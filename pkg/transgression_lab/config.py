# -*- coding: utf-8 -*-
"""
Scenario configuration: a JSON document whose fields override the
per-scenario defaults.

    >>> config = load_config({'scenario': 'blowup_models', 'seed': 3})
    >>> config.seed, config.dims['samples']
    (3, 10000)
    >>> load_config({'scenario': 'top_chern', 'dims': {'n': 9}})
    Traceback (most recent call last):
    ...
    transgression_lab.errors.ConfigError: dims.n: 9 outside [1, 4]

"""
from collections import namedtuple
import copy

from . import errors
from .util import source_to_json

__all__ = ['ScenarioConfig', 'SCENARIO_NAMES', 'ANCHORS', 'load_config',
           'default_config', 'merge', 'validate_config']


SCENARIO_NAMES = ('top_chern', 'gauss_bonnet', 'maslov_spark',
                  'nicolaescu_residue', 'unitary_flows', 'superconnection',
                  'mathai_quillen', 'blowup_models', 'transgression_stokes',
                  'atomicity_volumes')

# what scenarios and checks may cite as their anchor
ANCHORS = ('§2', '§3', '§4', '§5', '§6', '§7', '§8', '§9', '§10',
           'Appendix A', 'Appendix B')

FIELDS = ('scenario', 'dims', 'seed', 'scheme', 'tolerances', 't_schedule',
          'output_path', 'table_path', 'jobs', 'quick')

ScenarioConfig = namedtuple('ScenarioConfig', FIELDS)

DIM_BOUNDS = {'n': (1, 4), 'k': (1, 4), 'base_dim': (0, 3)}
SCHEME_KEYS = ('points', 'samples', 'depth')
SEED_LIMIT = 2 ** 64


DEFAULTS = {
    'top_chern': {
        'dims': {'n': 2, 'base_dim': 2, 'grid': 12, 'probes': 5},
        'scheme': {'points': 8, 'samples': 100000, 'depth': 4},
        'tolerances': {'curvature': 1e-5, 'residue': 1e-5,
                       'residue_mc': 1e-2, 'integral': 5e-2,
                       'weak': 5e-2},
        't_schedule': [2.0, 4.0, 6.0],
    },
    'gauss_bonnet': {
        'dims': {'n': 2, 'base_dim': 2, 'grid': 8},
        'scheme': {'points': 24},
        'tolerances': {'sphere': 1e-4, 'pfaffian': 1e-3},
        't_schedule': [1.0],
    },
    'maslov_spark': {
        'dims': {'n': 2, 'loops': 5},
        'scheme': {'points': 64, 'depth': 4},
        'tolerances': {'winding': 1e-6, 'weak': 5e-2},
        't_schedule': [2.0, 4.0, 6.0],
    },
    'nicolaescu_residue': {
        'dims': {'k': 3, 'n': 5, 'lemma_n': 3},
        'scheme': {'points': 12, 'samples': 40000},
        'tolerances': {'residue_1': 1e-6, 'residue_2': 1e-3,
                       'residue_mc': 3e-2, 's1': 1e-8, 'algebra': 1e-12,
                       'vanishing': 1e-10, 'degree': 1e-6},
        't_schedule': [1.0],
    },
    'unitary_flows': {
        'dims': {'n': 3, 'samples': 5},
        'scheme': {},
        'tolerances': {'semigroup': 1e-9, 'unitarity': 1e-9,
                       'velocity': 1e-6, 'limit': 1e-6, 'fixed': 1e-12},
        't_schedule': [-3.0, -1.0, 0.5, 2.0, 5.0],
    },
    'superconnection': {
        'dims': {'bumps': 3},
        'scheme': {'points': 16, 'depth': 3},
        'tolerances': {'residue': 1e-6, 'weak': 5e-2, 'mass': 1e-4},
        't_schedule': [2.0, 4.0, 8.0],
    },
    'mathai_quillen': {
        'dims': {'n': 2, 'base_dim': 2, 'probes': 5},
        'scheme': {'points': 16, 'depth': 3},
        'tolerances': {'fiber': 1e-6, 'closed': 1e-5, 'pfaffian': 1e-10,
                       'weak': 5e-2},
        't_schedule': [2.0, 4.0, 8.0],
    },
    'blowup_models': {
        'dims': {'samples': 10000},
        'scheme': {},
        'tolerances': {'exact': 1e-13, 'flowline': 1e-10,
                       'continuity': 1e-6},
        't_schedule': [1.0],
    },
    'transgression_stokes': {
        'dims': {'base_dim': 2},
        'scheme': {'points': 8, 'depth': 5},
        'tolerances': {'boundary': 1e-3},
        't_schedule': [0.5, 1.0],
    },
    'atomicity_volumes': {
        'dims': {'n': 2},
        'scheme': {'points': 16},
        'tolerances': {'increment': 1e-3, 'divergence': 1.0},
        't_schedule': [10.0, 15.0, 20.0],
    },
}

# reduced sizes for ``lab check --quick``
QUICK = {
    'top_chern': {'dims': {'n': 1}, 't_schedule': [2.0, 3.0]},
    'maslov_spark': {'dims': {'loops': 2}},
    'nicolaescu_residue': {'dims': {'k': 2, 'n': 3}},
    'superconnection': {'t_schedule': [2.0, 8.0]},
    'mathai_quillen': {'t_schedule': [4.0, 8.0]},
    'blowup_models': {'dims': {'samples': 500}},
    'transgression_stokes': {'t_schedule': [0.5]},
}


def _merged(base, override, path=''):
    out = copy.deepcopy(base)
    for key, value in override.items():
        where = '%s.%s' % (path, key) if path else key
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merged(out[key], value, where)
        else:
            out[key] = copy.deepcopy(value)
    return out


def default_config(scenario, quick=False):
    if scenario not in DEFAULTS:
        raise errors.ConfigError('scenario', "unknown scenario %r"
                                 % (scenario,))
    data = dict(DEFAULTS[scenario], scenario=scenario, seed=0,
                output_path=None, table_path=None, jobs=1, quick=quick)
    if quick:
        data = _merged(data, QUICK.get(scenario, {}))
    return validate_config(ScenarioConfig(**copy.deepcopy(data)))


def load_config(source, scenario=None, quick=False):
    """
    Read a config document (dict, JSON text, stream or path); ``scenario``
    fills in a missing scenario field.
    """
    data = source_to_json(source)
    if not isinstance(data, dict):
        raise errors.ConfigError('', "a config must be a JSON object")
    for key in data:
        if key not in FIELDS:
            raise errors.ConfigError(key, "unknown field")
    name = data.get('scenario', scenario)
    if name is None:
        raise errors.ConfigError('scenario', "missing")
    base = default_config(name, quick=data.get('quick', quick))._asdict()
    return validate_config(ScenarioConfig(**_merged(base, data)))


def merge(config, **overrides):
    """Apply command line overrides; ``None`` values are ignored."""
    changes = dict((k, v) for k, v in overrides.items() if v is not None)
    for key in changes:
        if key not in FIELDS:
            raise errors.ConfigError(key, "unknown field")
    return validate_config(config._replace(**changes))


def _integer(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise errors.ConfigError(path, "%r is not an integer" % (value,))
    return value


def validate_config(config):
    if config.scenario not in SCENARIO_NAMES:
        raise errors.ConfigError('scenario', "unknown scenario %r"
                                 % (config.scenario,))
    for key, value in config.dims.items():
        path = 'dims.%s' % key
        _integer(value, path)
        low, high = DIM_BOUNDS.get(key, (1, None))
        if value < low or (high is not None and value > high):
            raise errors.ConfigError(
                    path, "%s outside [%s, %s]"
                    % (value, low, 'oo' if high is None else high))
    for key, value in config.scheme.items():
        path = 'scheme.%s' % key
        if key not in SCHEME_KEYS:
            raise errors.ConfigError(path, "unknown field")
        _integer(value, path)
        if key == 'points' and value < 2:
            raise errors.ConfigError(path, "needs at least 2 points")
        if key == 'samples' and value < 100:
            raise errors.ConfigError(path, "needs at least 100 samples")
        if key == 'depth' and value < 0:
            raise errors.ConfigError(path, "must be nonnegative")
    for key, value in config.tolerances.items():
        path = 'tolerances.%s' % key
        if isinstance(value, bool) or not isinstance(value, (int, float)) \
                or not value > 0:
            raise errors.ConfigError(path, "%r is not a positive number"
                                     % (value,))
    if not config.t_schedule:
        raise errors.ConfigError('t_schedule', "empty")
    for i, t in enumerate(config.t_schedule):
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise errors.ConfigError('t_schedule[%d]' % i,
                                     "%r is not a number" % (t,))
        if i and t <= config.t_schedule[i - 1]:
            raise errors.ConfigError('t_schedule[%d]' % i,
                                     "schedule must be strictly increasing")
    _integer(config.seed, 'seed')
    if not 0 <= config.seed < SEED_LIMIT:
        raise errors.ConfigError('seed', "must lie in [0, 2^64)")
    _integer(config.jobs, 'jobs')
    if config.jobs < 1:
        raise errors.ConfigError('jobs', "must be at least 1")
    return config
