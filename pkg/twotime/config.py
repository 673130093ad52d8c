"""
Numerical tolerances and run defaults.

Library code reads these module globals at call time, so a call to
:func:`setup` takes effect for everything that runs afterwards::

    >>> from twotime import config
    >>> config.setup(TAU_GAMMA=1e-6)
"""
import json
import logging

import six

from twotime.exceptions import ParameterError

LOG = logging.getLogger('twotime.config')

#absolute tolerances, applied after normalizing by max(1, ||.||_2)
TAU_HERM = 1e-10
TAU_NUM = 1e-10
TAU_CLUSTER = 1e-9
TAU_GAMMA = 1e-8
TAU_RANK = 1e-8

DEFAULT_SEED = 0
DEFAULT_TRIALS = 8
DEFAULT_STEPS = 100000

_TOLERANCES = ('TAU_HERM', 'TAU_NUM', 'TAU_CLUSTER', 'TAU_GAMMA', 'TAU_RANK')
_DEFAULTS = ('DEFAULT_SEED', 'DEFAULT_TRIALS', 'DEFAULT_STEPS')
_initial = dict((k, globals()[k]) for k in _TOLERANCES + _DEFAULTS)

OUTPUT_FORMATS = ('json', 'csv')
SEED_LIMIT = 2 ** 64


def setup(**overrides):
    """
    Overrides tolerances and defaults

    :param overrides: any of TAU_HERM, TAU_NUM, TAU_CLUSTER, TAU_GAMMA, TAU_RANK,
        DEFAULT_SEED, DEFAULT_TRIALS, DEFAULT_STEPS
    """
    for name, value in overrides.items():
        if name not in _initial:
            raise ParameterError("unknown configuration key '{}'".format(name))
        if name in _TOLERANCES:
            value = float(value)
            if not value > 0:
                raise ParameterError('{} must be positive, got {}'.format(name, value))
        else:
            value = int(value)
        LOG.debug('config %s = %r', name, value)
        globals()[name] = value


def reset():
    """ restores every tolerance and default to its shipped value """
    globals().update(_initial)


class RunConfig(object):
    """
    Parameters for one CLI command.

    Values come from an optional JSON config file and are overridden by
    explicit command line flags. Observables are Pauli expression text
    (see :mod:`twotime.parser`) and vectors are "x,y,z" text.
    """

    fields = ('o1', 'o2', 'state', 'basis', 'r', 's', 'steps', 'trials', 'seed',
              'init', 'out', 'format', 'dim_space', 'matrix_dim', 'subspaces')

    def __init__(self, **values):
        unknown = set(values) - set(self.fields) - set(['tolerances'])
        if unknown:
            raise ParameterError('unknown config fields: {}'.format(', '.join(sorted(unknown))))
        self.tolerances = values.pop('tolerances', None) or {}
        for name in self.fields:
            setattr(self, name, values.get(name))

        if self.seed is None:
            self.seed = DEFAULT_SEED
        if self.trials is None:
            self.trials = DEFAULT_TRIALS
        if self.steps is None:
            self.steps = DEFAULT_STEPS
        if self.format is None:
            self.format = 'json'
        if self.state is None:
            self.state = 'maximally-mixed'
        if self.init is None:
            self.init = 'maximally-mixed'
        self.validate()

    def validate(self):
        try:
            self.seed = int(self.seed)
            self.steps = int(self.steps)
            self.trials = int(self.trials)
        except (TypeError, ValueError):
            raise ParameterError('seed, steps and trials must be integers')
        if not 0 <= self.seed < SEED_LIMIT:
            raise ParameterError('seed {} is outside the unsigned 64-bit range'.format(self.seed))
        if self.steps < 2:
            raise ParameterError('steps must be at least 2, got {}'.format(self.steps))
        if self.trials < 2:
            raise ParameterError('trials must be at least 2, got {}'.format(self.trials))
        if self.format not in OUTPUT_FORMATS:
            raise ParameterError("format must be one of {}, got '{}'".format(
                ', '.join(OUTPUT_FORMATS), self.format))
        if self.basis is not None:
            if isinstance(self.basis, six.string_types):
                self.basis = [self.basis]
            self.basis = list(self.basis)

    @classmethod
    def from_file(cls, path, **overrides):
        """
        Loads a JSON config object, explicit (non None) overrides win

        :param path: path to a JSON file holding an object
        :type path: str
        """
        with open(path, 'r') as fp:
            try:
                values = json.load(fp)
            except ValueError as ex:
                raise ParameterError('config file {} is not valid JSON: {}'.format(path, ex))
        if not isinstance(values, dict):
            raise ParameterError('config file {} must hold a JSON object'.format(path))
        values.update(dict((k, v) for k, v in overrides.items() if v is not None))
        return cls(**values)

    def apply_tolerances(self):
        if self.tolerances:
            setup(**self.tolerances)
