"""
Command line interface::

    twotime correlate --o1 X --o2 Z --state random:7
    twotime gamma-check --basis X --basis Y --basis Z
    twotime simulate --r 1,0,0 --s 0.5,0,0.8660254 --steps 1000000 --out run1
    twotime sweep --dim-space 3 --matrix-dim 2 --subspaces 50

Reports go to stdout as JSON (the sweep table can be CSV). Floats are written
with 17 significant digits and every report carries a ``generated_at`` UTC
timestamp, the only field that differs between two runs with equal inputs.

Exit codes: 0 on success, 1 on any error (message on stderr), and for
gamma-check 2 when the subspace is not a gamma-space.
"""
import argparse
import csv
import datetime
import json
import logging
import numbers
import os
import sys

import numpy as np
import six

from twotime import config
from twotime.config import RunConfig
from twotime.correlation import two_time_correlation, self_correlation_identity, anticommutator_correlation
from twotime.exceptions import TwoTimeException, ParameterError, SimulationError
from twotime.gamma import (ObservableSubspace, decide_gamma_space, standard_gamma_basis, embed,
                           clifford_dimension)
from twotime.operators import DensityOperator, random_density, random_hermitian, plus_minus_lambda
from twotime.parser import parse_observable, parse_vector3
from twotime.paulis import to_operator
from twotime.rng import Seed, split
from twotime.simulate import (vector_schedule, run_sequence, estimate_angle, estimate_to_dict,
                              write_trace_csv)

LOG = logging.getLogger('twotime.cli')

GAMMA_EXIT_NOT_GAMMA = 2

SWEEP_DEFAULTS = {'dim_space': 3, 'matrix_dim': 2, 'subspaces': 10}
SWEEP_COLUMNS = ('index', 'kind', 'is_gamma', 'failure_reason', 'residuals', 'statistic')


def _utcnow():
    return datetime.datetime.now(datetime.timezone.utc).strftime('%Y-%m-%dT%H:%M:%SZ')


def _format_float(x):
    if not np.isfinite(x):
        return 'null'
    text = '%.17g' % x
    if not any(c in text for c in '.en'):
        text += '.0'
    return text


def to_json(value, level=0):
    """
    Serializes reports: sorted keys, two space indent, floats with 17
    significant digits, non-finite floats as null
    """
    inner = '  ' * (level + 1)
    outer = '  ' * level
    if value is None:
        return 'null'
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return _format_float(float(value))
    if isinstance(value, six.string_types):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return '{}'
        items = ['{}{}: {}'.format(inner, json.dumps(six.text_type(k)), to_json(value[k], level + 1))
                 for k in sorted(value)]
        return '{\n' + ',\n'.join(items) + '\n' + outer + '}'
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return '[]'
        items = [inner + to_json(v, level + 1) for v in value]
        return '[\n' + ',\n'.join(items) + '\n' + outer + ']'
    raise TypeError('cannot serialize {!r}'.format(value))


def parse_state(spec, dim):
    """
    :param spec: "maximally-mixed", "pure:k" or "random:seed"
    :type dim: int
    :rtype: twotime.operators.DensityOperator
    """
    spec = (spec or 'maximally-mixed').strip()
    if spec == 'maximally-mixed':
        return DensityOperator.maximally_mixed(dim)
    kind, _, arg = spec.partition(':')
    if kind not in ('pure', 'random') or not arg:
        raise ParameterError("unknown state '{}', expected maximally-mixed, pure:k or random:seed".format(spec))
    try:
        value = int(arg)
    except ValueError:
        raise ParameterError("state '{}' needs an integer argument".format(spec))
    if kind == 'pure':
        return DensityOperator.basis_state(dim, value)
    return random_density(dim, Seed(value))


def _observable(text, flag):
    if not text:
        raise ParameterError('{} is required'.format(flag))
    return to_operator(parse_observable(text), label=text.strip())


def _vector(text, flag):
    if not text:
        raise ParameterError('{} is required'.format(flag))
    return parse_vector3(text)


def cmd_correlate(cfg):
    """ exact E_rho(O1, O2), with the Tr[rho O^2] cross check when O1 = O2 """
    o1 = _observable(cfg.o1, '--o1')
    o2 = _observable(cfg.o2, '--o2')
    rho = parse_state(cfg.state, o1.dim)
    value = two_time_correlation(o1, o2, rho)
    report = {
        'command': 'correlate',
        'o1': o1.label,
        'o2': o2.label,
        'state': rho.tag,
        'matrix_dim': o1.dim,
        'value': value,
    }
    if o1.is_close(o2):
        identity = self_correlation_identity(o1, rho)
        report['self_check'] = {'trace_rho_o_squared': identity, 'residual': abs(value - identity)}
    if plus_minus_lambda(o1) is not None:
        report['anticommutator_value'] = anticommutator_correlation(o1, o2, rho)
    return report


def cmd_gamma_check(cfg):
    """ runs decide_gamma_space on the span of the --basis observables """
    if not cfg.basis:
        raise ParameterError('--basis is required, give it once per basis element')
    basis = [_observable(text, '--basis') for text in cfg.basis]
    subspace = ObservableSubspace(basis, labels=[b.label for b in basis])
    verdict = decide_gamma_space(subspace, cfg.trials, cfg.seed)
    report = verdict.as_dict()
    report.update({
        'command': 'gamma-check',
        'basis': list(subspace.labels),
        'trials': cfg.trials,
        'seed': cfg.seed,
    })
    if verdict.is_gamma:
        report['clifford_qubits'] = clifford_dimension(subspace)
    return report


def cmd_simulate(cfg):
    """
    Alternating r.sigma / s.sigma run of the qubit toy model. With --out DIR
    the trace goes to DIR/trace.csv and the estimate to DIR/estimate.json.
    """
    r = _vector(cfg.r, '--r')
    s = _vector(cfg.s, '--s')
    rho0 = parse_state(cfg.init, 2)
    schedule = vector_schedule([r, s], cfg.steps, labels=['r', 's'])
    trace = run_sequence(rho0, schedule, Seed(cfg.seed))
    estimate = estimate_angle(trace)

    exact = float(np.dot(r, s))
    cosine = exact / (np.linalg.norm(r) * np.linalg.norm(s))
    report = estimate_to_dict(estimate)
    report.update({
        'command': 'simulate',
        'r': list(r),
        's': list(s),
        'steps': cfg.steps,
        'init': rho0.tag,
        'exact_inner_product': exact,
        'exact_angle': float(np.arccos(np.clip(cosine, -1.0, 1.0))),
    })

    if cfg.out:
        if not os.path.isdir(cfg.out):
            os.makedirs(cfg.out)
        trace_path = os.path.join(cfg.out, 'trace.csv')
        estimate_path = os.path.join(cfg.out, 'estimate.json')
        write_trace_csv(trace, trace_path)
        with open(estimate_path, 'w') as fp:
            fp.write(to_json(estimate_to_dict(estimate)) + '\n')
        LOG.info('wrote estimate to %s', estimate_path)
        report['trace_path'] = trace_path
        report['estimate_path'] = estimate_path
    return report


def _sweep_row(index, kind, verdict):
    return {
        'index': index,
        'kind': kind,
        'is_gamma': verdict.is_gamma,
        'failure_reason': verdict.failure_reason,
        'residuals': verdict.residuals,
        'statistic': verdict.statistic,
    }


def _positive_control(d, n):
    """ the standard gamma basis of dimension d, padded to n x n, or None if it does not fit """
    if d not in (1, 2, 3, 4, 5):
        return None
    standard = standard_gamma_basis(d)
    if n % standard.matrix_dim:
        return None
    return embed(standard, n // standard.matrix_dim)


def cmd_theorem_sweep(cfg):
    """
    Runs decide_gamma_space on `subspaces` random d-dimensional subspaces of
    n x n observables and on the standard gamma basis as a positive control.
    Random subspace k draws its basis from split(seed, k).
    """
    d = cfg.dim_space or SWEEP_DEFAULTS['dim_space']
    n = cfg.matrix_dim or SWEEP_DEFAULTS['matrix_dim']
    k_max = SWEEP_DEFAULTS['subspaces'] if cfg.subspaces is None else cfg.subspaces
    if d < 1 or n < 1 or k_max < 0:
        raise ParameterError('dim-space and matrix-dim must be positive and subspaces non-negative')
    if d > n * n:
        raise ParameterError('a {}-dimensional subspace does not fit in the {}-dimensional real space of '
                             '{}x{} observables'.format(d, n * n, n, n))
    seed = Seed(cfg.seed)

    control = None
    standard = _positive_control(d, n)
    if standard is None:
        LOG.warning('no standard gamma basis of dimension %d fits %dx%d matrices, skipping positive control', d, n, n)
    else:
        verdict = decide_gamma_space(standard, cfg.trials, split(seed, k_max))
        if not verdict.is_gamma:
            LOG.error('positive control failed: %s', verdict)
            raise SimulationError('positive control {!r} was not recognized as a gamma-space: {}'.format(
                standard, verdict.failure_reason))
        control = _sweep_row(None, 'control', verdict)

    rows = []
    for k in range(k_max):
        sub = split(seed, k)
        basis = [random_hermitian(n, split(sub, i)) for i in range(d)]
        verdict = decide_gamma_space(ObservableSubspace(basis), cfg.trials, split(sub, d))
        LOG.debug('random subspace %d: %s', k, verdict)
        rows.append(_sweep_row(k, 'random', verdict))

    reasons = {}
    for row in rows:
        reasons[row['failure_reason']] = reasons.get(row['failure_reason'], 0) + 1
    return {
        'command': 'sweep',
        'dim_space': d,
        'matrix_dim': n,
        'subspaces': k_max,
        'trials': cfg.trials,
        'seed': seed.value,
        'positive_control': control,
        'rows': rows,
        'summary': {'n_gamma': sum(1 for row in rows if row['is_gamma']), 'reasons': reasons},
    }


def sweep_to_csv(report):
    out = six.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(SWEEP_COLUMNS)
    rows = list(report['rows'])
    if report['positive_control'] is not None:
        rows.insert(0, report['positive_control'])
    for row in rows:
        writer.writerow(['' if row['index'] is None else row['index'], row['kind'],
                         'true' if row['is_gamma'] else 'false', row['failure_reason'],
                         _format_float(row['residuals']),
                         '' if row['statistic'] is None else _format_float(row['statistic'])])
    return out.getvalue()


COMMANDS = {
    'correlate': cmd_correlate,
    'gamma-check': cmd_gamma_check,
    'simulate': cmd_simulate,
    'sweep': cmd_theorem_sweep,
}


class ArgumentParser(argparse.ArgumentParser):
    """ usage errors raise instead of exiting, so they map onto exit code 1 """

    def error(self, message):
        raise ParameterError(message)


def build_parser():
    from twotime import __version__

    common = ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='log at DEBUG level')
    common.add_argument('--config', help='JSON file with default values for the flags')

    seeded = ArgumentParser(add_help=False)
    seeded.add_argument('--seed', type=int, help='master seed, default {}'.format(config.DEFAULT_SEED))
    seeded.add_argument('--trials', type=int, help='random states per test, default {}'.format(
        config.DEFAULT_TRIALS))

    parser = ArgumentParser(prog='twotime', description='two-time correlations and gamma-spaces')
    parser.add_argument('--version', action='version', version=__version__)
    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('correlate', parents=[common], help='exact two-time correlation E_rho(O1, O2)')
    p.add_argument('--o1', help='observable measured first, e.g. "0.5*X + 0.5*Z"')
    p.add_argument('--o2', help='observable measured second')
    p.add_argument('--state', help='maximally-mixed, pure:k or random:seed')

    p = sub.add_parser('gamma-check', parents=[common, seeded], help='decide whether a span is a gamma-space')
    p.add_argument('--basis', action='append', help='basis observable, repeat once per element')

    p = sub.add_parser('simulate', parents=[common], help='sequential measurement toy model')
    p.add_argument('--r', help='first vector, "x,y,z"')
    p.add_argument('--s', help='second vector, "x,y,z"')
    p.add_argument('--steps', type=int, help='number of measurements, default {}'.format(config.DEFAULT_STEPS))
    p.add_argument('--seed', type=int, help='seed of the outcome stream')
    p.add_argument('--init', help='initial state, maximally-mixed, pure:k or random:seed')
    p.add_argument('--out', help='directory for trace.csv and estimate.json')

    p = sub.add_parser('sweep', parents=[common, seeded], help='gamma-space verdicts over random subspaces')
    p.add_argument('--dim-space', dest='dim_space', type=int, help='subspace dimension d')
    p.add_argument('--matrix-dim', dest='matrix_dim', type=int, help='matrix dimension n')
    p.add_argument('--subspaces', type=int, help='number of random subspaces K')
    p.add_argument('--format', choices=config.OUTPUT_FORMATS, help='table format, default json')
    return parser


def load_config(args):
    """ RunConfig from the optional --config file, explicit flags winning """
    values = dict((name, getattr(args, name, None)) for name in RunConfig.fields)
    if args.config:
        return RunConfig.from_file(args.config, **values)
    return RunConfig(**dict((k, v) for k, v in values.items() if v is not None))


def _fail(message):
    sys.stderr.write('twotime: error: {}\n'.format(message))
    return 1


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except ParameterError as ex:
        return _fail(ex)
    if args.command is None:
        return _fail('a command is required: {}'.format(', '.join(sorted(COMMANDS))))

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')

    cfg = None
    try:
        cfg = load_config(args)
        cfg.apply_tolerances()
        report = COMMANDS[args.command](cfg)
    except TwoTimeException as ex:
        return _fail(ex)
    except (IOError, OSError) as ex:
        return _fail(ex)
    finally:
        if cfg is not None and cfg.tolerances:
            config.reset()

    report['generated_at'] = _utcnow()
    if args.command == 'sweep' and cfg.format == 'csv':
        sys.stdout.write(sweep_to_csv(report))
    else:
        sys.stdout.write(to_json(report) + '\n')

    if args.command == 'gamma-check' and not report['is_gamma']:
        return GAMMA_EXIT_NOT_GAMMA
    return 0


if __name__ == '__main__':
    sys.exit(main())
