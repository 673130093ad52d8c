"""
Sequential projective measurements on a single system.

A :class:`Schedule` cycles through a list of observables; :func:`run_sequence`
measures them one after the other with the Luders update and never prepares
the state again, so each measurement starts from the post-measurement state of
the previous one. The products of consecutive outcomes then estimate the
two-time correlation of the scheduled observables.
"""
import bisect
import csv
import logging
import math
from collections import namedtuple

import numpy as np
import six

from twotime import config
from twotime.correlation import GramMatrix
from twotime.exceptions import ValidationError, ParameterError, DomainError, SimulationError
from twotime.operators import DensityOperator, check_dims
from twotime.paulis import vector_observable
from twotime.rng import generator, split, as_seed

LOG = logging.getLogger('twotime.simulate')

Branch = namedtuple('Branch', ['index', 'probability', 'value', 'post'])


class Schedule(object):
    """
    Measurement at step i (1-based) uses observables[(i - 1) mod len(observables)].
    """

    def __init__(self, observables, steps, labels=None):
        """
        :param observables: non-zero observables of one matrix dimension
        :type observables: list of twotime.operators.HermitianOperator
        :param steps: number of measurements N, at least 2
        :type steps: int
        :param labels: display names used in trace exports
        """
        observables = list(observables)
        if not observables:
            raise ValidationError('a schedule needs at least one observable')
        check_dims(*observables)
        for k, o in enumerate(observables):
            if o.norm <= config.TAU_NUM:
                raise ValidationError('scheduled observable {} is zero'.format(k))
        if int(steps) < 2:
            raise ValidationError('a schedule needs at least 2 steps, got {}'.format(steps))
        if labels is None:
            labels = [o.label or 'O{}'.format(k + 1) for k, o in enumerate(observables)]
        if len(labels) != len(observables):
            raise ValidationError('{} labels given for {} observables'.format(len(labels), len(observables)))

        self.observables = tuple(observables)
        self.labels = tuple(labels)
        self.steps = int(steps)
        self.matrix_dim = observables[0].dim

    def __len__(self):
        return len(self.observables)

    def index_at(self, i):
        """ position in the observable list measured at step i (1-based) """
        return (i - 1) % len(self.observables)

    def observable_at(self, i):
        return self.observables[self.index_at(i)]

    def __repr__(self):
        return 'Schedule({}, steps={})'.format(list(self.labels), self.steps)


def vector_schedule(vectors, steps, labels=None):
    """
    Schedule of r . sigma observables for 3-vectors r

    :rtype: Schedule
    """
    vectors = [tuple(float(x) for x in r) for r in vectors]
    for r in vectors:
        if not any(r):
            raise ValidationError('zero vector has no outcomes to correlate')
    if labels is None:
        labels = [','.join(repr(x) for x in r) for r in vectors]
    return Schedule([vector_observable(r, label=l) for r, l in zip(vectors, labels)], steps, labels)


class OutcomeTrace(object):
    """
    The outcomes x_1..x_N of one run of a schedule.
    """

    def __init__(self, outcomes, schedule, seed, initial_state_tag=None, final_state=None):
        outcomes = np.array(outcomes, dtype=float)
        if outcomes.shape != (schedule.steps,):
            raise ValidationError('expected {} outcomes, got {}'.format(schedule.steps, outcomes.shape))
        for k, o in enumerate(schedule.observables):
            allowed = np.array(o.spectrum.eigenvalues)
            if not np.all(np.isin(outcomes[k::len(schedule)], allowed)):
                raise ValidationError('outcome at a step of observable {} is not one of its eigenvalues'.format(
                    schedule.labels[k]))
        outcomes.setflags(write=False)
        self.outcomes = outcomes
        self.schedule = schedule
        self.seed = as_seed(seed)
        self.initial_state_tag = initial_state_tag
        self.final_state = final_state

    def __len__(self):
        return len(self.outcomes)

    def label_at(self, i):
        return self.schedule.labels[self.schedule.index_at(i)]

    def __repr__(self):
        return 'OutcomeTrace({!r}, seed={}, initial_state_tag={!r})'.format(
            self.schedule, self.seed.value, self.initial_state_tag)


class GeometryEstimate(object):

    def __init__(self, inner_product_hat, n_pairs, standard_error, angle_hat=None, seed=None):
        if angle_hat is not None and not 0 <= angle_hat <= math.pi:
            raise ValidationError('angle {} outside [0, pi]'.format(angle_hat))
        self.inner_product_hat = inner_product_hat
        self.angle_hat = angle_hat
        self.n_pairs = n_pairs
        self.standard_error = standard_error
        self.seed = seed

    def __repr__(self):
        return 'GeometryEstimate(inner_product_hat={!r}, angle_hat={!r}, n_pairs={}, standard_error={!r})'.format(
            self.inner_product_hat, self.angle_hat, self.n_pairs, self.standard_error)


def measurement_branches(rho, o):
    """
    The outcomes of measuring o in state rho that have non-zero probability.

    Probabilities are Tr[P_i rho] over the clustered spectrum; values within
    -TAU_NUM of zero are clamped to zero and the rest renormalized. Post states
    are P_i rho P_i / Tr[P_i rho].

    :rtype: list of Branch
    """
    check_dims(rho, o)
    spec = o.spectrum
    raw = [float(np.sum(p * rho.entries.T).real) for p in spec.projectors]
    for k, p in enumerate(raw):
        if p < -config.TAU_NUM:
            raise SimulationError('branch probability {:.3e} is negative'.format(p))
        if p < 0:
            LOG.warning('clamping branch probability %.3e to zero', p)
            raw[k] = 0.0
    total = sum(raw)
    if total < config.TAU_NUM:
        raise SimulationError('all branch probabilities vanish, state is malformed')

    branches = []
    for k, (lam, p) in enumerate(spec):
        if raw[k] <= 0:
            continue
        post = p.dot(rho.entries).dot(p) / raw[k]
        branches.append(Branch(k, raw[k] / total, lam, DensityOperator.trusted(post, tag=rho.tag)))
    return branches


def _choose(cumulative, u):
    return min(bisect.bisect_right(cumulative, u), len(cumulative) - 1)


def _cumulative(branches):
    return list(np.cumsum([b.probability for b in branches]))


def measure_once(rho, o, stream):
    """
    Samples one measurement of o in state rho

    :param stream: random stream, one uniform is drawn
    :type stream: numpy.random.Generator
    :returns: (outcome, post-measurement state)
    """
    branches = measurement_branches(rho, o)
    b = branches[_choose(_cumulative(branches), stream.random())]
    return b.value, b.post


def run_sequence(rho0, schedule, seed):
    """
    Measures the schedule step by step, threading the post-measurement state.

    Once a measurement lands in a rank one eigenspace the state is that
    eigenprojector whatever came before, so transitions out of it are tabulated
    once and reused.

    :type rho0: twotime.operators.DensityOperator
    :type schedule: Schedule
    :type seed: twotime.rng.Seed
    :rtype: OutcomeTrace
    """
    check_dims(rho0, schedule.observables[0])
    seed = as_seed(seed)
    uniforms = generator(seed).random(schedule.steps).tolist()
    observables = schedule.observables
    period = len(observables)
    rank_one = [all(m == 1 for m in o.spectrum.multiplicities) for o in observables]

    tables = {}
    outcomes = [0.0] * schedule.steps
    rho = rho0
    key = None

    for i in range(schedule.steps):
        k = i % period
        if key is None:
            branches = measurement_branches(rho, observables[k])
            cumulative = _cumulative(branches)
        else:
            table = tables.get((key, k))
            if table is None:
                kk, bb = key
                state = DensityOperator.trusted(observables[kk].spectrum.projectors[bb])
                branches = measurement_branches(state, observables[k])
                table = tables[(key, k)] = (branches, _cumulative(branches))
            branches, cumulative = table
        b = branches[_choose(cumulative, uniforms[i])]
        outcomes[i] = b.value
        if rank_one[k]:
            key = (k, b.index)
            rho = None
        else:
            key = None
            rho = b.post

    if key is not None:
        rho = DensityOperator.trusted(observables[key[0]].spectrum.projectors[key[1]])
    rho.tag = 'after {} steps from {}'.format(schedule.steps, rho0.tag)
    LOG.debug('ran %r from %s with seed %d, %d transition tables', schedule, rho0.tag, seed.value, len(tables))
    return OutcomeTrace(outcomes, schedule, seed, initial_state_tag=rho0.tag, final_state=rho)


def _check_pairs(trace):
    if len(trace) < 2:
        raise ParameterError('need at least 2 outcomes, got {}'.format(len(trace)))
    if len(trace.schedule) > 2:
        raise ParameterError('estimators need an alternating schedule of at most 2 observables, got {}'.format(
            len(trace.schedule)))


def estimate_inner_product(trace):
    """
    r.s ~ sum_i x_i x_{i+1} / (N - 1), with the standard error taken from the
    sample spread of the products. Consecutive products share an outcome, so
    they are exchangeable rather than independent.

    :type trace: OutcomeTrace
    :rtype: GeometryEstimate
    """
    _check_pairs(trace)
    x = trace.outcomes
    products = x[:-1] * x[1:]
    n_pairs = len(products)
    se = float(products.std(ddof=1) / math.sqrt(n_pairs)) if n_pairs > 1 else 0.0
    return GeometryEstimate(float(products.mean()), n_pairs, se, seed=trace.seed.value)


def estimate_angle(trace):
    """
    theta ~ arccos(sum_i x_i x_{i+1} / ((N - 1) |x_1 x_2|)), using |x_1| = ||r||
    and |x_2| = ||s||. The ratio is clamped to [-1, 1].

    :type trace: OutcomeTrace
    :rtype: GeometryEstimate
    """
    estimate = estimate_inner_product(trace)
    magnitude = abs(trace.outcomes[0] * trace.outcomes[1])
    if magnitude <= config.TAU_NUM:
        raise DomainError('outcome magnitude |x1 x2| = {!r} is zero, angle is undefined'.format(magnitude))
    ratio = estimate.inner_product_hat / magnitude
    if abs(abs(ratio) - 1) <= config.TAU_NUM:
        ratio = math.copysign(1.0, ratio)
    estimate.angle_hat = float(np.arccos(np.clip(ratio, -1.0, 1.0)))
    return estimate


def reconstruct_gram(vectors, rho0, steps, seed):
    """
    Estimates the full metric r_i . r_j from alternating runs over every
    unordered pair (single observable runs on the diagonal). Each run starts in
    the final state of the previous one.

    :param vectors: non-zero 3-vectors
    :param steps: N per run
    :param seed: run m uses split(seed, m)
    :rtype: twotime.correlation.GramMatrix
    """
    vectors = [tuple(float(x) for x in r) for r in vectors]
    k = len(vectors)
    entries = np.zeros((k, k))
    errors = np.zeros((k, k))
    state = rho0
    run = 0
    for i in range(k):
        for j in range(i, k):
            pair = [vectors[i]] if i == j else [vectors[i], vectors[j]]
            trace = run_sequence(state, vector_schedule(pair, steps), split(seed, run))
            estimate = estimate_inner_product(trace)
            entries[i, j] = entries[j, i] = estimate.inner_product_hat
            errors[i, j] = errors[j, i] = estimate.standard_error
            state = trace.final_state
            run += 1
    return GramMatrix(entries, state_tag='reconstructed from {}'.format(rho0.tag), standard_errors=errors)


def branch_correlation(o1, o2, rho):
    """
    E_rho(O1, O2) by enumerating the outcome branches of the first
    measurement: sum_i p_i lambda_i Tr[rho_i O2] with Luders post states rho_i
    """
    check_dims(o1, o2, rho)
    return sum(b.probability * b.value * b.post.expectation(o2) for b in measurement_branches(rho, o1))


def exact_pair_distribution(o1, o2, rho, digits=12):
    """
    Distribution of the product x y of measuring o1 then o2 starting in rho

    :returns: sorted list of (product, probability), products rounded to `digits`
    """
    dist = {}
    for b1 in measurement_branches(rho, o1):
        for b2 in measurement_branches(b1.post, o2):
            product = round(b1.value * b2.value, digits)
            dist[product] = dist.get(product, 0.0) + b1.probability * b2.probability
    return sorted(dist.items())


TRACE_HEADER = ('step', 'observable_label', 'outcome')


def _format_float(x):
    return '%.17g' % x


def trace_to_csv(trace):
    """ the trace as CSV text, header step,observable_label,outcome """
    out = six.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(TRACE_HEADER)
    labels = trace.schedule.labels
    period = len(labels)
    for i, x in enumerate(trace.outcomes.tolist()):
        writer.writerow((i + 1, labels[i % period], _format_float(x)))
    return out.getvalue()


def write_trace_csv(trace, path):
    with open(path, 'w') as fp:
        fp.write(trace_to_csv(trace))
    LOG.info('wrote %d outcomes to %s', len(trace), path)


def estimate_to_dict(estimate):
    return {
        'inner_product_hat': estimate.inner_product_hat,
        'angle_hat': estimate.angle_hat,
        'standard_error': estimate.standard_error,
        'n_pairs': estimate.n_pairs,
        'seed': estimate.seed,
    }
