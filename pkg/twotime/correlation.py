"""
The two-time correlation function

    E_rho(O1, O2) = sum_i lambda_i Tr[P_i rho P_i O2]

of measuring O1 (spectral decomposition sum_i lambda_i P_i over its distinct
eigenvalues) and then O2 on a system prepared in rho that does not evolve
between the two measurements. The first argument is always the observable
measured first.
"""
import logging

import numpy as np

from twotime import config
from twotime.exceptions import DomainError, ParameterError, SimulationError
from twotime.operators import (HermitianOperator, DensityOperator, check_dims, plus_minus_lambda,
                               random_density, random_pure_density)
from twotime.rng import generator, split, as_seed

LOG = logging.getLogger('twotime.correlation')


def _trace_product(a, b):
    """ Tr[AB] without forming AB """
    return np.sum(a * b.T)


def two_time_correlation(o1, o2, rho):
    """
    :type o1: twotime.operators.HermitianOperator
    :type o2: twotime.operators.HermitianOperator
    :type rho: twotime.operators.DensityOperator
    :rtype: float
    """
    check_dims(o1, o2, rho)
    total = 0j
    for lam, p in o1.spectrum:
        total += lam * _trace_product(p.dot(rho.entries).dot(p), o2.entries)
    if abs(total.imag) > config.TAU_NUM * o1.scale * o2.scale:
        raise SimulationError('correlation has imaginary part {:.3e}'.format(total.imag))
    return float(total.real)


def anticommutator_correlation(o, p, rho):
    """
    1/2 Tr[rho {O, P}], equal to E_rho(O, P) whenever the spectrum of O is
    {-lambda, +lambda}; any other O raises DomainError

    :rtype: float
    """
    check_dims(o, p, rho)
    if plus_minus_lambda(o) is None:
        raise DomainError('anticommutator form needs a {{-lambda, +lambda}} spectrum, got {}'.format(
            list(o.spectrum.eigenvalues)))
    return 0.5 * float(_trace_product(rho.entries, o.anticommutator(p).entries).real)


def self_correlation_identity(o, rho):
    """
    Tr[rho O^2], which E_rho(O, O) equals for every observable O
    """
    check_dims(o, rho)
    return float(_trace_product(rho.entries, o.entries.dot(o.entries)).real)


def pythagoras_residual(oi, oj, rho):
    """
    |E(Oi+Oj, Oi+Oj) - E(Oi, Oi) - E(Oj, Oj) - E(Oi, Oj) - E(Oj, Oi)|, zero when
    E_rho is bilinear on span{Oi, Oj}
    """
    s = oi + oj
    return abs(two_time_correlation(s, s, rho)
               - two_time_correlation(oi, oi, rho) - two_time_correlation(oj, oj, rho)
               - two_time_correlation(oi, oj, rho) - two_time_correlation(oj, oi, rho))


class GramMatrix(object):
    """
    The correlation values E_rho(O_i, O_j) over a basis, row index measured
    first. Asymmetry is kept as is: it is the signal that E_rho is not an
    inner product.
    """

    def __init__(self, entries, state_tag=None, standard_errors=None):
        """
        :param entries: real d x d array-like
        :param state_tag: description of the state the values were taken in
        :param standard_errors: optional d x d array of statistical errors, for estimates
        """
        entries = np.array(entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ParameterError('gram matrix must be square, got shape {}'.format(entries.shape))
        if not np.all(np.isfinite(entries)):
            raise ParameterError('gram matrix has non-finite entries')
        entries.setflags(write=False)
        self.entries = entries
        self.dim_space = entries.shape[0]
        self.state_tag = state_tag
        self.standard_errors = None if standard_errors is None else np.array(standard_errors, dtype=float)

    def asymmetry(self):
        return float(np.max(np.abs(self.entries - self.entries.T)))

    def min_eigenvalue(self):
        """ smallest eigenvalue of the symmetric part, x^T G x > 0 for all x iff positive """
        return float(np.linalg.eigvalsh((self.entries + self.entries.T) / 2)[0])

    def max_deviation(self, other):
        other = getattr(other, 'entries', other)
        return float(np.max(np.abs(self.entries - np.asarray(other, dtype=float))))

    def to_list(self):
        return self.entries.tolist()

    def __repr__(self):
        return 'GramMatrix({}, state_tag={!r})'.format(self.to_list(), self.state_tag)


def gram_matrix(subspace, rho):
    """
    :type subspace: twotime.gamma.ObservableSubspace
    :type rho: twotime.operators.DensityOperator
    :rtype: GramMatrix
    """
    basis = subspace.basis
    entries = [[two_time_correlation(oi, oj, rho) for oj in basis] for oi in basis]
    return GramMatrix(entries, state_tag=rho.tag)


def sample_states(dim, trials, seed):
    """
    The state ensemble used to test "for every state rho": every computational
    basis state, then `trials` random states alternating Hilbert-Schmidt mixed
    (even k) and Haar pure (odd k) drawn from sub-seed k.

    :rtype: list of DensityOperator
    """
    states = [DensityOperator.basis_state(dim, k) for k in range(dim)]
    for k in range(trials):
        sub = split(seed, k)
        if k % 2 == 0:
            states.append(random_density(dim, sub))
        else:
            states.append(random_pure_density(dim, sub))
    return states


class InnerProductReport(object):
    """
    Statistics deciding whether E_rho is a state independent inner product on
    a subspace, taken over a sampled state ensemble.
    """

    def __init__(self, max_asymmetry, max_state_dependence, min_eigenvalue, bilinearity_residual, grams,
                 states=None, gram_scale=None):
        self.max_asymmetry = max_asymmetry
        self.max_state_dependence = max_state_dependence
        self.min_eigenvalue = min_eigenvalue
        self.bilinearity_residual = bilinearity_residual
        self.grams = grams
        self.states = states
        #largest operator norm over the sampled gram matrices, grows with the square of the basis scale
        self.gram_scale = gram_scale

    @property
    def n_states(self):
        return len(self.grams)

    def relative(self, value):
        """ value in units of gram_scale, so thresholds do not depend on how the basis is scaled """
        if not self.gram_scale:
            return value
        return value / self.gram_scale

    def as_dict(self):
        return {
            'max_asymmetry': self.max_asymmetry,
            'max_state_dependence': self.max_state_dependence,
            'min_eigenvalue': self.min_eigenvalue,
            'bilinearity_residual': self.bilinearity_residual,
            'n_states': self.n_states,
            'gram_scale': self.gram_scale,
        }

    def __repr__(self):
        return 'InnerProductReport({})'.format(self.as_dict())


def _bilinearity_residual(basis, gram, rho, rng, combos):
    g = gram.entries
    d = len(basis)
    worst = 0.0
    for _ in range(combos):
        a = rng.uniform(-1, 1, d)
        c = rng.uniform(-1, 1, d)
        o = HermitianOperator(sum(ai * b.entries for ai, b in zip(a, basis)))
        q = HermitianOperator(sum(cj * b.entries for cj, b in zip(c, basis)))
        for j, p in enumerate(basis):
            worst = max(worst, abs(two_time_correlation(o, p, rho) - a.dot(g[:, j])))
        worst = max(worst, abs(two_time_correlation(o, q, rho) - a.dot(g).dot(c)))
    return worst


def inner_product_report(subspace, trials, seed, combos=3):
    """
    Samples states and measures how far E_rho is from a state independent
    inner product on the subspace.

    :param subspace: the subspace to test
    :type subspace: twotime.gamma.ObservableSubspace
    :param trials: number of random states on top of the computational basis states, at least 2
    :type trials: int
    :param seed: master seed, state k uses split(seed, k), the coefficient stream split(seed, trials)
    :param combos: random linear combinations per state for the bilinearity residual
    :rtype: InnerProductReport
    """
    if trials < 2:
        raise ParameterError('at least 2 trials are needed to test state independence, got {}'.format(trials))
    seed = as_seed(seed)
    basis = subspace.basis
    states = sample_states(subspace.matrix_dim, trials, seed)
    rng = generator(split(seed, trials))

    grams = []
    bilinearity = 0.0
    for rho in states:
        gram = gram_matrix(subspace, rho)
        grams.append(gram)
        bilinearity = max(bilinearity, _bilinearity_residual(basis, gram, rho, rng, combos))

    stack = np.array([g.entries for g in grams])
    report = InnerProductReport(
        max_asymmetry=max(g.asymmetry() for g in grams),
        max_state_dependence=float(np.max(stack.max(axis=0) - stack.min(axis=0))),
        min_eigenvalue=min(g.min_eigenvalue() for g in grams),
        bilinearity_residual=bilinearity,
        grams=grams,
        states=states,
        gram_scale=max(float(np.linalg.norm(g.entries, 2)) for g in grams),
    )
    LOG.debug('inner product report over %d states: %s', report.n_states, report.as_dict())
    return report
