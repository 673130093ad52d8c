"""
gamma-spaces: real subspaces of observables with a basis satisfying
O_i O_j + O_j O_i = 2 delta_ij 1.
"""
import logging
import math

import numpy as np

from twotime import config
from twotime.correlation import inner_product_report, pythagoras_residual
from twotime.exceptions import ValidationError, ParameterError, DimensionMismatch
from twotime.operators import HermitianOperator, kron, check_dims
from twotime.paulis import pauli, UnicodeMixin
from twotime.rng import generator, as_seed

LOG = logging.getLogger('twotime.gamma')


class ObservableSubspace(object):
    """
    A real linear subspace of observables given by an ordered basis.
    """

    def __init__(self, basis, labels=None):
        """
        :param basis: real-linearly independent observables of one matrix dimension
        :type basis: list of twotime.operators.HermitianOperator
        :param labels: optional display names, one per element
        """
        basis = [HermitianOperator.from_matrix(b) for b in basis]
        if not basis:
            raise ValidationError('a subspace needs at least one basis element')
        check_dims(*basis)
        if labels is None:
            labels = [b.label for b in basis]
        if len(labels) != len(basis):
            raise ValidationError('{} labels given for {} basis elements'.format(len(labels), len(basis)))

        vectors = np.array([np.concatenate([b.entries.real.ravel(), b.entries.imag.ravel()]) for b in basis])
        sv = np.linalg.svd(vectors, compute_uv=False)
        if sv[-1] / max(1.0, sv[0]) <= config.TAU_RANK:
            raise ValidationError('basis is not linearly independent over the reals '
                                  '(smallest singular value {:.3e})'.format(sv[-1]))

        self.basis = tuple(basis)
        self.labels = tuple(labels)
        self.dim_space = len(basis)
        self.matrix_dim = basis[0].dim

    def __len__(self):
        return self.dim_space

    def __iter__(self):
        return iter(self.basis)

    def __repr__(self):
        return 'ObservableSubspace({}, matrix_dim={})'.format(list(self.labels), self.matrix_dim)


def pauli_basis():
    """ span{sigma_x, sigma_y, sigma_z} """
    return ObservableSubspace([pauli('X'), pauli('Y'), pauli('Z')])


_STANDARD_WORDS = {
    1: ['X'],
    2: ['X', 'Y'],
    3: ['X', 'Y', 'Z'],
    4: ['XX', 'XY', 'XZ', 'ZI'],
    5: ['XX', 'XY', 'XZ', 'ZI', 'YI'],
}


def standard_gamma_basis(d):
    """
    d mutually anticommuting Hermitian involutions: 2x2 for d <= 3, 4x4
    for d in (4, 5)

    :type d: int
    :rtype: ObservableSubspace
    """
    if d not in _STANDARD_WORDS:
        raise ParameterError('standard gamma basis exists for d in 1..5, got {}'.format(d))
    return ObservableSubspace([pauli(w) for w in _STANDARD_WORDS[d]])


def clifford_dimension(subspace):
    """ number of qubits, floor(d/2), a d-dimensional gamma-space corresponds to """
    return subspace.dim_space // 2


def anticommutator_residuals(basis):
    """
    ||{O_i, O_j} - 2 delta_ij 1||_2 for every pair i <= j

    :rtype: dict mapping (i, j) to float
    """
    eye = np.eye(basis[0].dim)
    out = {}
    for i, oi in enumerate(basis):
        for j in range(i, len(basis)):
            target = 2 * eye if i == j else 0
            out[(i, j)] = float(np.linalg.norm(oi.anticommutator(basis[j]).entries - target, 2))
    return out


def is_gamma_basis(subspace):
    """
    :type subspace: ObservableSubspace
    :returns: (passes, max anticommutator residual)
    :rtype: (bool, float)
    """
    residual = max(anticommutator_residuals(subspace.basis).values())
    return residual <= config.TAU_GAMMA, residual


def is_dichotomic(o):
    """ True iff the distinct eigenvalues of o are exactly -1 and +1 """
    eigenvalues = o.spectrum.eigenvalues
    if len(eigenvalues) != 2:
        return False
    return abs(eigenvalues[0] + 1) <= config.TAU_GAMMA and abs(eigenvalues[1] - 1) <= config.TAU_GAMMA


def random_unitary(dim, seed):
    """ Haar random unitary, QR of a complex Gaussian matrix with the phases of R divided out """
    rng = generator(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def conjugate(subspace, u):
    """ the subspace spanned by U^dag O_i U """
    u = np.asarray(u, dtype=complex)
    if u.shape != (subspace.matrix_dim, subspace.matrix_dim):
        raise DimensionMismatch('unitary of shape {} does not act on dimension {}'.format(
            u.shape, subspace.matrix_dim))
    basis = [HermitianOperator(u.conj().T.dot(o.entries).dot(u), label=o.label) for o in subspace.basis]
    return ObservableSubspace(basis)


def embed(subspace, factor):
    """ O_i (x) 1_factor for every basis element """
    eye = HermitianOperator.identity(factor)
    return ObservableSubspace([kron(o, eye) for o in subspace.basis])


NOT_INNER_PRODUCT = 'not-inner-product'
STATE_DEPENDENT = 'state-dependent'
NOT_DICHOTOMIC = 'basis-not-dichotomic'
ANTICOMMUTATOR_VIOLATION = 'anticommutator-violation'
NONE = 'none'

FAILURE_REASONS = (NOT_INNER_PRODUCT, STATE_DEPENDENT, NOT_DICHOTOMIC, ANTICOMMUTATOR_VIOLATION, NONE)


class GammaVerdict(UnicodeMixin):
    """
    Outcome of :func:`decide_gamma_space`. A positive verdict carries the
    witness gamma-basis whose anticommutators certify it.
    """

    def __init__(self, is_gamma, residuals, failure_reason, witness_basis=None, report=None, detail=None,
                 pythagoras_residual=None, statistic=None):
        """
        :param residuals: max anticommutator residual of the orthonormalized basis, or of the given basis
            when the verdict came before orthonormalization
        :param statistic: the scale free value of the check that failed, None for a positive verdict
        """
        if failure_reason not in FAILURE_REASONS:
            raise ValidationError("unknown failure reason '{}'".format(failure_reason))
        if is_gamma and (failure_reason != NONE or residuals > config.TAU_GAMMA):
            raise ValidationError('a positive verdict needs residuals <= {} and no failure reason'.format(
                config.TAU_GAMMA))
        self.is_gamma = is_gamma
        self.residuals = residuals
        self.failure_reason = failure_reason
        self.witness_basis = witness_basis
        self.report = report
        self.detail = detail
        self.pythagoras_residual = pythagoras_residual
        self.statistic = statistic

    def as_dict(self):
        out = {
            'is_gamma': self.is_gamma,
            'failure_reason': self.failure_reason,
            'residuals': self.residuals,
            'detail': self.detail,
            'pythagoras_residual': self.pythagoras_residual,
            'statistic': self.statistic,
        }
        if self.report is not None:
            out['inner_product'] = self.report.as_dict()
        if self.witness_basis is not None:
            out['witness_basis'] = [_matrix_to_lists(o.entries) for o in self.witness_basis]
        return out

    def __unicode__(self):
        if self.is_gamma:
            return u'gamma-space (residual {:.3e})'.format(self.residuals)
        return u'not a gamma-space: {} ({})'.format(self.failure_reason, self.detail)

    def __repr__(self):
        return 'GammaVerdict(is_gamma={}, failure_reason={!r}, residuals={!r})'.format(
            self.is_gamma, self.failure_reason, self.residuals)


def _matrix_to_lists(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _orthonormalize(subspace, gram):
    """
    Gram-Schmidt against the inner product given by a symmetric positive
    definite gram matrix: with G = L L^T the rows of L^-1 hold the
    coefficients of the orthonormal elements
    """
    g = (gram.entries + gram.entries.T) / 2
    coeffs = np.linalg.inv(np.linalg.cholesky(g))
    return [HermitianOperator(sum(c * o.entries for c, o in zip(row, subspace.basis)))
            for row in coeffs]


def decide_gamma_space(subspace, trials, seed):
    """
    Decides whether a subspace is a gamma-space by following the converse
    argument: if E_rho is a state independent inner product then an orthonormal
    basis for it is made of dichotomic observables whose pairwise normalized sums
    are dichotomic too, which forces the gamma relations.

    The state sampling can only refute. A positive verdict is certified by the
    anticommutator residual of the returned witness basis.

    :type subspace: ObservableSubspace
    :param trials: random states sampled on top of the computational basis states, >= 2
    :type trials: int
    :param seed: master seed, see :func:`twotime.correlation.inner_product_report`
    :rtype: GammaVerdict
    """
    if trials < 2:
        raise ParameterError('at least 2 trials are needed to test state independence, got {}'.format(trials))
    seed = as_seed(seed)
    tol = config.TAU_GAMMA
    report = inner_product_report(subspace, trials, seed)
    orthonormal = None

    def fail(reason, statistic, detail):
        basis = subspace.basis if orthonormal is None else orthonormal
        residual = max(anticommutator_residuals(basis).values())
        LOG.info('%r is not a gamma-space: %s (%s)', subspace, reason, detail)
        return GammaVerdict(False, residual, reason, report=report, detail=detail, statistic=statistic)

    #gram statistics are compared relative to the gram scale
    dependence = report.relative(report.max_state_dependence)
    if dependence > tol:
        return fail(STATE_DEPENDENT, dependence, 'correlations vary by {:.3e} across states'.format(dependence))
    asymmetry = report.relative(report.max_asymmetry)
    if asymmetry > tol:
        return fail(NOT_INNER_PRODUCT, asymmetry, 'asymmetry {:.3e}'.format(asymmetry))
    bilinearity = report.relative(report.bilinearity_residual)
    if bilinearity > tol:
        return fail(NOT_INNER_PRODUCT, bilinearity, 'bilinearity residual {:.3e}'.format(bilinearity))
    smallest = report.relative(report.min_eigenvalue)
    if smallest <= config.TAU_RANK:
        return fail(NOT_INNER_PRODUCT, smallest,
                    'not positive definite, relative smallest eigenvalue {:.3e}'.format(smallest))

    orthonormal = _orthonormalize(subspace, report.grams[0])

    for i, o in enumerate(orthonormal):
        if not is_dichotomic(o):
            return fail(NOT_DICHOTOMIC, float(np.linalg.norm(o.square().entries - np.eye(o.dim), 2)),
                        'orthonormal element {} has spectrum {}'.format(i, list(o.spectrum.eigenvalues)))

    first = report.states[0]
    pythagoras = 0.0
    for i in range(len(orthonormal)):
        for j in range(i + 1, len(orthonormal)):
            pythagoras = max(pythagoras, pythagoras_residual(orthonormal[i], orthonormal[j], first))
            s = (orthonormal[i] + orthonormal[j]) / math.sqrt(2)
            if not is_dichotomic(s):
                return fail(NOT_DICHOTOMIC, float(np.linalg.norm(s.square().entries - np.eye(s.dim), 2)),
                            'normalized sum of elements {} and {} has spectrum {}'.format(
                                i, j, list(s.spectrum.eigenvalues)))

    residual = max(anticommutator_residuals(orthonormal).values())
    if residual > tol:
        return fail(ANTICOMMUTATOR_VIOLATION, residual, 'anticommutator residual {:.3e}'.format(residual))

    LOG.info('%r is a gamma-space, witness residual %.3e', subspace, residual)
    return GammaVerdict(True, residual, NONE, witness_basis=orthonormal, report=report,
                        pythagoras_residual=pythagoras)
