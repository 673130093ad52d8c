"""
Finite-dimensional observables and states.

Values here are validated once, when they are constructed, and are immutable
afterwards: the underlying numpy arrays are flagged read-only. Every operation
downstream may assume the invariants hold.
"""
import logging

import numpy as np

from twotime import config
from twotime.exceptions import ValidationError, DimensionMismatch, DomainError
from twotime.rng import generator

LOG = logging.getLogger('twotime.operators')


def _as_matrix(entries, kind):
    try:
        m = np.array(entries, dtype=complex)
    except (TypeError, ValueError):
        raise ValidationError('{} entries are not a numeric matrix'.format(kind))
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValidationError('{} must be a non-empty square matrix, got shape {}'.format(kind, m.shape))
    if not np.all(np.isfinite(m)):
        raise ValidationError('{} has non-finite entries'.format(kind))
    return m


def _scale(m):
    return max(1.0, np.linalg.norm(m, 2))


def _hermitian_part(m, kind):
    asymmetry = np.max(np.abs(m - m.conj().T)) / _scale(m)
    if asymmetry > config.TAU_HERM:
        raise ValidationError('{} is not Hermitian: max asymmetry {:.3e} exceeds {:.1e}'.format(
            kind, asymmetry, config.TAU_HERM))
    m = (m + m.conj().T) / 2
    m.setflags(write=False)
    return m


def check_dims(*values):
    """ raises DimensionMismatch unless every value has the same dim """
    dims = set(v.dim for v in values)
    if len(dims) > 1:
        raise DimensionMismatch('incompatible dimensions: {}'.format(
            ' vs '.join(str(v.dim) for v in values)))
    return dims.pop()


class HermitianOperator(object):
    """
    A d x d complex Hermitian matrix, i.e. an observable.
    """

    def __init__(self, entries, label=None):
        """
        :param entries: square array-like, Hermitian within TAU_HERM
        :param label: optional display name
        :type label: str
        """
        self.entries = _hermitian_part(_as_matrix(entries, 'observable'), 'observable')
        self.dim = self.entries.shape[0]
        self.label = label
        self._spectrum = None

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim), label='I')

    @classmethod
    def zero(cls, dim):
        return cls(np.zeros((dim, dim)), label='0')

    @classmethod
    def from_matrix(cls, m, label=None):
        """ accepts a HermitianOperator unchanged, anything else goes through validation """
        if isinstance(m, cls):
            return m
        return cls(m, label=label)

    @property
    def norm(self):
        """ operator (spectral) norm """
        return float(np.linalg.norm(self.entries, 2))

    @property
    def scale(self):
        return max(1.0, self.norm)

    @property
    def trace(self):
        return float(np.trace(self.entries).real)

    @property
    def spectrum(self):
        """ cached clustered spectral decomposition """
        if self._spectrum is None or self._spectrum[0] != config.TAU_CLUSTER:
            self._spectrum = (config.TAU_CLUSTER, spectral_decompose(self))
        return self._spectrum[1]

    def _coerce(self, other):
        if not isinstance(other, HermitianOperator):
            other = HermitianOperator(other)
        check_dims(self, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return HermitianOperator(self.entries + other.entries)

    def __sub__(self, other):
        other = self._coerce(other)
        return HermitianOperator(self.entries - other.entries)

    def __neg__(self):
        return HermitianOperator(-self.entries)

    def __mul__(self, scalar):
        scalar = float(scalar)
        return HermitianOperator(scalar * self.entries)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / float(scalar))

    __div__ = __truediv__

    def anticommutator(self, other):
        """ {O, P} = OP + PO, Hermitian whenever O and P are """
        other = self._coerce(other)
        return HermitianOperator(self.entries.dot(other.entries) + other.entries.dot(self.entries))

    def square(self):
        return HermitianOperator(self.entries.dot(self.entries))

    def commutes_with(self, other, tol=None):
        other = self._coerce(other)
        tol = config.TAU_NUM if tol is None else tol
        c = self.entries.dot(other.entries) - other.entries.dot(self.entries)
        return np.max(np.abs(c)) <= tol * max(self.scale, other.scale) ** 2

    def is_close(self, other, tol=None):
        other = self._coerce(other)
        tol = config.TAU_NUM if tol is None else tol
        return np.max(np.abs(self.entries - other.entries)) <= tol * max(self.scale, other.scale)

    def __repr__(self):
        if self.label:
            return 'HermitianOperator({}, dim={})'.format(self.label, self.dim)
        return 'HermitianOperator(dim={})'.format(self.dim)


def kron(a, b):
    """ tensor product of two observables """
    label = '{}{}'.format(a.label, b.label) if a.label and b.label else None
    return HermitianOperator(np.kron(a.entries, b.entries), label=label)


def is_projector(m, tol=None):
    """ Hermitian and idempotent within tolerance """
    tol = config.TAU_NUM if tol is None else tol
    m = np.asarray(getattr(m, 'entries', m), dtype=complex)
    scale = _scale(m)
    if np.max(np.abs(m - m.conj().T)) > tol * scale:
        return False
    return np.max(np.abs(m.dot(m) - m)) <= tol * scale ** 2


class SpectralDecomposition(object):
    """
    Distinct eigenvalues, strictly increasing, paired with the orthogonal
    projectors onto their eigenspaces.
    """

    def __init__(self, eigenvalues, projectors, multiplicities=None):
        """
        :param eigenvalues: distinct reals, strictly increasing
        :param projectors: d x d projector arrays, one per eigenvalue
        :param multiplicities: eigenspace dimensions, derived from the projectors if omitted
        """
        if len(eigenvalues) != len(projectors) or not eigenvalues:
            raise ValidationError('need one projector per eigenvalue, got {} eigenvalues and {} projectors'.format(
                len(eigenvalues), len(projectors)))
        self.eigenvalues = tuple(float(x) for x in eigenvalues)
        self.projectors = tuple(np.asarray(p, dtype=complex) for p in projectors)
        for p in self.projectors:
            p.setflags(write=False)
        self.dim = self.projectors[0].shape[0]

        gap = config.TAU_CLUSTER * max([1.0] + [abs(x) for x in self.eigenvalues])
        for lo, hi in zip(self.eigenvalues, self.eigenvalues[1:]):
            if hi - lo < gap:
                raise ValidationError('eigenvalues {} and {} are not distinct'.format(lo, hi))

        if multiplicities is None:
            multiplicities = [int(round(np.trace(p).real)) for p in self.projectors]
        self.multiplicities = tuple(multiplicities)

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(zip(self.eigenvalues, self.projectors))

    def reconstruct(self):
        """ sum_i lambda_i P_i """
        return sum(lam * p for lam, p in self)

    def residuals(self):
        """
        Returns the worst entrywise deviation from P_i P_j = delta_ij P_i and from
        sum_i P_i = 1

        :rtype: dict
        """
        orth = 0.0
        for i, pi in enumerate(self.projectors):
            for j, pj in enumerate(self.projectors):
                target = pi if i == j else 0
                orth = max(orth, float(np.max(np.abs(pi.dot(pj) - target))))
        comp = float(np.max(np.abs(sum(self.projectors) - np.eye(self.dim))))
        return {'orthogonality': orth, 'completeness': comp}

    def __repr__(self):
        return 'SpectralDecomposition(eigenvalues={}, multiplicities={})'.format(
            list(self.eigenvalues), list(self.multiplicities))


def spectral_decompose(h):
    """
    Clustered spectral decomposition of an observable.

    Sorted eigenvalues closer than TAU_CLUSTER * max(1, ||H||_2) are merged into one
    cluster, represented by the multiplicity weighted mean.

    :type h: HermitianOperator
    :rtype: SpectralDecomposition
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)

    w, v = np.linalg.eigh(h.entries)
    gap = config.TAU_CLUSTER * h.scale

    clusters = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[i - 1] < gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    eigenvalues = []
    projectors = []
    for idx in clusters:
        vecs = v[:, idx]
        eigenvalues.append(float(np.mean(w[idx])))
        projectors.append(vecs.dot(vecs.conj().T))

    LOG.debug('spectrum of dim %d operator: %s', h.dim, eigenvalues)
    return SpectralDecomposition(eigenvalues, projectors, [len(idx) for idx in clusters])


def plus_minus_lambda(o):
    """
    Returns lambda if the clustered spectrum of o is {-lambda, +lambda} with
    lambda > 0, otherwise None
    """
    spec = o.spectrum
    if len(spec) != 2:
        return None
    lo, hi = spec.eigenvalues
    if hi <= 0 or abs(lo + hi) > config.TAU_NUM * o.scale:
        return None
    return (hi - lo) / 2


def projectors_pm(o):
    """
    The projectors Pi+ and Pi- = (1 +/- O / lambda) / 2 of an observable whose
    spectrum is {-lambda, +lambda}

    :type o: HermitianOperator
    :rtype: (HermitianOperator, HermitianOperator)
    """
    lam = plus_minus_lambda(o)
    if lam is None:
        raise DomainError('spectrum {} is not of the form {{-lambda, +lambda}}'.format(
            list(o.spectrum.eigenvalues)))
    eye = np.eye(o.dim)
    plus = HermitianOperator(0.5 * (eye + o.entries / lam), label='P+')
    minus = HermitianOperator(0.5 * (eye - o.entries / lam), label='P-')
    return plus, minus


class DensityOperator(object):
    """
    A quantum state: Hermitian, positive semidefinite, unit trace.
    """

    def __init__(self, entries, tag=None):
        """
        :param entries: square array-like
        :param tag: description of how the state was produced, e.g. "pure:0"
        :type tag: str
        """
        m = _hermitian_part(_as_matrix(entries, 'density operator'), 'density operator')
        trace = np.trace(m).real
        if abs(trace - 1) > config.TAU_NUM:
            raise ValidationError('density operator trace is {!r}, not 1'.format(trace))
        lowest = np.linalg.eigvalsh(m)[0]
        if lowest < -config.TAU_NUM:
            raise ValidationError('density operator has negative eigenvalue {:.3e}'.format(lowest))
        self._set(m, tag)

    def _set(self, m, tag):
        self.entries = m
        self.dim = m.shape[0]
        self.tag = tag

    @classmethod
    def trusted(cls, entries, tag=None):
        """
        Wraps a matrix that is a state by construction (e.g. a Luders post
        measurement state of a valid state) without repeating the checks
        """
        inst = cls.__new__(cls)
        m = np.array(entries, dtype=complex)
        m.setflags(write=False)
        inst._set(m, tag)
        return inst

    @classmethod
    def maximally_mixed(cls, dim):
        return cls(np.eye(dim) / dim, tag='maximally-mixed')

    @classmethod
    def basis_state(cls, dim, k):
        """ |k><k| in the computational basis """
        if not 0 <= k < dim:
            raise ValidationError('basis state {} does not exist in dimension {}'.format(k, dim))
        m = np.zeros((dim, dim))
        m[k, k] = 1.0
        return cls(m, tag='pure:{}'.format(k))

    @classmethod
    def from_vector(cls, psi, tag=None):
        psi = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValidationError('state vector is zero')
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()), tag=tag)

    def expectation(self, o):
        """ Tr[rho O] """
        check_dims(self, o)
        return float(np.trace(self.entries.dot(o.entries)).real)

    def purity(self):
        return float(np.trace(self.entries.dot(self.entries)).real)

    def __repr__(self):
        return 'DensityOperator(dim={}, tag={!r})'.format(self.dim, self.tag)


def random_density(dim, seed):
    """
    Hilbert-Schmidt random state GG^dag / Tr(GG^dag), G with i.i.d. standard
    complex Gaussian entries

    :type dim: int
    :type seed: twotime.rng.Seed
    :rtype: DensityOperator
    """
    if dim < 1:
        raise ValidationError('dimension must be positive, got {}'.format(dim))
    rng = generator(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g.dot(g.conj().T)
    return DensityOperator(m / np.trace(m).real, tag='random:{}'.format(int(seed)))


def random_pure_density(dim, seed):
    """
    Haar random pure state |psi><psi|

    :type dim: int
    :type seed: twotime.rng.Seed
    :rtype: DensityOperator
    """
    if dim < 1:
        raise ValidationError('dimension must be positive, got {}'.format(dim))
    rng = generator(seed)
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return DensityOperator.from_vector(psi, tag='random-pure:{}'.format(int(seed)))


def random_hermitian(dim, seed, scale=1.0):
    """ GUE-style random observable (A + A^dag) / 2 """
    rng = generator(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianOperator(scale * (a + a.conj().T) / 2)
