import sys
from functools import reduce

import numpy as np
import six

from twotime.exceptions import TwoTimeException, ValidationError
from twotime.operators import HermitianOperator


class PauliFactorException(TwoTimeException): pass


class UnicodeMixin(object):
    if sys.version_info > (3, 0):
        __str__ = lambda x: x.__unicode__()
    else:
        __str__ = lambda x: six.text_type(x).encode('utf-8')


class BasePauliFactor(UnicodeMixin):
    # The letter that identifies this factor in a pauli word
    symbol = None

    # 2x2 matrix of the single qubit operator
    matrix = None

    def __unicode__(self):
        if self.symbol is None:
            raise PauliFactorException("symbol is None")
        return self.symbol

    @classmethod
    def get_factor(cls, symbol):
        if not hasattr(cls, 'factormap'):
            cls.factormap = {}
            def _recurse(klass):
                if klass.symbol:
                    cls.factormap[klass.symbol] = klass
                for subklass in klass.__subclasses__():
                    _recurse(subklass)
            _recurse(cls)
        try:
            return cls.factormap[symbol]
        except KeyError:
            raise PauliFactorException("{} doesn't map to a pauli factor".format(symbol))

    @classmethod
    def symbols(cls):
        cls.get_factor('I')
        return ''.join(sorted(cls.factormap))


class IdentityFactor(BasePauliFactor):
    symbol = 'I'
    matrix = np.array([[1, 0], [0, 1]], dtype=complex)


class XFactor(BasePauliFactor):
    symbol = 'X'
    matrix = np.array([[0, 1], [1, 0]], dtype=complex)


class YFactor(BasePauliFactor):
    symbol = 'Y'
    matrix = np.array([[0, -1j], [1j, 0]], dtype=complex)


class ZFactor(BasePauliFactor):
    symbol = 'Z'
    matrix = np.array([[1, 0], [0, -1]], dtype=complex)


def word_matrix(word):
    """ tensor product of the single qubit factors of a pauli word, leftmost factor first """
    return reduce(np.kron, [BasePauliFactor.get_factor(c).matrix for c in word])


def pauli(word):
    """
    :param word: string over I, X, Y, Z
    :rtype: HermitianOperator
    """
    return HermitianOperator(word_matrix(word), label=word)


SIGMA_X = pauli('X')
SIGMA_Y = pauli('Y')
SIGMA_Z = pauli('Z')


def vector_observable(r, label=None):
    """
    r . sigma for a real 3-vector r

    :rtype: HermitianOperator
    """
    r = [float(x) for x in r]
    if len(r) != 3:
        raise ValidationError('expected a 3-vector, got {} components'.format(len(r)))
    m = r[0] * SIGMA_X.entries + r[1] * SIGMA_Y.entries + r[2] * SIGMA_Z.entries
    return HermitianOperator(m, label=label)


def _format_coefficient(c):
    return repr(float(c))


class PauliExpression(UnicodeMixin):
    """
    A real linear combination of equal length pauli words.

    Terms are kept canonical: one term per word (coefficients of repeated words
    are added) and sorted by word.
    """

    def __init__(self, terms):
        """
        :param terms: iterable of (coefficient, word) pairs
        """
        merged = {}
        n = None
        for coeff, word in terms:
            if not isinstance(word, six.string_types) or not word:
                raise ValidationError('pauli word must be a non-empty string, got {!r}'.format(word))
            bad = [c for c in word if c not in BasePauliFactor.symbols()]
            if bad:
                raise ValidationError("pauli word '{}' has invalid letter '{}'".format(word, bad[0]))
            if n is None:
                n = len(word)
            elif len(word) != n:
                raise ValidationError('mixed word lengths ({} vs {})'.format(n, len(word)))
            merged[word] = merged.get(word, 0.0) + float(coeff)
            if not np.isfinite(merged[word]):
                raise ValidationError("coefficient of pauli word '{}' is not finite".format(word))
        if n is None:
            raise ValidationError('pauli expression has no terms')

        self.n = n
        self.terms = tuple((merged[w], w) for w in sorted(merged))

    @property
    def dim(self):
        return 2 ** self.n

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return self.n == other.n and self.terms == other.terms
        return False

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.terms)

    def __unicode__(self):
        out = []
        for i, (coeff, word) in enumerate(self.terms):
            if i == 0:
                out.append('{}*{}'.format(_format_coefficient(coeff), word))
            elif coeff < 0:
                out.append('- {}*{}'.format(_format_coefficient(-coeff), word))
            else:
                out.append('+ {}*{}'.format(_format_coefficient(coeff), word))
        return u' '.join(out)

    def __repr__(self):
        return 'PauliExpression({})'.format(list(self.terms))


def to_operator(expression, label=None):
    """
    sum_k c_k (tensor product of the factors of word_k), a 2^n x 2^n observable

    :type expression: PauliExpression
    :rtype: HermitianOperator
    """
    m = sum(coeff * word_matrix(word) for coeff, word in expression.terms)
    return HermitianOperator(m, label=label if label is not None else six.text_type(expression))
