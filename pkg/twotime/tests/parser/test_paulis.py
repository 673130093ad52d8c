from itertools import product

import numpy as np

from twotime.exceptions import ValidationError
from twotime.parser import parse_observable
from twotime.paulis import (BasePauliFactor, XFactor, PauliFactorException, PauliExpression, pauli, to_operator,
                            vector_observable, word_matrix, SIGMA_X, SIGMA_Z)
from twotime.tests.base import BaseTwoTimeTestCase


class TestFactorRegistry(BaseTwoTimeTestCase):

    def test_lookup(self):
        self.assertIs(BasePauliFactor.get_factor('X'), XFactor)
        self.assertEqual(BasePauliFactor.symbols(), 'IXYZ')

    def test_unknown_symbol(self):
        with self.assertRaises(PauliFactorException):
            BasePauliFactor.get_factor('Q')

    def test_factor_text(self):
        self.assertEqual(str(XFactor()), 'X')


class TestToOperator(BaseTwoTimeTestCase):

    def test_z(self):
        self.assertMatrixClose(to_operator(parse_observable('Z')), np.diag([1, -1]))

    def test_linear_combination(self):
        o = to_operator(parse_observable('0.5*X + 0.5*Z'))
        self.assertMatrixClose(o, 0.5 * (SIGMA_X.entries + SIGMA_Z.entries))

    def test_xx_is_anti_diagonal(self):
        o = to_operator(parse_observable('XX'))
        self.assertEqual(o.dim, 4)
        self.assertMatrixClose(o, np.fliplr(np.eye(4)))

    def test_leftmost_factor_is_most_significant(self):
        self.assertMatrixClose(word_matrix('ZI'), np.diag([1, 1, -1, -1]))
        self.assertMatrixClose(word_matrix('IZ'), np.diag([1, -1, 1, -1]))

    def test_words_are_hermitian_involutions(self):
        for n in (1, 2, 3):
            for letters in product('IXYZ', repeat=n):
                o = pauli(''.join(letters))
                self.assertHermitian(o)
                self.assertMatrixClose(o.square(), np.eye(2 ** n), atol=1e-12)

    def test_label_defaults_to_canonical_text(self):
        o = to_operator(parse_observable('Z + 0.5*X'))
        self.assertEqual(o.label, '0.5*X + 1.0*Z')
        self.assertEqual(to_operator(parse_observable('Z'), label='sz').label, 'sz')


class TestPauliExpression(BaseTwoTimeTestCase):

    def test_validation(self):
        with self.assertRaises(ValidationError):
            PauliExpression([])
        with self.assertRaises(ValidationError):
            PauliExpression([(1.0, 'X'), (1.0, 'XY')])
        with self.assertRaises(ValidationError):
            PauliExpression([(1.0, 'XQ')])
        with self.assertRaises(ValidationError):
            PauliExpression([(1.0, '')])
        with self.assertRaises(ValidationError):
            PauliExpression([(1e308, 'X'), (1e308, 'X')])

    def test_equality_ignores_term_order(self):
        a = PauliExpression([(1.0, 'X'), (2.0, 'Z')])
        b = PauliExpression([(2.0, 'Z'), (1.0, 'X')])
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))
        self.assertNotEqual(a, PauliExpression([(1.0, 'X')]))


class TestVectorObservable(BaseTwoTimeTestCase):

    def test_components(self):
        o = vector_observable((1, 2, 3))
        self.assertMatrixClose(o, [[3, 1 - 2j], [1 + 2j, -3]])

    def test_arity(self):
        with self.assertRaises(ValidationError):
            vector_observable((1, 0))
