import math

import numpy as np

from twotime.exceptions import ValidationError, ParameterError, DimensionMismatch
from twotime.gamma import (ObservableSubspace, pauli_basis, standard_gamma_basis, is_gamma_basis, is_dichotomic,
                           anticommutator_residuals, clifford_dimension, random_unitary, conjugate, embed)
from twotime.operators import HermitianOperator
from twotime.paulis import SIGMA_X, SIGMA_Y, SIGMA_Z
from twotime.rng import Seed
from twotime.tests.base import BaseTwoTimeTestCase


class TestObservableSubspace(BaseTwoTimeTestCase):

    def test_rejects_dependent_basis(self):
        with self.assertRaises(ValidationError):
            ObservableSubspace([SIGMA_X, 2 * SIGMA_X])
        with self.assertRaises(ValidationError):
            ObservableSubspace([SIGMA_X, SIGMA_Z, SIGMA_X + SIGMA_Z])

    def test_rejects_mixed_dimensions(self):
        with self.assertRaises(DimensionMismatch):
            ObservableSubspace([SIGMA_X, HermitianOperator.identity(4)])

    def test_rejects_empty(self):
        with self.assertRaises(ValidationError):
            ObservableSubspace([])

    def test_labels(self):
        subspace = pauli_basis()
        self.assertEqual(subspace.labels, ('X', 'Y', 'Z'))
        self.assertEqual(len(subspace), 3)
        self.assertEqual(subspace.matrix_dim, 2)


class TestStandardBases(BaseTwoTimeTestCase):

    def test_pauli_basis(self):
        basis = pauli_basis().basis
        self.assertMatrixClose(basis[0].anticommutator(basis[1]), np.zeros((2, 2)))
        for o in basis:
            self.assertMatrixClose(o.square(), np.eye(2))
            self.assertAlmostEqual(o.trace, 0.0)

    def test_three_is_the_pauli_basis(self):
        for a, b in zip(standard_gamma_basis(3).basis, pauli_basis().basis):
            self.assertMatrixClose(a, b)

    def test_four_has_zero_residual(self):
        residuals = anticommutator_residuals(standard_gamma_basis(4).basis)
        self.assertEqual(len(residuals), 10)
        self.assertEqual(max(residuals.values()), 0.0)

    def test_five_is_dichotomic(self):
        subspace = standard_gamma_basis(5)
        self.assertEqual(subspace.matrix_dim, 4)
        self.assertTrue(all(is_dichotomic(o) for o in subspace.basis))
        self.assertTrue(is_gamma_basis(subspace)[0])

    def test_out_of_range(self):
        for d in (0, 6):
            with self.assertRaises(ParameterError):
                standard_gamma_basis(d)

    def test_clifford_dimension(self):
        self.assertEqual([clifford_dimension(standard_gamma_basis(d)) for d in range(1, 6)], [0, 1, 1, 2, 2])


class TestIsGammaBasis(BaseTwoTimeTestCase):

    def test_pauli(self):
        passes, residual = is_gamma_basis(pauli_basis())
        self.assertTrue(passes)
        self.assertAlmostEqual(residual, 0.0, places=12)

    def test_identity_and_sigma_z(self):
        passes, residual = is_gamma_basis(ObservableSubspace([HermitianOperator.identity(2), SIGMA_Z]))
        self.assertFalse(passes)
        self.assertAlmostEqual(residual, 2.0, places=12)

    def test_sigma_x_and_tilted_sum(self):
        tilted = (SIGMA_X + SIGMA_Z) / math.sqrt(2)
        passes, residual = is_gamma_basis(ObservableSubspace([SIGMA_X, tilted]))
        self.assertFalse(passes)
        self.assertAlmostEqual(residual, math.sqrt(2), places=12)


class TestIsDichotomic(BaseTwoTimeTestCase):

    def test_examples(self):
        self.assertTrue(is_dichotomic(SIGMA_X))
        self.assertFalse(is_dichotomic(HermitianOperator.identity(2)))
        self.assertTrue(is_dichotomic((SIGMA_X + SIGMA_Z) / math.sqrt(2)))

    def test_scaled_and_projector(self):
        self.assertFalse(is_dichotomic(2 * SIGMA_Y))
        self.assertFalse(is_dichotomic(HermitianOperator(np.diag([1, 0]))))
        self.assertFalse(is_dichotomic(HermitianOperator(np.diag([1, -1, 0]))))


class TestTransforms(BaseTwoTimeTestCase):

    def test_random_unitary(self):
        u = random_unitary(4, Seed(3))
        self.assertMatrixClose(u.conj().T.dot(u), np.eye(4), atol=1e-12)
        self.assertTrue(np.array_equal(u, random_unitary(4, Seed(3))))

    def test_conjugation_preserves_gamma_relations(self):
        for k in range(10):
            subspace = conjugate(standard_gamma_basis(5), random_unitary(4, Seed(k)))
            passes, residual = is_gamma_basis(subspace)
            self.assertTrue(passes)
            self.assertLess(residual, 1e-12)

    def test_conjugate_checks_shape(self):
        with self.assertRaises(DimensionMismatch):
            conjugate(pauli_basis(), np.eye(4))

    def test_embed(self):
        subspace = embed(pauli_basis(), 2)
        self.assertEqual(subspace.matrix_dim, 4)
        self.assertEqual(subspace.labels, ('XI', 'YI', 'ZI'))
        self.assertTrue(is_gamma_basis(subspace)[0])
