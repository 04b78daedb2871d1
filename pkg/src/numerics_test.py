# Copyright 2026 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Tests for src.numerics."""

import unittest

import mock
import numpy as np

from src import numerics


def _random_matrix(generator, rows, cols):
  return (generator.standard_normal((rows, cols)) +
          1j * generator.standard_normal((rows, cols)))


def _random_unitary(generator, dim):
  q, r = np.linalg.qr(_random_matrix(generator, dim, dim))
  return q * (np.diag(r) / np.abs(np.diag(r)))


class NumericsTest(unittest.TestCase):

  def setUp(self):
    super().setUp()
    self.generator = np.random.default_rng(2021)

  def test_as_matrix_turns_vectors_into_columns(self):
    vector = numerics.as_matrix([1, 2j])
    self.assertEqual(vector.shape, (2, 1))
    self.assertEqual(vector.dtype, np.complex128)

  def test_as_matrix_rejects_non_finite_entries(self):
    with self.assertRaises(numerics.NonFiniteEntry):
      numerics.as_matrix([[1.0, np.nan]])
    with self.assertRaises(numerics.NonFiniteEntry):
      numerics.as_matrix([[np.inf]])

  def test_as_matrix_rejects_higher_rank(self):
    with self.assertRaises(numerics.ShapeMismatch):
      numerics.as_matrix(np.zeros((2, 2, 2)))

  def test_adjoint_transposes_and_conjugates(self):
    np.testing.assert_array_equal(
        numerics.adjoint(np.array([[0, 1], [0, 0]], dtype=complex)),
        np.array([[0, 0], [1, 0]]))
    np.testing.assert_array_equal(
        numerics.adjoint(np.array([[1j]])), np.array([[-1j]]))

  def test_adjoint_is_an_involution(self):
    matrix = _random_matrix(self.generator, 3, 3)
    np.testing.assert_array_equal(
        numerics.adjoint(numerics.adjoint(matrix)), matrix)
    self.assertAlmostEqual(
        numerics.frobenius_norm(matrix),
        numerics.frobenius_norm(numerics.adjoint(matrix)),
        places=13)

  def test_kron_of_identities(self):
    np.testing.assert_array_equal(
        numerics.kron(np.eye(2), np.eye(2)), np.eye(4))

  def test_kron_block_layout(self):
    flip = np.array([[0, 1], [1, 0]])
    expected = np.block([[np.zeros((2, 2)), np.eye(2)],
                         [np.eye(2), np.zeros((2, 2))]])
    np.testing.assert_array_equal(numerics.kron(flip, np.eye(2)), expected)

  def test_kron_mixed_product_law(self):
    a, b, c, d = (_random_matrix(self.generator, 2, 2) for _ in range(4))
    left = numerics.kron(a, b) @ numerics.kron(c, d)
    right = numerics.kron(a @ c, b @ d)
    self.assertLessEqual(
        numerics.frobenius_norm(left - right),
        1e-12 * numerics.frobenius_norm(right))

  def test_inner_is_conjugate_linear_in_first_argument(self):
    a = np.array([[1j], [0]])
    b = np.array([[1], [0]])
    self.assertEqual(numerics.inner(a, b), -1j)

  def test_matrix_unit_and_basis_vector(self):
    unit = numerics.matrix_unit(3, 0, 2)
    np.testing.assert_array_equal(
        unit,
        numerics.basis_vector(3, 0) @ numerics.adjoint(
            numerics.basis_vector(3, 2)))

  def test_hermitian_eig_diagonal(self):
    eig = numerics.hermitian_eig(np.diag([3.0, 1.0]).astype(complex))
    np.testing.assert_allclose(eig.eigenvalues, [3.0, 1.0])
    np.testing.assert_allclose(np.abs(eig.eigenvectors), np.eye(2))

  def test_hermitian_eig_pauli_x(self):
    pauli_x = np.array([[0, 1], [1, 0]], dtype=complex)
    eig = numerics.hermitian_eig(pauli_x)
    np.testing.assert_allclose(eig.eigenvalues, [1.0, -1.0], atol=1e-15)
    np.testing.assert_allclose(
        np.abs(eig.eigenvectors), np.full((2, 2), 1 / np.sqrt(2)))
    for alpha in range(2):
      column = eig.eigenvectors[:, alpha]
      np.testing.assert_allclose(
          pauli_x @ column, eig.eigenvalues[alpha] * column, atol=1e-12)

  def test_hermitian_eig_reconstructs_random_hermitian(self):
    unitary = _random_unitary(self.generator, 5)
    spectrum = self.generator.standard_normal(5)
    matrix = unitary @ np.diag(spectrum) @ numerics.adjoint(unitary)
    eig = numerics.hermitian_eig(matrix)

    vectors = eig.eigenvectors
    reconstructed = vectors @ np.diag(eig.eigenvalues) @ numerics.adjoint(
        vectors)
    self.assertLessEqual(
        numerics.frobenius_norm(reconstructed - matrix),
        1e-9 * (1 + numerics.frobenius_norm(matrix)))
    self.assertLessEqual(
        numerics.max_norm(numerics.adjoint(vectors) @ vectors - np.eye(5)),
        1e-10)
    self.assertAlmostEqual(
        float(np.sum(eig.eigenvalues)),
        float(np.trace(matrix).real),
        delta=1e-9 * (1 + abs(np.trace(matrix))))
    self.assertTrue(np.all(np.diff(eig.eigenvalues) <= 0))
    np.testing.assert_allclose(eig.eigenvalues, np.sort(spectrum)[::-1])

  def test_hermitian_eig_columns_are_eigenvectors(self):
    matrix = _random_matrix(self.generator, 6, 6)
    matrix = matrix + numerics.adjoint(matrix)
    eig = numerics.hermitian_eig(matrix)
    scale = 1e-9 * (1 + abs(eig.lambda_max))
    for alpha in range(6):
      column = eig.eigenvectors[:, alpha]
      self.assertLessEqual(
          np.max(np.abs(matrix @ column - eig.eigenvalues[alpha] * column)),
          scale)

  def test_hermitian_eig_rejects_non_hermitian(self):
    with self.assertRaises(numerics.NotHermitian):
      numerics.hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))

  def test_hermitian_eig_rejects_rectangular(self):
    with self.assertRaises(numerics.ShapeMismatch):
      numerics.hermitian_eig(np.zeros((2, 3), dtype=complex))

  def test_hermitian_eig_wraps_solver_failure(self):
    with mock.patch.object(
        numerics.linalg, 'eigh',
        side_effect=np.linalg.LinAlgError('did not converge')):
      with self.assertRaises(numerics.NoConvergence):
        numerics.hermitian_eig(np.eye(2, dtype=complex))

  def test_psd_rank(self):
    cases = [
        ([2.0, 0.0], 1),
        ([1.0, 1.0, 1.0, 1.0], 4),
        ([1.0, 5e-11], 1),
        ([0.0, 0.0], 0),
    ]
    for eigenvalues, expected in cases:
      eig = numerics.HermitianEig(
          eigenvalues=np.array(eigenvalues),
          eigenvectors=np.eye(len(eigenvalues), dtype=complex))
      self.assertEqual(numerics.psd_rank(eig), expected, eigenvalues)

  def test_psd_cutoff_has_absolute_floor(self):
    eig = numerics.HermitianEig(
        eigenvalues=np.array([1e-20]), eigenvectors=np.eye(1, dtype=complex))
    self.assertEqual(numerics.psd_cutoff(eig), numerics.DEFAULT_RANK_ATOL)
    self.assertEqual(numerics.psd_rank(eig), 0)

  def test_psd_rank_is_scale_invariant(self):
    eigenvalues = np.array([4.0, 1.0, 3e-11])
    for scale in (1e-6, 1.0, 1e6):
      eig = numerics.HermitianEig(
          eigenvalues=scale * eigenvalues,
          eigenvectors=np.eye(3, dtype=complex))
      self.assertEqual(numerics.psd_rank(eig), 2)

  def test_opnorm(self):
    self.assertAlmostEqual(
        numerics.opnorm(np.diag([3.0, -5.0]).astype(complex)), 5.0, places=12)
    nilpotent = np.array([[0, 2], [0, 0]], dtype=complex)
    self.assertAlmostEqual(numerics.opnorm(nilpotent), 2.0, places=12)

  def test_check_psd_raises_below_tolerance(self):
    eig = numerics.hermitian_eig(np.diag([1.0, -0.5]).astype(complex))
    with self.assertRaises(numerics.NotPSD) as context:
      numerics.check_psd(eig, 1e-10, 'Test matrix')
    self.assertAlmostEqual(context.exception.min_eigenvalue, -0.5)

  def test_check_psd_accepts_rounding_noise(self):
    eig = numerics.hermitian_eig(np.diag([1.0, -1e-14]).astype(complex))
    with mock.patch.object(numerics.logging, 'warning') as mock_warning, \
        mock.patch.object(numerics.logging, 'debug') as mock_debug:
      numerics.check_psd(eig, 1e-10, 'Test matrix')
    mock_warning.assert_not_called()
    mock_debug.assert_called_once()

  def test_check_psd_warns_when_clamping_above_rank_cutoff(self):
    eig = numerics.hermitian_eig(np.diag([1.0, -1e-6]).astype(complex))
    with mock.patch.object(numerics.logging, 'warning') as mock_warning, \
        mock.patch.object(numerics.logging, 'debug') as mock_debug:
      numerics.check_psd(eig, 1e-5, 'Test matrix')
    mock_warning.assert_called_once()
    _, count, what, smallest = mock_warning.call_args[0]
    self.assertEqual((count, what), (1, 'Test matrix'))
    self.assertAlmostEqual(smallest, -1e-6, places=15)
    mock_debug.assert_not_called()

  def test_check_psd_is_silent_for_psd_input(self):
    eig = numerics.hermitian_eig(np.diag([1.0, 0.0]).astype(complex))
    with mock.patch.object(numerics.logging, 'warning') as mock_warning:
      numerics.check_psd(eig, 1e-10, 'Test matrix')
    mock_warning.assert_not_called()


if __name__ == '__main__':
  unittest.main()
