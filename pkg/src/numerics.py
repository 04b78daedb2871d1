# Copyright 2026 Google LLC.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Dense complex matrix helpers shared by every StineKernel module.

Operators S, T on H, vectors a, b (stored as d x 1 columns), Gram and Choi
matrices are all plain complex128 numpy arrays. This module owns the one
validating constructor, the Hermitian eigensolver wrapper and the rank
decision, plus the exception hierarchy used across the package.
"""

import dataclasses
from typing import Any

from absl import logging
import numpy as np
from scipy import linalg

DEFAULT_RANK_RTOL = 1e-10
DEFAULT_RANK_ATOL = 1e-12
DEFAULT_HERM_TOL = 1e-10

ComplexMatrix = np.ndarray


class StineKernelError(ValueError):
  """Base class for input and construction errors."""


class NonFiniteEntry(StineKernelError):
  """A matrix contains NaN or Inf."""


class ShapeMismatch(StineKernelError):
  """Operand shapes are inconsistent."""


class NotHermitian(StineKernelError):
  """A matrix required to be Hermitian is not, within tolerance."""


class NoConvergence(StineKernelError):
  """The eigensolver failed to converge."""


class NotSquareOfInteger(StineKernelError):
  """A Choi matrix side length is not d**2 for an integer d."""


class RankOutOfRange(StineKernelError):
  """A requested Kraus rank lies outside 1..dim**2."""


class EmptyFamily(StineKernelError):
  """A kernel point family is empty."""


class NotPSD(StineKernelError):
  """A Gram matrix has an eigenvalue below the PSD tolerance.

  Attributes:
    min_eigenvalue: The offending smallest eigenvalue.
  """

  def __init__(self, message: str, min_eigenvalue: float) -> None:
    super().__init__(message)
    self.min_eigenvalue = min_eigenvalue


class NotCompletelyPositive(NotPSD):
  """A Choi matrix is not positive semidefinite, so the map is not CP."""


@dataclasses.dataclass(frozen=True)
class HermitianEig:
  """Eigendecomposition of a Hermitian matrix.

  Attributes:
    eigenvalues: Real eigenvalues in nonincreasing order.
    eigenvectors: Unitary matrix, column alpha pairs with eigenvalue alpha.
  """
  eigenvalues: np.ndarray
  eigenvectors: np.ndarray

  @property
  def lambda_max(self) -> float:
    if not self.eigenvalues.size:
      return 0.0
    return float(self.eigenvalues[0])

  @property
  def lambda_min(self) -> float:
    if not self.eigenvalues.size:
      return 0.0
    return float(self.eigenvalues[-1])


def as_matrix(data: Any) -> ComplexMatrix:
  """Returns `data` as a finite 2-D complex128 array.

  One dimensional input is treated as a column vector.

  Args:
    data: Anything numpy can turn into a complex array.

  Returns:
    A fresh complex128 array of rank 2.

  Raises:
    ShapeMismatch: If the data is not 1-D or 2-D.
    NonFiniteEntry: If any entry is NaN or infinite.
  """
  matrix = np.array(data, dtype=np.complex128)
  if matrix.ndim == 1:
    matrix = matrix.reshape(-1, 1)
  if matrix.ndim != 2:
    raise ShapeMismatch(f'Expected a matrix, got shape {matrix.shape}')
  if not np.all(np.isfinite(matrix)):
    raise NonFiniteEntry('Matrix entries must be finite')
  return matrix


def basis_vector(dim: int, k: int) -> ComplexMatrix:
  """Returns the standard basis column e_k (0-based) of C^dim."""
  vector = np.zeros((dim, 1), dtype=np.complex128)
  vector[k, 0] = 1.0
  return vector


def matrix_unit(dim: int, i: int, j: int) -> ComplexMatrix:
  """Returns E_ij = |e_i><e_j| (0-based)."""
  unit = np.zeros((dim, dim), dtype=np.complex128)
  unit[i, j] = 1.0
  return unit


def adjoint(matrix: ComplexMatrix) -> ComplexMatrix:
  """Conjugate transpose."""
  return np.conj(matrix).T


def kron(first: ComplexMatrix, second: ComplexMatrix) -> ComplexMatrix:
  """Kronecker product; block (i, j) of the result is first[i, j] * second.

  Row (i, k) of the result sits at index i * second.shape[0] + k, which is
  the H-major flattening used for H (x) H_Khat throughout.
  """
  return np.kron(first, second)


def inner(a: ComplexMatrix, b: ComplexMatrix) -> complex:
  """Inner product <a, b>, conjugate-linear in `a`."""
  return complex(np.vdot(a, b))


def max_norm(matrix: ComplexMatrix) -> float:
  if not matrix.size:
    return 0.0
  return float(np.max(np.abs(matrix)))


def frobenius_norm(matrix: ComplexMatrix) -> float:
  return float(np.linalg.norm(matrix))


def hermiticity_defect(matrix: ComplexMatrix) -> float:
  """Returns max |M - M*| over the entries."""
  return max_norm(matrix - adjoint(matrix))


def hermitian_eig(matrix: ComplexMatrix,
                  herm_tol: float = DEFAULT_HERM_TOL) -> HermitianEig:
  """Diagonalizes a Hermitian matrix with eigenvalues in nonincreasing order.

  The Hermitian part (M + M*) / 2 is handed to LAPACK so that admissible
  rounding noise in the input does not leak into the spectrum.

  Args:
    matrix: A square complex matrix.
    herm_tol: Relative Hermiticity tolerance; the input is accepted when
      max|M - M*| <= herm_tol * (1 + max|M|).

  Returns:
    The eigendecomposition.

  Raises:
    ShapeMismatch: If the matrix is not square.
    NotHermitian: If the matrix is not Hermitian within tolerance.
    NoConvergence: If LAPACK reports a failure.
  """
  if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
    raise ShapeMismatch(f'Expected a square matrix, got {matrix.shape}')
  if not matrix.size:
    return HermitianEig(
        eigenvalues=np.zeros(0), eigenvectors=np.zeros((0, 0), np.complex128))
  defect = hermiticity_defect(matrix)
  if defect > herm_tol * (1.0 + max_norm(matrix)):
    raise NotHermitian(
        f'Matrix is not Hermitian: max |M - M*| = {defect:.3e}')
  hermitian_part = 0.5 * (matrix + adjoint(matrix))
  try:
    eigenvalues, eigenvectors = linalg.eigh(hermitian_part)
  except np.linalg.LinAlgError as e:
    raise NoConvergence(f'Hermitian eigensolver failed: {e}') from e
  order = np.arange(eigenvalues.size)[::-1]
  return HermitianEig(
      eigenvalues=np.asarray(eigenvalues[order], dtype=np.float64),
      eigenvectors=np.asarray(eigenvectors[:, order], dtype=np.complex128))


def psd_cutoff(eig: HermitianEig,
               rank_rtol: float = DEFAULT_RANK_RTOL,
               rank_atol: float = DEFAULT_RANK_ATOL) -> float:
  """Returns the eigenvalue threshold max(rank_atol, rank_rtol * lambda_max)."""
  return max(rank_atol, rank_rtol * max(eig.lambda_max, 0.0))


def psd_rank(eig: HermitianEig,
             rank_rtol: float = DEFAULT_RANK_RTOL,
             rank_atol: float = DEFAULT_RANK_ATOL) -> int:
  """Counts eigenvalues strictly above the PSD cutoff."""
  cutoff = psd_cutoff(eig, rank_rtol, rank_atol)
  return int(np.count_nonzero(eig.eigenvalues > cutoff))


def opnorm(matrix: ComplexMatrix) -> float:
  """Operator 2-norm, computed as sqrt(lambda_max(M* M))."""
  if not matrix.size:
    return 0.0
  eig = hermitian_eig(adjoint(matrix) @ matrix)
  return float(np.sqrt(max(eig.lambda_max, 0.0)))


def check_psd(eig: HermitianEig, psd_tol: float, what: str) -> None:
  """Raises NotPSD unless lambda_min >= -psd_tol * (1 + lambda_max)."""
  floor = -psd_tol * (1.0 + max(eig.lambda_max, 0.0))
  if eig.lambda_min < floor:
    raise NotPSD(
        f'{what} is not positive semidefinite: minimum eigenvalue '
        f'{eig.lambda_min:.6e} < {floor:.3e}', eig.lambda_min)
  if eig.lambda_min < 0:
    # Negatives below the rank cutoff are rounding noise.
    log = (logging.warning if -eig.lambda_min > psd_cutoff(eig)
           else logging.debug)
    log('Clamping %r negative eigenvalue(s) of %s, smallest %r',
        int(np.count_nonzero(eig.eigenvalues < 0)), what, eig.lambda_min)
