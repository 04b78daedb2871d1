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
"""Completely positive maps on B(H) stored by their matrix-unit table.

A map phi on d x d matrices is kept as the array `blocks` of shape
(d, d, d, d) with blocks[i, j] = phi(E_ij). The Choi matrix is the same data
reshaped with row index i * d + k and column index j * d + l:

  C[i * d + k, j * d + l] = blocks[i, j, k, l].

Kraus operators follow the Heisenberg convention phi(S) = sum_a V_a* S V_a.
"""

import dataclasses
import hashlib
from typing import Optional, Sequence, Tuple

from absl import logging
import numpy as np
from scipy import linalg

from src import numerics

DEFAULT_CP_TOL = 1e-10
KRAUS_CONVENTION = 'heisenberg'


@dataclasses.dataclass(frozen=True)
class CPCertificate:
  """Evidence that the Choi matrix passed the CP test.

  Attributes:
    min_eigenvalue: Smallest Choi eigenvalue.
    max_eigenvalue: Largest Choi eigenvalue.
    cp_tol: Tolerance the test was run with.
  """
  min_eigenvalue: float
  max_eigenvalue: float
  cp_tol: float


@dataclasses.dataclass(frozen=True, eq=False)
class CPMap:
  """A linear map on B(C^dim) given by its matrix-unit table.

  Attributes:
    dim: Hilbert space dimension d.
    blocks: Array of shape (d, d, d, d), blocks[i, j] = phi(E_ij).
    certificate: The CP certificate, or None for an unvalidated table.
  """
  dim: int
  blocks: np.ndarray
  certificate: Optional[CPCertificate] = None

  @property
  def validated(self) -> bool:
    return self.certificate is not None


@dataclasses.dataclass(frozen=True)
class ChannelClass:
  """Result of `classify`."""
  cp: bool
  unital: bool
  trace_preserving: bool
  min_choi_eigenvalue: float
  kraus_rank: int


@dataclasses.dataclass(frozen=True, eq=False)
class KrausSet:
  """Ordered Kraus operators with phi(S) = sum_a V_a* S V_a.

  An empty tuple of operators represents the zero map.
  """
  dim: int
  ops: Tuple[np.ndarray, ...]

  def __len__(self) -> int:
    return len(self.ops)

  def apply(self, operator: np.ndarray) -> np.ndarray:
    """Returns sum_a V_a* S V_a."""
    result = np.zeros((self.dim, self.dim), dtype=np.complex128)
    for op in self.ops:
      result += numerics.adjoint(op) @ operator @ op
    return result

  def to_schrodinger(self) -> Tuple[np.ndarray, ...]:
    """Returns A_a = V_a*, so that phi(S) = sum_a A_a S A_a*.

    The trace-dual map is then rho -> sum_a A_a* rho A_a.
    """
    return tuple(numerics.adjoint(op) for op in self.ops)


def _choi_from_blocks(blocks: np.ndarray) -> np.ndarray:
  dim = blocks.shape[0]
  return blocks.transpose(0, 2, 1, 3).reshape(dim * dim, dim * dim)


def _certify(choi_matrix: np.ndarray, cp_tol: float) -> CPCertificate:
  """Runs the Choi eigenvalue test.

  Raises:
    NotHermitian: If the Choi matrix is not Hermitian.
    NotCompletelyPositive: If its minimum eigenvalue is below tolerance.
  """
  eig = numerics.hermitian_eig(choi_matrix)
  floor = -cp_tol * (1.0 + max(eig.lambda_max, 0.0))
  if eig.lambda_min < floor:
    raise numerics.NotCompletelyPositive(
        f'Choi matrix has minimum eigenvalue '
        f'{eig.lambda_min:.12g} (tolerance {floor:.3e})', eig.lambda_min)
  return CPCertificate(
      min_eigenvalue=eig.lambda_min,
      max_eigenvalue=eig.lambda_max,
      cp_tol=cp_tol)


def from_blocks(blocks: np.ndarray,
                validate: bool = True,
                cp_tol: float = DEFAULT_CP_TOL) -> CPMap:
  """Builds a map from its table blocks[i, j] = phi(E_ij).

  Args:
    blocks: Array of shape (d, d, d, d).
    validate: Whether to run the CP test. Unvalidated tables are only meant
      for negative controls (e.g. the transpose map).
    cp_tol: Relative tolerance of the CP test.

  Returns:
    The map.

  Raises:
    ShapeMismatch: If the table is not (d, d, d, d).
    NonFiniteEntry: If the table has NaN or Inf.
    NotHermitian: If blocks[j, i] != blocks[i, j]* within tolerance.
    NotCompletelyPositive: If `validate` and the Choi test fails.
  """
  blocks = np.array(blocks, dtype=np.complex128)
  if blocks.ndim != 4 or len(set(blocks.shape)) != 1:
    raise numerics.ShapeMismatch(
        f'Expected a (d, d, d, d) table, got shape {blocks.shape}')
  if not np.all(np.isfinite(blocks)):
    raise numerics.NonFiniteEntry('Table entries must be finite')
  dim = blocks.shape[0]
  if dim < 1:
    raise numerics.ShapeMismatch('Dimension must be at least 1')
  choi_matrix = _choi_from_blocks(blocks)
  defect = numerics.hermiticity_defect(choi_matrix)
  if defect > numerics.DEFAULT_HERM_TOL * (1.0 +
                                           numerics.max_norm(choi_matrix)):
    raise numerics.NotHermitian(
        f'Table is not Hermitian symmetric: defect {defect:.3e}')
  certificate = _certify(choi_matrix, cp_tol) if validate else None
  return CPMap(dim=dim, blocks=blocks, certificate=certificate)


def from_kraus(dim: int, ops: Sequence[np.ndarray]) -> CPMap:
  """Builds phi(S) = sum_a V_a* S V_a.

  Entrywise, phi(E_ij)[k, l] = sum_a conj(V_a[i, k]) V_a[j, l].

  Args:
    dim: Dimension d.
    ops: Kraus operators, each d x d. May be empty (zero map).

  Returns:
    The validated map.

  Raises:
    ShapeMismatch: If an operator is not dim x dim.
  """
  if dim < 1:
    raise numerics.ShapeMismatch('Dimension must be at least 1')
  matrices = [numerics.as_matrix(op) for op in ops]
  for op in matrices:
    if op.shape != (dim, dim):
      raise numerics.ShapeMismatch(
          f'Kraus operator has shape {op.shape}, expected {(dim, dim)}')
  if matrices:
    stacked = np.stack(matrices)
    blocks = np.einsum('aik,ajl->ijkl', np.conj(stacked), stacked)
  else:
    blocks = np.zeros((dim,) * 4, dtype=np.complex128)
  return CPMap(
      dim=dim,
      blocks=blocks,
      certificate=_certify(_choi_from_blocks(blocks), DEFAULT_CP_TOL))


def zero_map(dim: int) -> CPMap:
  return from_kraus(dim, [])


def from_choi(choi_matrix: np.ndarray,
              cp_tol: float = DEFAULT_CP_TOL) -> CPMap:
  """Builds a map from its d^2 x d^2 Choi matrix.

  Args:
    choi_matrix: The Choi matrix, row index i * d + k.
    cp_tol: Relative tolerance of the CP test.

  Returns:
    The validated map.

  Raises:
    NotSquareOfInteger: If the matrix is not d^2 x d^2.
    NotHermitian: If the matrix is not Hermitian.
    NotCompletelyPositive: If the minimum eigenvalue is below tolerance.
  """
  choi_matrix = numerics.as_matrix(choi_matrix)
  side = choi_matrix.shape[0]
  dim = int(round(np.sqrt(side)))
  if choi_matrix.shape != (side, side) or dim < 1 or dim * dim != side:
    raise numerics.NotSquareOfInteger(
        f'Choi matrix must be d^2 x d^2, got shape {choi_matrix.shape}')
  blocks = choi_matrix.reshape(dim, dim, dim, dim).transpose(0, 2, 1, 3)
  return from_blocks(blocks, validate=True, cp_tol=cp_tol)


def choi(phi: CPMap) -> np.ndarray:
  """Returns the Choi matrix C[i * d + k, j * d + l] = phi(E_ij)[k, l]."""
  return _choi_from_blocks(phi.blocks)


def _check_operator(phi: CPMap, operator: np.ndarray) -> np.ndarray:
  operator = numerics.as_matrix(operator)
  if operator.shape != (phi.dim, phi.dim):
    raise numerics.ShapeMismatch(
        f'Operator has shape {operator.shape}, expected {(phi.dim, phi.dim)}')
  return operator


def apply(phi: CPMap, operator: np.ndarray) -> np.ndarray:
  """Returns phi(S) = sum_ij S[i, j] phi(E_ij).

  Raises:
    ShapeMismatch: If S is not d x d.
  """
  operator = _check_operator(phi, operator)
  return np.einsum('ij,ijkl->kl', operator, phi.blocks)


def kraus_rank(phi: CPMap,
               rank_rtol: float = numerics.DEFAULT_RANK_RTOL,
               rank_atol: float = numerics.DEFAULT_RANK_ATOL) -> int:
  """Numerical rank of the Choi matrix (the minimal Kraus count)."""
  return numerics.psd_rank(
      numerics.hermitian_eig(choi(phi)), rank_rtol, rank_atol)


def classify(phi: CPMap, tol: float = DEFAULT_CP_TOL) -> ChannelClass:
  """Tests complete positivity, unitality and trace preservation.

  Args:
    phi: The map.
    tol: Tolerance for all three tests. CP uses it relative to the largest
      Choi eigenvalue, the other two compare entries in max-norm.

  Returns:
    The classification.
  """
  eig = numerics.hermitian_eig(choi(phi))
  cp = eig.lambda_min >= -tol * (1.0 + max(eig.lambda_max, 0.0))
  identity = np.eye(phi.dim, dtype=np.complex128)
  unital = numerics.max_norm(apply(phi, identity) - identity) <= tol
  traces = np.einsum('ijkk->ij', phi.blocks)
  trace_preserving = numerics.max_norm(traces - identity) <= tol
  return ChannelClass(
      cp=bool(cp),
      unital=bool(unital),
      trace_preserving=bool(trace_preserving),
      min_choi_eigenvalue=eig.lambda_min,
      kraus_rank=numerics.psd_rank(eig))


def fingerprint(phi: CPMap) -> str:
  """SHA-256 of the dimension and the Choi matrix bytes."""
  digest = hashlib.sha256()
  digest.update(str(phi.dim).encode('ascii'))
  digest.update(np.ascontiguousarray(choi(phi)).tobytes())
  return digest.hexdigest()


def complex_gaussian(generator: np.random.Generator,
                     shape: Tuple[int, ...]) -> np.ndarray:
  """Standard complex Gaussian entries, E|z|^2 = 1."""
  real = generator.standard_normal(shape)
  imag = generator.standard_normal(shape)
  return (real + 1j * imag) / np.sqrt(2.0)


def random_kraus(dim: int,
                 rank: int,
                 seed: int,
                 unital: bool = False) -> KrausSet:
  """Draws `rank` Ginibre Kraus operators.

  The generator is numpy's PCG64 seeded with `seed`, so equal arguments give
  bit-identical operators. With `unital`, each V_a is replaced by
  V_a M^(-1/2) where M = sum_a V_a* V_a, which makes phi(I) = I. The
  normalized operators are the isometric polar factor of the stacked
  (rank * d) x d matrix, so sum_a V_a* V_a = I holds to machine precision.

  Args:
    dim: Dimension d >= 1.
    rank: Number of Kraus operators, 1 <= rank <= d^2.
    seed: Generator seed.
    unital: Whether to normalize to a unital map.

  Returns:
    The Kraus operators.

  Raises:
    RankOutOfRange: If rank is not in 1..d^2.
  """
  if dim < 1:
    raise numerics.ShapeMismatch('Dimension must be at least 1')
  if not 1 <= rank <= dim * dim:
    raise numerics.RankOutOfRange(
        f'Rank must lie in 1..{dim * dim}, got {rank}')
  generator = np.random.default_rng(seed)
  ops = complex_gaussian(generator, (rank, dim, dim))
  if unital:
    isometry, _ = linalg.polar(ops.reshape(rank * dim, dim))
    ops = isometry.reshape(rank, dim, dim)
  logging.debug('Drew random Kraus set dim=%r rank=%r seed=%r unital=%r', dim,
                rank, seed, unital)
  return KrausSet(dim=dim, ops=tuple(np.array(op) for op in ops))


def random_cp(dim: int,
              rank: int,
              seed: int,
              unital: bool = False) -> CPMap:
  """Returns the validated map of `random_kraus(dim, rank, seed, unital)`."""
  return from_kraus(dim, random_kraus(dim, rank, seed, unital).ops)
