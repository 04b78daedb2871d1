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
"""The two scalar kernels of a CP map and finite Kolmogorov factorizations.

For a CP map phi on B(C^d):

  K((S, a), (T, b))    = <a, phi(S* T) b>      on B(H) x H,
  Khat((i, a), (j, b)) = <a, phi(E_ij) b>      on {0..d-1} x H.

RKHS elements are never materialized as functions. A finite family of points
is represented by its Gram matrix G and a factorization G = X* X, so column p
of X holds the coordinates of the section at point p in an orthonormal basis
of the span of the family.
"""

import dataclasses
from typing import Sequence

from absl import logging
import numpy as np

from src import channel
from src import numerics

DEFAULT_PSD_TOL = 1e-10


@dataclasses.dataclass(frozen=True, eq=False)
class KPoint:
  """A point (S, a) of B(H) x H.

  Attributes:
    op: The d x d operator S.
    vec: The d x 1 vector a.
  """
  op: np.ndarray
  vec: np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class KhatPoint:
  """A point (i, a) of {0..d-1} x H. `index` is 0-based."""
  index: int
  vec: np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class GramFactorization:
  """A factorization G = X* X of a PSD Gram matrix.

  Attributes:
    gram: The n x n Gram matrix G.
    coords: The r x n matrix X. Row alpha is the coordinate of the basis
      vector f_alpha; column p is the section of point p.
    rank: Numerical rank r.
    cutoff: Eigenvalue threshold used to decide the rank.
    eigenvalues: The r retained eigenvalues, nonincreasing.
  """
  gram: np.ndarray
  coords: np.ndarray
  rank: int
  cutoff: float
  eigenvalues: np.ndarray


def _check_kpoint(dim: int, point: KPoint) -> None:
  if point.op.shape != (dim, dim) or point.vec.shape != (dim, 1):
    raise numerics.ShapeMismatch(
        f'Point has shapes {point.op.shape}, {point.vec.shape}; expected '
        f'{(dim, dim)}, {(dim, 1)}')


def _check_khat_point(dim: int, point: KhatPoint) -> None:
  if not 0 <= point.index < dim:
    raise numerics.ShapeMismatch(
        f'Index {point.index} outside 0..{dim - 1}')
  if point.vec.shape != (dim, 1):
    raise numerics.ShapeMismatch(
        f'Vector has shape {point.vec.shape}, expected {(dim, 1)}')


def eval_k(phi: channel.CPMap, p: KPoint, q: KPoint) -> complex:
  """K(p, q) = <p.vec, phi(p.op* q.op) q.vec>.

  Raises:
    ShapeMismatch: If a point does not match phi.dim.
  """
  _check_kpoint(phi.dim, p)
  _check_kpoint(phi.dim, q)
  image = channel.apply(phi, numerics.adjoint(p.op) @ q.op)
  return numerics.inner(p.vec, image @ q.vec)


def eval_khat(phi: channel.CPMap, p: KhatPoint, q: KhatPoint) -> complex:
  """Khat(p, q) = <p.vec, phi(E_{p.index, q.index}) q.vec>.

  Raises:
    ShapeMismatch: If a point does not match phi.dim.
  """
  _check_khat_point(phi.dim, p)
  _check_khat_point(phi.dim, q)
  return numerics.inner(p.vec, phi.blocks[p.index, q.index] @ q.vec)


def gram_k(phi: channel.CPMap, points: Sequence[KPoint]) -> np.ndarray:
  """Gram matrix G[i, j] = K(points[i], points[j]).

  For CP phi this is the matrix whose positivity makes K a p.d. kernel:
  pairing the block matrix [phi(S_i* S_j)] with (a_1, ..., a_n).

  Raises:
    EmptyFamily: If `points` is empty.
    ShapeMismatch: If a point does not match phi.dim.
  """
  if not points:
    raise numerics.EmptyFamily('Gram matrix needs at least one point')
  for point in points:
    _check_kpoint(phi.dim, point)
  size = len(points)
  gram = np.empty((size, size), dtype=np.complex128)
  for i, p in enumerate(points):
    for j, q in enumerate(points):
      gram[i, j] = eval_k(phi, p, q)
  return gram


def gram_khat_full(phi: channel.CPMap) -> np.ndarray:
  """Gram matrix of the sections Khat_(i, e_k), point (i, k) at i * d + k.

  Entry (i * d + k, j * d + l) is <e_k, phi(E_ij) e_l>, which is the Choi
  matrix entry for entry.
  """
  return np.array(channel.choi(phi))


def kolmogorov_factorize(
    gram: np.ndarray,
    rank_rtol: float = numerics.DEFAULT_RANK_RTOL,
    rank_atol: float = numerics.DEFAULT_RANK_ATOL,
    psd_tol: float = DEFAULT_PSD_TOL) -> GramFactorization:
  """Factorizes a PSD Gram matrix as G = X* X with orthonormal rows of X.

  X = diag(sqrt(lambda_alpha)) U_r*, keeping the r eigenvalues above the
  rank cutoff. Eigenvalues within tolerance of zero from below are treated
  as zero.

  Args:
    gram: Hermitian PSD matrix G.
    rank_rtol: Relative rank cutoff.
    rank_atol: Absolute rank cutoff.
    psd_tol: Relative tolerance for negative eigenvalues.

  Returns:
    The factorization.

  Raises:
    NotHermitian: If G is not Hermitian.
    NotPSD: If an eigenvalue lies below -psd_tol * (1 + lambda_max).
  """
  gram = numerics.as_matrix(gram)
  eig = numerics.hermitian_eig(gram)
  numerics.check_psd(eig, psd_tol, 'Gram matrix')
  cutoff = numerics.psd_cutoff(eig, rank_rtol, rank_atol)
  rank = numerics.psd_rank(eig, rank_rtol, rank_atol)
  kept = eig.eigenvalues[:rank]
  coords = np.sqrt(kept)[:, np.newaxis] * numerics.adjoint(
      eig.eigenvectors[:, :rank])
  return GramFactorization(
      gram=gram,
      coords=np.asarray(coords, dtype=np.complex128).reshape(
          rank, gram.shape[0]),
      rank=rank,
      cutoff=cutoff,
      eigenvalues=np.array(kept))


def ancilla_basis(
    phi: channel.CPMap,
    rank_rtol: float = numerics.DEFAULT_RANK_RTOL,
    rank_atol: float = numerics.DEFAULT_RANK_ATOL,
    psd_tol: float = DEFAULT_PSD_TOL) -> GramFactorization:
  """Orthonormal basis {f_alpha} of the Khat RKHS.

  Column i * d + k of the coordinates is the section Khat_(i, e_k) expressed
  in {f_alpha}; the rank is the ancilla dimension. `psd_tol` should match the
  cp_tol the map was validated with.

  Raises:
    NotPSD: If phi is not CP.
  """
  if not phi.validated:
    logging.warning('Building an ancilla basis for an unvalidated map')
  factorization = kolmogorov_factorize(
      gram_khat_full(phi), rank_rtol, rank_atol, psd_tol)
  logging.info('Ancilla dimension %r for dim %r (cutoff %r)',
               factorization.rank, phi.dim, factorization.cutoff)
  return factorization


def section_coordinates(basis: GramFactorization, dim: int,
                        point: KPoint) -> np.ndarray:
  """Image of the K-section at (S, a) in H (x) H_Khat.

  Returns u(S, a) = sum_i (S e_i) (x) x_(i, a) with
  x_(i, a) = sum_k a[k] X[:, i * d + k], flattened with row m * r + alpha.

  Raises:
    ShapeMismatch: If the point does not match `dim`.
  """
  _check_kpoint(dim, point)
  sections = basis.coords.reshape(basis.rank, dim, dim)
  # x[alpha, i] = sum_k X[alpha, i * d + k] a[k]
  x = sections @ point.vec[:, 0]
  return (point.op @ x.T).reshape(dim * basis.rank, 1)
