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
"""Concrete Stinespring data on H (x) H_Khat.

The dilation space of the kernel K is handled through its unitary image
H (x) H_Khat. There the representation is S -> S (x) I_r and the dilation
operator is

  W a = sum_i e_i (x) Khat_(i, a),

stored as a (d * r) x d matrix with row index i * r + alpha. Slicing W along
alpha gives the Kraus operators.
"""

import dataclasses
from typing import Sequence, Tuple

from absl import logging
import numpy as np

from src import channel
from src import kernel_rkhs
from src import numerics


@dataclasses.dataclass(frozen=True, eq=False)
class StinespringDilation:
  """Minimal dilation phi(S) = W* (S (x) I_r) W.

  Attributes:
    dim: Dimension d of H.
    ancilla_dim: Dimension r of H_Khat.
    w: The (d * r) x d operator W, row index i * r + alpha.
    basis: The ancilla basis factorization W was read from.
    source: Fingerprint of the source map.
  """
  dim: int
  ancilla_dim: int
  w: np.ndarray
  basis: kernel_rkhs.GramFactorization
  source: str

  def is_isometry(self, tol: float = 1e-9) -> bool:
    defect = self.w.conj().T @ self.w - np.eye(self.dim)
    return numerics.frobenius_norm(defect) <= tol


def build_dilation(
    phi: channel.CPMap,
    rank_rtol: float = numerics.DEFAULT_RANK_RTOL,
    rank_atol: float = numerics.DEFAULT_RANK_ATOL,
    psd_tol: float = kernel_rkhs.DEFAULT_PSD_TOL) -> StinespringDilation:
  """Builds W from the ancilla basis of phi.

  W[i * r + alpha, k] = X[alpha, i * d + k]: column k of W stacks the
  coordinates of Khat_(i, e_k) over i.

  Args:
    phi: A validated CP map.
    rank_rtol: Relative rank cutoff for the ancilla dimension.
    rank_atol: Absolute rank cutoff for the ancilla dimension.
    psd_tol: Relative floor for negative Gram eigenvalues. Pass the cp_tol
      phi was validated with.

  Returns:
    The dilation. The zero map gives r = 0 and a 0 x d operator.

  Raises:
    NotPSD: If phi is not CP.
  """
  basis = kernel_rkhs.ancilla_basis(phi, rank_rtol, rank_atol, psd_tol)
  dim, rank = phi.dim, basis.rank
  w = basis.coords.reshape(rank, dim, dim).transpose(1, 0, 2).reshape(
      dim * rank, dim)
  if rank:
    logging.info('Dilation dim=%r ancilla_dim=%r ancilla eigenvalues [%r, %r]',
                 dim, rank, float(basis.eigenvalues[-1]),
                 float(basis.eigenvalues[0]))
  else:
    logging.info('Dilation of the zero map, dim=%r', dim)
  return StinespringDilation(
      dim=dim,
      ancilla_dim=rank,
      w=np.ascontiguousarray(w),
      basis=basis,
      source=channel.fingerprint(phi))


def stinespring_matrix(dil: StinespringDilation) -> np.ndarray:
  """Returns a copy of W, shape (d * r, d), row index i * r + alpha."""
  return dil.w.copy()


def _check_operator(dil: StinespringDilation,
                    operator: np.ndarray) -> np.ndarray:
  operator = numerics.as_matrix(operator)
  if operator.shape != (dil.dim, dil.dim):
    raise numerics.ShapeMismatch(
        f'Operator has shape {operator.shape}, expected {(dil.dim, dil.dim)}')
  return operator


def lifted_rep(dil: StinespringDilation, operator: np.ndarray) -> np.ndarray:
  """Returns S (x) I_r, row index i * r + alpha.

  Raises:
    ShapeMismatch: If S is not d x d.
  """
  operator = _check_operator(dil, operator)
  if not dil.ancilla_dim:
    return np.zeros((0, 0), dtype=np.complex128)
  return numerics.kron(operator,
                       np.eye(dil.ancilla_dim, dtype=np.complex128))


def stinespring_apply(dil: StinespringDilation,
                      operator: np.ndarray) -> np.ndarray:
  """Returns W* (S (x) I_r) W."""
  lifted = lifted_rep(dil, operator)
  return numerics.adjoint(dil.w) @ lifted @ dil.w


def compression_form(dil: StinespringDilation, a: np.ndarray,
                     operator: np.ndarray, b: np.ndarray) -> complex:
  """Returns <W a, (S (x) I) W b>, which equals <a, phi(S) b>."""
  lifted = lifted_rep(dil, operator)
  return numerics.inner(dil.w @ a, lifted @ (dil.w @ b))


def extract_kraus(dil: StinespringDilation) -> channel.KrausSet:
  """Slices W along the ancilla index: V_alpha[i, k] = W[i * r + alpha, k].

  The order follows the nonincreasing ancilla eigenvalues, and
  phi(S) = sum_alpha V_alpha* S V_alpha.
  """
  ops = dil.w.reshape(dil.dim, dil.ancilla_dim, dil.dim).transpose(1, 0, 2)
  return channel.KrausSet(
      dim=dil.dim, ops=tuple(np.array(op) for op in ops))


def u_image(dil: StinespringDilation,
            point: kernel_rkhs.KPoint) -> np.ndarray:
  """Image U(K_(S, a)) = sum_i S e_i (x) Khat_(i, a) in H (x) H_Khat."""
  return kernel_rkhs.section_coordinates(dil.basis, dil.dim, point)


def check_u_isometry(
    phi: channel.CPMap, dil: StinespringDilation,
    pairs: Sequence[Tuple[kernel_rkhs.KPoint, kernel_rkhs.KPoint]]) -> float:
  """Largest |K(p, q) - <U K_p, U K_q>| over the pairs.

  Raises:
    ShapeMismatch: If a point does not match the dimension.
  """
  residual = 0.0
  for p, q in pairs:
    expected = kernel_rkhs.eval_k(phi, p, q)
    actual = numerics.inner(u_image(dil, p), u_image(dil, q))
    residual = max(residual, abs(expected - actual))
  return residual


def check_intertwining(dil: StinespringDilation, operator: np.ndarray,
                       point: kernel_rkhs.KPoint) -> float:
  """Returns ||(S (x) I) U K_(T, b) - U K_(ST, b)||.

  On sections the representation acts by K_(T, b) -> K_(ST, b), so its
  transport along U must agree with S (x) I.
  """
  operator = _check_operator(dil, operator)
  moved = kernel_rkhs.KPoint(op=operator @ point.op, vec=point.vec)
  lifted = lifted_rep(dil, operator) @ u_image(dil, point)
  return numerics.frobenius_norm(lifted - u_image(dil, moved))


def minimality_rank(dil: StinespringDilation) -> int:
  """Numerical rank of {(E_ij (x) I_r) W e_k : i, j, k}.

  The columns span H (x) H_Khat exactly when the dilation is minimal, in
  which case the rank is d * r. The rank is read off M M*, which shares the
  nonzero spectrum of M* M.
  """
  dim, rank = dil.dim, dil.ancilla_dim
  if not rank:
    return 0
  blocks = dil.w.reshape(dim, rank, dim)
  # Column (i, j, k) holds e_i (x) (row block j of W) e_k.
  columns = np.einsum('mi,jak->maijk', np.eye(dim), blocks).reshape(
      dim * rank, dim ** 3)
  eig = numerics.hermitian_eig(columns @ numerics.adjoint(columns))
  return numerics.psd_rank(eig)
