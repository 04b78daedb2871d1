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
"""Module for creating synthetic channels and sample points for testing."""

from typing import Iterator, List, Sequence, Tuple

import numpy as np
import pandas as pd

from src import channel
from src import kernel_rkhs
from src import numerics

_CORPUS_DIMS = (2, 3, 4)


def identity_channel(dim: int = 2) -> channel.CPMap:
  """phi(S) = S, Kraus set {I}."""
  return channel.from_kraus(dim, [np.eye(dim)])


def trace_channel(dim: int = 2) -> channel.CPMap:
  """phi(S) = trace(S) I, the map whose Choi matrix is the identity."""
  return channel.from_choi(np.eye(dim * dim))


def dephasing_channel(dim: int = 2) -> channel.CPMap:
  """phi(S) = diag(S), Kraus set {E_kk}."""
  return channel.from_kraus(
      dim, [numerics.matrix_unit(dim, k, k) for k in range(dim)])


def transpose_table(dim: int = 2) -> channel.CPMap:
  """The unvalidated table of phi(S) = S^T, whose Choi matrix is SWAP."""
  blocks = np.zeros((dim,) * 4, dtype=np.complex128)
  for i in range(dim):
    for j in range(dim):
      blocks[i, j] = numerics.matrix_unit(dim, j, i)
  return channel.from_blocks(blocks, validate=False)


def swap_choi(dim: int = 2) -> np.ndarray:
  """SWAP on C^d (x) C^d: entry ((i, k), (j, l)) is delta_il delta_jk."""
  swap = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
  for i in range(dim):
    for k in range(dim):
      swap[i * dim + k, k * dim + i] = 1.0
  return swap


def choi_witness_family(dim: int) -> List[kernel_rkhs.KPoint]:
  """Points (E_0i, e_k) in order i * d + k.

  Since E_0i* E_0j = E_ij, the K-Gram matrix of this family is the Choi
  matrix, so a negative Choi eigenvalue shows up in the K-Gram matrix.
  """
  return [
      kernel_rkhs.KPoint(
          op=numerics.matrix_unit(dim, 0, i),
          vec=numerics.basis_vector(dim, k))
      for i in range(dim)
      for k in range(dim)
  ]


def trial_generator(seed: int, check_id: int,
                    trial_id: int) -> np.random.Generator:
  """Generator for one verification trial, independent of scheduling."""
  return np.random.default_rng([seed, check_id, trial_id])


def random_operator(generator: np.random.Generator, dim: int) -> np.ndarray:
  return channel.complex_gaussian(generator, (dim, dim))


def random_vector(generator: np.random.Generator, dim: int) -> np.ndarray:
  return channel.complex_gaussian(generator, (dim, 1))


def random_kpoints(generator: np.random.Generator, dim: int,
                   count: int) -> List[kernel_rkhs.KPoint]:
  """Points (S, a) with i.i.d. standard complex Gaussian entries."""
  return [
      kernel_rkhs.KPoint(
          op=random_operator(generator, dim),
          vec=random_vector(generator, dim)) for _ in range(count)
  ]


def random_kpoint_pairs(
    generator: np.random.Generator, dim: int, count: int
) -> List[Tuple[kernel_rkhs.KPoint, kernel_rkhs.KPoint]]:
  points = random_kpoints(generator, dim, 2 * count)
  return list(zip(points[::2], points[1::2]))


def create_synthetic_corpus(map_count: int = 200,
                            dims: Sequence[int] = _CORPUS_DIMS,
                            seed: int = 42,
                            unital_share: float = 0.0) -> pd.DataFrame:
  """Creates a table of random CP map parameters.

  Dimensions cycle through `dims` and ranks cycle through 1..d^2 within each
  dimension, so every rank is covered once the corpus is large enough. Each
  row gets its own map seed.

  Args:
    map_count: Number of maps.
    dims: Dimensions to cycle through.
    seed: Seed for drawing the per-map seeds and unital flags.
    unital_share: Probability that a row asks for a unital map.

  Returns:
    A dataframe with columns dim, rank, seed and unital.
  """
  generator = np.random.default_rng(seed)
  rows = []
  rank_cursor = {dim: 0 for dim in dims}
  for row in range(map_count):
    dim = dims[row % len(dims)]
    rank = rank_cursor[dim] % (dim * dim) + 1
    rank_cursor[dim] += 1
    rows.append({
        'dim': dim,
        'rank': rank,
        'seed': int(generator.integers(0, 2**31 - 1)),
        'unital': bool(generator.random() < unital_share),
    })
  return pd.DataFrame(rows, columns=['dim', 'rank', 'seed', 'unital'])


def corpus_maps(
    corpus: pd.DataFrame) -> Iterator[Tuple[pd.Series, channel.CPMap]]:
  """Yields (row, map) for every row of a synthetic corpus."""
  for _, row in corpus.iterrows():
    yield row, channel.random_cp(
        int(row['dim']), int(row['rank']), int(row['seed']),
        bool(row['unital']))
