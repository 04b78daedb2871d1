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

"""Tests for src.synthetic_data."""

import unittest

import numpy as np

from src import synthetic_data


class SyntheticDataTest(unittest.TestCase):

  def test_synthetic_corpus_creates_expected_rows(self):
    number_rows = 100
    corpus = synthetic_data.create_synthetic_corpus(map_count=number_rows)
    self.assertEqual(len(corpus), number_rows)
    self.assertEqual(list(corpus.columns), ['dim', 'rank', 'seed', 'unital'])

  def test_synthetic_corpus_covers_every_rank(self):
    corpus = synthetic_data.create_synthetic_corpus(map_count=200)
    for dim in (2, 3, 4):
      ranks = set(corpus.loc[corpus['dim'] == dim, 'rank'])
      self.assertEqual(ranks, set(range(1, dim * dim + 1)))

  def test_synthetic_corpus_is_deterministic(self):
    first = synthetic_data.create_synthetic_corpus(map_count=20, seed=3)
    second = synthetic_data.create_synthetic_corpus(map_count=20, seed=3)
    self.assertTrue(first.equals(second))

  def test_unital_share(self):
    corpus = synthetic_data.create_synthetic_corpus(
        map_count=10, unital_share=1.0)
    self.assertTrue(corpus['unital'].all())
    corpus = synthetic_data.create_synthetic_corpus(map_count=10)
    self.assertFalse(corpus['unital'].any())

  def test_corpus_maps_match_rows(self):
    corpus = synthetic_data.create_synthetic_corpus(map_count=6)
    for row, phi in synthetic_data.corpus_maps(corpus):
      self.assertEqual(phi.dim, row['dim'])
      self.assertTrue(phi.validated)

  def test_trial_generator_is_keyed_by_check_and_trial(self):
    first = synthetic_data.trial_generator(42, 1, 0).standard_normal(4)
    again = synthetic_data.trial_generator(42, 1, 0).standard_normal(4)
    other = synthetic_data.trial_generator(42, 1, 1).standard_normal(4)
    np.testing.assert_array_equal(first, again)
    self.assertFalse(np.array_equal(first, other))

  def test_random_kpoint_pairs_shapes(self):
    generator = synthetic_data.trial_generator(1, 0, 0)
    pairs = synthetic_data.random_kpoint_pairs(generator, 3, 5)
    self.assertEqual(len(pairs), 5)
    for p, q in pairs:
      self.assertEqual(p.op.shape, (3, 3))
      self.assertEqual(q.vec.shape, (3, 1))

  def test_swap_choi_is_permutation(self):
    swap = synthetic_data.swap_choi(2)
    np.testing.assert_array_equal(swap @ swap, np.eye(4))
    np.testing.assert_array_equal(swap, swap.T)

  def test_choi_witness_family_order(self):
    family = synthetic_data.choi_witness_family(2)
    self.assertEqual(len(family), 4)
    self.assertEqual(family[1].op[0, 0], 1.0)
    self.assertEqual(family[1].vec[1, 0], 1.0)
    self.assertEqual(family[2].op[0, 1], 1.0)
    self.assertEqual(family[2].vec[0, 0], 1.0)


if __name__ == '__main__':
  unittest.main()
