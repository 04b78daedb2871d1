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
"""Main module to dilate and certify completely positive maps.

Minimal example:

from src import stinekernel

# Initiate the StineKernel class with the default tolerances.
pipeline = stinekernel.StineKernel()

# (Optional) If you are just trying StineKernel out, draw a random map.
phi = pipeline.random_map(dim=3, rank=5, seed=9, unital=True)

# Or load a channel file in Kraus or Choi representation.
phi = pipeline.load_channel('channel.json')

# Build the Stinespring dilation W and the Kraus operators read off it.
dil = pipeline.dilate(phi)
kraus = pipeline.kraus(dil)

# Certify every identity of the construction on random inputs.
report = pipeline.run_verification(phi)
report.to_dataframe()
"""

import dataclasses
import json
from typing import Any, Dict, Optional

from absl import logging

from src import channel
from src import dilation
from src import numerics
from src import serialization
from src import verify


def load_parameters_from_file(
    filename: str = 'stinekernel_parameters.json') -> Dict[str, Any]:
  """Reads parameters from local file."""
  logging.info('Reading parameters from file %r', filename)
  with open(filename) as f:
    return json.load(f)


@dataclasses.dataclass
class StineKernel:
  """Class to dilate, convert and verify CP maps with fixed tolerances.

  Attributes:
    cp_tol: Relative tolerance of the Choi positivity test.
    rank_rtol: Relative eigenvalue cutoff for numerical ranks.
    rank_atol: Absolute eigenvalue cutoff for numerical ranks.
    verify_tol: Tolerance scale for the verification checks.
    trials: Trials per randomized verification check.
    seed: Seed for verification trials.
    family_size: Points per family in the Gram positivity check.
    max_workers: Threads for running verification checks.
    write_parameters: Whether to write the parameters to file.
    parameters_filename: The file path to write parameters to.
  """
  cp_tol: float = channel.DEFAULT_CP_TOL
  rank_rtol: float = numerics.DEFAULT_RANK_RTOL
  rank_atol: float = numerics.DEFAULT_RANK_ATOL
  verify_tol: float = verify.DEFAULT_VERIFY_TOL
  trials: int = verify.DEFAULT_TRIALS
  seed: int = verify.DEFAULT_SEED
  family_size: int = verify.DEFAULT_FAMILY_SIZE
  max_workers: int = 1
  write_parameters: bool = False
  parameters_filename: str = 'stinekernel_parameters.json'

  def __post_init__(self):
    for name in ('cp_tol', 'rank_rtol', 'rank_atol', 'verify_tol'):
      if getattr(self, name) <= 0:
        raise ValueError(f'{name} must be positive')
    if self.trials < 1:
      raise ValueError('trials must be at least 1')
    if self.family_size < 1:
      raise ValueError('family_size must be at least 1')
    if self.max_workers < 1:
      raise ValueError('max_workers must be at least 1')
    logging.info('Using cp_tol: %r', self.cp_tol)
    logging.info('Using rank cutoffs rtol=%r atol=%r', self.rank_rtol,
                 self.rank_atol)
    logging.info('Using verify_tol: %r with %r trials, seed %r',
                 self.verify_tol, self.trials, self.seed)
    if self.write_parameters:
      self._write_parameters_to_file()

  @classmethod
  def from_parameters_file(cls, filename: str,
                           **overrides: Any) -> 'StineKernel':
    """Builds the class from a parameters file; `overrides` take precedence."""
    parameters = load_parameters_from_file(filename)
    parameters.update(overrides)
    return cls(**parameters)

  def parameters(self) -> Dict[str, Any]:
    return {
        'cp_tol': self.cp_tol,
        'rank_rtol': self.rank_rtol,
        'rank_atol': self.rank_atol,
        'verify_tol': self.verify_tol,
        'trials': self.trials,
        'seed': self.seed,
        'family_size': self.family_size,
        'max_workers': self.max_workers,
    }

  def _write_parameters_to_file(self) -> None:
    """Writes parameters to file."""
    with open(self.parameters_filename, 'w') as f:
      json.dump(self.parameters(), f, indent=2, sort_keys=True)
    logging.info('Parameters written to file: %r', self.parameters_filename)

  def load_channel(self, path: str) -> channel.CPMap:
    """Reads a channel file and validates the map."""
    return serialization.read_channel_file(path).to_cp_map(self.cp_tol)

  def random_map(self,
                 dim: int,
                 rank: int,
                 seed: int,
                 unital: bool = False) -> channel.CPMap:
    return channel.random_cp(dim, rank, seed, unital)

  def dilate(self, phi: channel.CPMap) -> dilation.StinespringDilation:
    return dilation.build_dilation(
        phi, self.rank_rtol, self.rank_atol, psd_tol=self.cp_tol)

  def kraus(self, dil: dilation.StinespringDilation) -> channel.KrausSet:
    return dilation.extract_kraus(dil)

  def run_verification(
      self,
      phi: channel.CPMap,
      dil: Optional[dilation.StinespringDilation] = None
  ) -> verify.VerificationReport:
    """Runs the full verification suite with the configured settings."""
    return verify.run_full_suite(
        phi,
        seed=self.seed,
        trials=self.trials,
        verify_tol=self.verify_tol,
        family_size=self.family_size,
        rank_rtol=self.rank_rtol,
        rank_atol=self.rank_atol,
        max_workers=self.max_workers,
        dil=dil,
        psd_tol=self.cp_tol)
