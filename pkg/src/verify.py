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
"""Module for certifying the dilation identities of a CP map numerically.

Every check samples its own inputs from `synthetic_data.trial_generator`,
keyed by (seed, check id, trial id), and records the largest scale-normalized
residual against a fixed tolerance. Failures are recorded, never raised.

Tolerances are stated for verify_tol = 1e-9 and scale linearly with it.
"""

from concurrent import futures
import dataclasses
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from absl import logging
import numpy as np
import pandas as pd

from src import channel
from src import dilation
from src import kernel_rkhs
from src import numerics
from src import synthetic_data

DEFAULT_VERIFY_TOL = 1e-9
DEFAULT_TRIALS = 100
DEFAULT_SEED = 42
DEFAULT_FAMILY_SIZE = 8
U_ISOMETRY_PAIRS = 50

# Base tolerances at verify_tol = DEFAULT_VERIFY_TOL.
_GRAM_PSD_TOL = 1e-9
_NORM_BOUND_TOL = 1e-10
_HOMOMORPHISM_TOL = 1e-12
_RECONSTRUCTION_TOL = 1e-9
_COMPRESSION_TOL = 1e-11
_DILATION_COMPRESSION_TOL = 1e-9
_U_ISOMETRY_TOL = 1e-9
_INTERTWINING_TOL = 1e-9
_ISOMETRY_TOL = 1e-9

# Check ids feed the per-trial generators; never renumber.
_GRAM_PSD_ID = 0
_NORM_BOUND_ID = 1
_HOMOMORPHISM_ID = 2
_RECONSTRUCTION_ID = 3
_COMPRESSION_ID = 4
_U_ISOMETRY_ID = 5
_INTERTWINING_ID = 6
_DILATION_COMPRESSION_ID = 7


@dataclasses.dataclass(frozen=True)
class CheckRecord:
  """Outcome of one check.

  Attributes:
    name: Check name.
    max_residual: Largest scale-normalized residual over the trials.
    tolerance: Threshold the residual is compared against.
    trials: Number of trials run.
    passed: Whether max_residual <= tolerance.
  """
  name: str
  max_residual: float
  tolerance: float
  trials: int
  passed: bool

  def to_dict(self) -> Dict[str, Any]:
    return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class VerificationReport:
  """All check records for one map.

  Attributes:
    records: Records in fixed check order.
    passed: Whether every record passed.
    seed: Seed the trials were derived from.
    dim: Dimension of the map.
    ancilla_dim: Ancilla dimension of its dilation.
    unital: Whether the map was classified unital.
    timings: Seconds spent per check name.
  """
  records: Tuple[CheckRecord, ...]
  passed: bool
  seed: int
  dim: int
  ancilla_dim: int
  unital: bool
  timings: Dict[str, float] = dataclasses.field(default_factory=dict)

  def record(self, name: str) -> CheckRecord:
    for record in self.records:
      if record.name == name:
        return record
    raise KeyError(name)

  def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
    """Serializable form. Timings are left out unless asked for."""
    report = {
        'passed': self.passed,
        'seed': self.seed,
        'dim': self.dim,
        'ancilla_dim': self.ancilla_dim,
        'unital': self.unital,
        'checks': [record.to_dict() for record in self.records],
    }
    if include_timings:
      report['timings'] = dict(self.timings)
    return report

  def to_dataframe(self) -> pd.DataFrame:
    return pd.DataFrame.from_records(
        [record.to_dict() for record in self.records],
        columns=['name', 'max_residual', 'tolerance', 'trials', 'passed'])


def _scale(base: float, verify_tol: float) -> float:
  return base * verify_tol / DEFAULT_VERIFY_TOL


def _make_record(name: str, residuals: List[float], tolerance: float,
                 trials: int) -> CheckRecord:
  max_residual = float(max(residuals)) if residuals else 0.0
  passed = bool(np.isfinite(max_residual) and max_residual <= tolerance)
  if passed:
    logging.info('Check %r passed: residual %.3e <= %.3e', name, max_residual,
                 tolerance)
  else:
    logging.warning('Check %r FAILED: residual %.3e > %.3e', name,
                    max_residual, tolerance)
  return CheckRecord(
      name=name,
      max_residual=max_residual,
      tolerance=tolerance,
      trials=trials,
      passed=passed)


def check_gram_psd(phi: channel.CPMap,
                   trials: int = DEFAULT_TRIALS,
                   family_size: int = DEFAULT_FAMILY_SIZE,
                   seed: int = DEFAULT_SEED,
                   verify_tol: float = DEFAULT_VERIFY_TOL) -> CheckRecord:
  """Positivity of K-Gram matrices on random families.

  The residual of a trial is max(0, -lambda_min) / (1 + lambda_max).
  """
  residuals = []
  for trial in range(trials):
    generator = synthetic_data.trial_generator(seed, _GRAM_PSD_ID, trial)
    points = synthetic_data.random_kpoints(generator, phi.dim, family_size)
    eig = numerics.hermitian_eig(kernel_rkhs.gram_k(phi, points))
    violation = max(0.0, -eig.lambda_min) / (1.0 + max(eig.lambda_max, 0.0))
    logging.debug('gram_psd trial %r: lambda_min %r', trial, eig.lambda_min)
    residuals.append(violation)
  return _make_record('gram_psd', residuals,
                      _scale(_GRAM_PSD_TOL, verify_tol), trials)


def check_norm_bound(dil: dilation.StinespringDilation,
                     trials: int = DEFAULT_TRIALS,
                     seed: int = DEFAULT_SEED,
                     verify_tol: float = DEFAULT_VERIFY_TOL) -> CheckRecord:
  """||S (x) I|| = ||S|| for r >= 1, and ||S (x) I|| <= ||S|| always.

  The residual of a trial is |ratio - 1| when r >= 1 and max(0, ratio - 1)
  for the zero map, with ratio = ||S (x) I|| / ||S||.
  """
  residuals = []
  for trial in range(trials):
    generator = synthetic_data.trial_generator(seed, _NORM_BOUND_ID, trial)
    operator = synthetic_data.random_operator(generator, dil.dim)
    ratio = numerics.opnorm(dilation.lifted_rep(dil, operator)) / (
        numerics.opnorm(operator))
    if dil.ancilla_dim:
      residuals.append(abs(ratio - 1.0))
    else:
      residuals.append(max(0.0, ratio - 1.0))
  return _make_record('norm_bound', residuals,
                      _scale(_NORM_BOUND_TOL, verify_tol), trials)


def check_homomorphism(dil: dilation.StinespringDilation,
                       trials: int = DEFAULT_TRIALS,
                       seed: int = DEFAULT_SEED,
                       verify_tol: float = DEFAULT_VERIFY_TOL) -> CheckRecord:
  """Product, adjoint and unit laws of S -> S (x) I on random pairs."""
  residuals = []
  identity = np.eye(dil.dim, dtype=np.complex128)
  unit_defect = numerics.frobenius_norm(
      dilation.lifted_rep(dil, identity) -
      np.eye(dil.dim * dil.ancilla_dim))
  residuals.append(unit_defect)
  for trial in range(trials):
    generator = synthetic_data.trial_generator(seed, _HOMOMORPHISM_ID, trial)
    first = synthetic_data.random_operator(generator, dil.dim)
    second = synthetic_data.random_operator(generator, dil.dim)
    lifted_first = dilation.lifted_rep(dil, first)
    lifted_second = dilation.lifted_rep(dil, second)
    product = numerics.frobenius_norm(
        lifted_first @ lifted_second -
        dilation.lifted_rep(dil, first @ second)) / (
            1.0 + numerics.frobenius_norm(lifted_first) *
            numerics.frobenius_norm(lifted_second))
    adjoint = numerics.frobenius_norm(
        numerics.adjoint(lifted_first) -
        dilation.lifted_rep(dil, numerics.adjoint(first))) / (
            1.0 + numerics.frobenius_norm(lifted_first))
    residuals.append(max(product, adjoint))
  return _make_record('homomorphism', residuals,
                      _scale(_HOMOMORPHISM_TOL, verify_tol), trials)


def check_reconstruction(phi: channel.CPMap,
                         dil: dilation.StinespringDilation,
                         kraus: channel.KrausSet,
                         trials: int = DEFAULT_TRIALS,
                         seed: int = DEFAULT_SEED,
                         verify_tol: float = DEFAULT_VERIFY_TOL
                        ) -> CheckRecord:
  """W* (S (x) I) W and sum V* S V both reproduce phi(S).

  Residuals are normalized by 1 + ||S||_F ||phi(I)||_F.
  """
  residuals = []
  unit_norm = numerics.frobenius_norm(
      channel.apply(phi, np.eye(phi.dim, dtype=np.complex128)))
  for trial in range(trials):
    generator = synthetic_data.trial_generator(seed, _RECONSTRUCTION_ID,
                                               trial)
    operator = synthetic_data.random_operator(generator, phi.dim)
    expected = channel.apply(phi, operator)
    scale = 1.0 + numerics.frobenius_norm(operator) * unit_norm
    tensor_form = numerics.frobenius_norm(
        dilation.stinespring_apply(dil, operator) - expected)
    kraus_form = numerics.frobenius_norm(kraus.apply(operator) - expected)
    residuals.append(max(tensor_form, kraus_form) / scale)
  return _make_record('reconstruction', residuals,
                      _scale(_RECONSTRUCTION_TOL, verify_tol), trials)


def check_compression_identity(
    phi: channel.CPMap,
    dil: dilation.StinespringDilation,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    verify_tol: float = DEFAULT_VERIFY_TOL) -> CheckRecord:
  """<a, phi(S) b> = K((I, a), (S, b)) on random triples."""
  del dil  # The kernel side needs only phi.
  residuals = []
  identity = np.eye(phi.dim, dtype=np.complex128)
  for trial in range(trials):
    generator = synthetic_data.trial_generator(seed, _COMPRESSION_ID, trial)
    operator = synthetic_data.random_operator(generator, phi.dim)
    a = synthetic_data.random_vector(generator, phi.dim)
    b = synthetic_data.random_vector(generator, phi.dim)
    value = numerics.inner(a, channel.apply(phi, operator) @ b)
    kernel_value = kernel_rkhs.eval_k(
        phi, kernel_rkhs.KPoint(op=identity, vec=a),
        kernel_rkhs.KPoint(op=operator, vec=b))
    residuals.append(abs(value - kernel_value) / (1.0 + abs(value)))
  return _make_record('compression_identity', residuals,
                      _scale(_COMPRESSION_TOL, verify_tol), trials)


def check_dilation_compression(
    phi: channel.CPMap,
    dil: dilation.StinespringDilation,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    verify_tol: float = DEFAULT_VERIFY_TOL) -> CheckRecord:
  """<a, phi(S) b> = <W a, (S (x) I) W b> on random triples."""
  residuals = []
  unit_norm = numerics.frobenius_norm(
      channel.apply(phi, np.eye(phi.dim, dtype=np.complex128)))
  for trial in range(trials):
    generator = synthetic_data.trial_generator(seed, _DILATION_COMPRESSION_ID,
                                               trial)
    operator = synthetic_data.random_operator(generator, phi.dim)
    a = synthetic_data.random_vector(generator, phi.dim)
    b = synthetic_data.random_vector(generator, phi.dim)
    value = numerics.inner(a, channel.apply(phi, operator) @ b)
    scale = 1.0 + (
        numerics.frobenius_norm(a) * numerics.frobenius_norm(b) *
        numerics.frobenius_norm(operator) * unit_norm)
    residuals.append(
        abs(value - dilation.compression_form(dil, a, operator, b)) / scale)
  return _make_record('dilation_compression', residuals,
                      _scale(_DILATION_COMPRESSION_TOL, verify_tol), trials)


def check_u_isometry_record(
    phi: channel.CPMap,
    dil: dilation.StinespringDilation,
    pairs: int = U_ISOMETRY_PAIRS,
    seed: int = DEFAULT_SEED,
    verify_tol: float = DEFAULT_VERIFY_TOL) -> CheckRecord:
  """K(p, q) = <U K_p, U K_q> on random pairs, relative to 1 + max |K|."""
  point_pairs = [
      synthetic_data.random_kpoint_pairs(
          synthetic_data.trial_generator(seed, _U_ISOMETRY_ID, pair), phi.dim,
          1)[0] for pair in range(pairs)
  ]
  residual = dilation.check_u_isometry(phi, dil, point_pairs)
  largest = max(
      [abs(kernel_rkhs.eval_k(phi, p, q)) for p, q in point_pairs],
      default=0.0)
  return _make_record('u_isometry', [residual / (1.0 + largest)],
                      _scale(_U_ISOMETRY_TOL, verify_tol), pairs)


def check_intertwining(dil: dilation.StinespringDilation,
                       trials: int = DEFAULT_TRIALS,
                       seed: int = DEFAULT_SEED,
                       verify_tol: float = DEFAULT_VERIFY_TOL) -> CheckRecord:
  """(S (x) I) U K_(T, b) = U K_(ST, b) on random triples."""
  residuals = []
  for trial in range(trials):
    generator = synthetic_data.trial_generator(seed, _INTERTWINING_ID, trial)
    operator = synthetic_data.random_operator(generator, dil.dim)
    (point,) = synthetic_data.random_kpoints(generator, dil.dim, 1)
    scale = 1.0 + numerics.frobenius_norm(operator) * numerics.frobenius_norm(
        dilation.u_image(dil, point))
    residuals.append(dilation.check_intertwining(dil, operator, point) / scale)
  return _make_record('intertwining', residuals,
                      _scale(_INTERTWINING_TOL, verify_tol), trials)


def check_isometry(phi: channel.CPMap,
                   dil: dilation.StinespringDilation,
                   unital: bool,
                   verify_tol: float = DEFAULT_VERIFY_TOL) -> List[CheckRecord]:
  """W* W = phi(I), and W* W = I when phi is unital."""
  w = dilation.stinespring_matrix(dil)
  gram = numerics.adjoint(w) @ w
  unit_image = channel.apply(phi, np.eye(phi.dim, dtype=np.complex128))
  records = [
      _make_record(
          'w_gram', [
              numerics.frobenius_norm(gram - unit_image) /
              (1.0 + numerics.frobenius_norm(unit_image))
          ], _scale(_ISOMETRY_TOL, verify_tol), 1)
  ]
  if unital:
    records.append(
        _make_record('w_isometry',
                     [numerics.frobenius_norm(gram - np.eye(phi.dim))],
                     _scale(_ISOMETRY_TOL, verify_tol), 1))
  return records


def check_minimality(dil: dilation.StinespringDilation) -> CheckRecord:
  """minimality_rank equals d * r."""
  defect = abs(dilation.minimality_rank(dil) - dil.dim * dil.ancilla_dim)
  return _make_record('minimality', [float(defect)], 0.0, 1)


def check_kraus_rank(phi: channel.CPMap, kraus: channel.KrausSet,
                     rank_rtol: float = numerics.DEFAULT_RANK_RTOL,
                     rank_atol: float = numerics.DEFAULT_RANK_ATOL
                    ) -> CheckRecord:
  """Kraus count equals the numerical rank of the Choi matrix."""
  defect = abs(len(kraus) - channel.kraus_rank(phi, rank_rtol, rank_atol))
  return _make_record('kraus_rank', [float(defect)], 0.0, 1)


def run_full_suite(phi: channel.CPMap,
                   seed: int = DEFAULT_SEED,
                   trials: int = DEFAULT_TRIALS,
                   verify_tol: float = DEFAULT_VERIFY_TOL,
                   family_size: int = DEFAULT_FAMILY_SIZE,
                   rank_rtol: float = numerics.DEFAULT_RANK_RTOL,
                   rank_atol: float = numerics.DEFAULT_RANK_ATOL,
                   max_workers: int = 1,
                   dil: Optional[dilation.StinespringDilation] = None,
                   psd_tol: float = kernel_rkhs.DEFAULT_PSD_TOL
                  ) -> VerificationReport:
  """Builds the dilation and Kraus set of phi and runs every check.

  Args:
    phi: A validated CP map.
    seed: Seed all trial generators derive from.
    trials: Trials per randomized check.
    verify_tol: Overall tolerance scale.
    family_size: Points per random family in the Gram positivity check.
    rank_rtol: Relative rank cutoff for the ancilla dimension.
    rank_atol: Absolute rank cutoff for the ancilla dimension.
    max_workers: Threads for running checks concurrently. Results do not
      depend on it.
    dil: A prebuilt dilation to certify instead of building one.
    psd_tol: Relative floor for negative Gram eigenvalues when building the
      dilation.

  Returns:
    The report, records in fixed order.

  Raises:
    NotPSD: If phi is not CP.
  """
  if dil is None:
    dil = dilation.build_dilation(phi, rank_rtol, rank_atol, psd_tol)
  kraus = dilation.extract_kraus(dil)
  unital = channel.classify(phi).unital

  checks: List[Tuple[str, Callable[[], Any]]] = [
      ('gram_psd', lambda: check_gram_psd(phi, trials, family_size, seed,
                                          verify_tol)),
      ('norm_bound', lambda: check_norm_bound(dil, trials, seed, verify_tol)),
      ('homomorphism',
       lambda: check_homomorphism(dil, trials, seed, verify_tol)),
      ('reconstruction', lambda: check_reconstruction(
          phi, dil, kraus, trials, seed, verify_tol)),
      ('compression_identity', lambda: check_compression_identity(
          phi, dil, trials, seed, verify_tol)),
      ('dilation_compression', lambda: check_dilation_compression(
          phi, dil, trials, seed, verify_tol)),
      ('u_isometry', lambda: check_u_isometry_record(
          phi, dil, U_ISOMETRY_PAIRS, seed, verify_tol)),
      ('intertwining',
       lambda: check_intertwining(dil, trials, seed, verify_tol)),
      ('isometry', lambda: check_isometry(phi, dil, unital, verify_tol)),
      ('minimality', lambda: check_minimality(dil)),
      ('kraus_rank',
       lambda: check_kraus_rank(phi, kraus, rank_rtol, rank_atol)),
  ]

  def timed(check: Callable[[], Any]) -> Tuple[Any, float]:
    start = time.perf_counter()
    result = check()
    return result, time.perf_counter() - start

  if max_workers > 1:
    with futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
      outcomes = list(executor.map(timed, [check for _, check in checks]))
  else:
    outcomes = [timed(check) for _, check in checks]

  records = []
  timings = {}
  for (name, _), (result, seconds) in zip(checks, outcomes):
    timings[name] = seconds
    if isinstance(result, list):
      records.extend(result)
    else:
      records.append(result)
  passed = all(record.passed for record in records)
  logging.info('Verification of dim=%r ancilla_dim=%r: %s', phi.dim,
               dil.ancilla_dim, 'PASS' if passed else 'FAIL')
  return VerificationReport(
      records=tuple(records),
      passed=passed,
      seed=seed,
      dim=phi.dim,
      ancilla_dim=dil.ancilla_dim,
      unital=unital,
      timings=timings)
