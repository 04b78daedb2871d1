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
"""Command line interface.

  python -m src.cli random --dim 3 --rank 9 --seed 1 --out channel.json
  python -m src.cli convert --in channel.json --to choi --out choi.json
  python -m src.cli dilate --in channel.json --out dilation.json
  python -m src.cli verify --in channel.json --trials 100 --seed 42

Reports go to stdout as JSON; logs go to stderr. Exit codes: 0 success,
1 failed verification, 2 bad input (including maps that are not CP).
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from absl import logging

from src import channel
from src import numerics
from src import serialization
from src import stinekernel

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2

# Flag destination -> StineKernel field.
_PIPELINE_FLAGS = {
    'cp_tol': 'cp_tol',
    'rank_rtol': 'rank_rtol',
    'rank_atol': 'rank_atol',
    'tol': 'verify_tol',
    'trials': 'trials',
    'seed': 'seed',
    'workers': 'max_workers',
}


def _print_json(document: Dict[str, Any]) -> None:
  sys.stdout.write(serialization.dumps(document))


def _report_input_error(error: Exception) -> int:
  message = f'{type(error).__name__}: {error}'
  logging.error('%s', message)
  print(message, file=sys.stderr)
  return EXIT_BAD_INPUT


def _pipeline(parameters_file: Optional[str] = None,
              **overrides: Any) -> stinekernel.StineKernel:
  overrides = {key: value for key, value in overrides.items()
               if value is not None}
  if parameters_file:
    return stinekernel.StineKernel.from_parameters_file(
        parameters_file, **overrides)
  return stinekernel.StineKernel(**overrides)


def cmd_convert(in_path: str,
                to: str,
                out_path: str,
                pipeline: Optional[stinekernel.StineKernel] = None) -> int:
  """Converts a channel file to Kraus or Choi representation.

  Choi to Kraus goes through the dilation: the Kraus operators are the
  slices of W.

  Args:
    in_path: Input channel file.
    to: 'kraus' or 'choi'.
    out_path: Output channel file.
    pipeline: Tolerance settings.

  Returns:
    The exit code.
  """
  pipeline = pipeline or stinekernel.StineKernel()
  try:
    if to not in serialization.REPRESENTATIONS:
      raise serialization.MalformedFile(f'Unknown target representation {to!r}')
    phi = pipeline.load_channel(in_path)
    if to == 'choi':
      converted = serialization.choi_file(phi)
    else:
      converted = serialization.kraus_file(
          pipeline.kraus(pipeline.dilate(phi)))
    serialization.write_channel_file(out_path, converted)
  except (numerics.StineKernelError, OSError) as e:
    return _report_input_error(e)
  return EXIT_OK


def cmd_dilate(in_path: str,
               out_path: Optional[str] = None,
               pipeline: Optional[stinekernel.StineKernel] = None) -> int:
  """Writes the dilation file and prints a summary."""
  pipeline = pipeline or stinekernel.StineKernel()
  try:
    phi = pipeline.load_channel(in_path)
    dil = pipeline.dilate(phi)
    if out_path:
      serialization.write_dilation_file(out_path, dil)
  except (numerics.StineKernelError, OSError) as e:
    return _report_input_error(e)
  eigenvalues = dil.basis.eigenvalues
  _print_json({
      'dim': dil.dim,
      'ancilla_dim': dil.ancilla_dim,
      'min_ancilla_eigenvalue':
          float(eigenvalues[-1]) if eigenvalues.size else None,
      'max_ancilla_eigenvalue':
          float(eigenvalues[0]) if eigenvalues.size else None,
  })
  return EXIT_OK


def cmd_verify(in_path: str,
               pipeline: Optional[stinekernel.StineKernel] = None,
               timings: bool = False) -> int:
  """Prints the verification report; exit 0 iff every check passed."""
  pipeline = pipeline or stinekernel.StineKernel()
  try:
    phi = pipeline.load_channel(in_path)
    report = pipeline.run_verification(phi)
  except (numerics.StineKernelError, OSError) as e:
    return _report_input_error(e)
  _print_json(report.to_dict(include_timings=timings))
  return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_random(dim: int,
               rank: int,
               seed: int,
               unital: bool,
               out_path: str) -> int:
  """Writes a random map as a Kraus channel file."""
  try:
    kraus = channel.random_kraus(dim, rank, seed, unital)
    serialization.write_channel_file(out_path,
                                     serialization.kraus_file(kraus))
  except (numerics.StineKernelError, OSError) as e:
    return _report_input_error(e)
  return EXIT_OK


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
  parser.add_argument('--cp-tol', dest='cp_tol', type=float,
                      help='Relative tolerance of the Choi positivity test.')
  parser.add_argument('--rank-rtol', dest='rank_rtol', type=float,
                      help='Relative eigenvalue cutoff for ranks.')
  parser.add_argument('--rank-atol', dest='rank_atol', type=float,
                      help='Absolute eigenvalue cutoff for ranks.')
  parser.add_argument('--parameters-file', dest='parameters_file',
                      help='JSON file with StineKernel parameters; explicit '
                      'flags take precedence.')


def build_parser() -> argparse.ArgumentParser:
  parser = argparse.ArgumentParser(
      prog='stinekernel',
      description='Stinespring dilations and Kraus forms of CP maps.')
  parser.add_argument('--verbosity', default='warning',
                      choices=['debug', 'info', 'warning', 'error'],
                      help='Logging verbosity on stderr.')
  commands = parser.add_subparsers(dest='command', required=True)

  convert = commands.add_parser('convert', help='Change representation.')
  convert.add_argument('--in', dest='in_path', required=True)
  convert.add_argument('--to', choices=serialization.REPRESENTATIONS,
                       required=True)
  convert.add_argument('--out', dest='out_path', required=True)
  _add_tolerance_flags(convert)

  dilate = commands.add_parser('dilate', help='Write the dilation file.')
  dilate.add_argument('--in', dest='in_path', required=True)
  dilate.add_argument('--out', dest='out_path')
  _add_tolerance_flags(dilate)

  verify = commands.add_parser('verify', help='Certify the identities.')
  verify.add_argument('--in', dest='in_path', required=True)
  verify.add_argument('--trials', type=int, default=None,
                      help='Trials per check (default 100).')
  verify.add_argument('--seed', type=int, default=None,
                      help='Trial seed (default 42).')
  verify.add_argument('--tol', type=float, default=None,
                      help='Verification tolerance scale (default 1e-9).')
  verify.add_argument('--workers', type=int, default=None,
                      help='Threads for running checks.')
  verify.add_argument('--timings', action='store_true',
                      help='Include per-check timings in the report.')
  _add_tolerance_flags(verify)

  random = commands.add_parser('random', help='Write a random CP map.')
  random.add_argument('--dim', type=int, required=True)
  random.add_argument('--rank', type=int, required=True)
  random.add_argument('--seed', type=int, default=42)
  random.add_argument('--unital', action='store_true')
  random.add_argument('--out', dest='out_path', required=True)
  return parser


def run(argv: Optional[List[str]] = None) -> int:
  """Parses `argv` and runs one subcommand, returning its exit code."""
  args = build_parser().parse_args(argv)
  logging.set_verbosity(args.verbosity)
  if args.command == 'random':
    return cmd_random(args.dim, args.rank, args.seed, args.unital,
                      args.out_path)
  overrides = {
      field: getattr(args, flag, None)
      for flag, field in _PIPELINE_FLAGS.items()
  }
  try:
    pipeline = _pipeline(args.parameters_file, **overrides)
  except (ValueError, TypeError, OSError, json.JSONDecodeError) as e:
    return _report_input_error(e)
  if args.command == 'convert':
    return cmd_convert(args.in_path, args.to, args.out_path, pipeline)
  if args.command == 'dilate':
    return cmd_dilate(args.in_path, args.out_path, pipeline)
  return cmd_verify(args.in_path, pipeline, args.timings)


def main() -> None:
  raise SystemExit(run())


if __name__ == '__main__':
  main()
