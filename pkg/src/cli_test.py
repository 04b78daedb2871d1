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
"""Tests for src.cli."""

import io
import json
import os
import tempfile
import unittest

import mock
import numpy as np

from src import channel
from src import cli
from src import numerics
from src import serialization
from src import synthetic_data


class CliTest(unittest.TestCase):

  def setUp(self):
    super().setUp()
    self.tempdir = tempfile.TemporaryDirectory()
    self.addCleanup(self.tempdir.cleanup)

  def _path(self, name):
    return os.path.join(self.tempdir.name, name)

  def _run(self, argv):
    """Runs the CLI and returns (exit code, stdout, stderr)."""
    with mock.patch('sys.stdout', new_callable=io.StringIO) as stdout, \
        mock.patch('sys.stderr', new_callable=io.StringIO) as stderr:
      code = cli.run(argv)
    return code, stdout.getvalue(), stderr.getvalue()

  def _read(self, path):
    with open(path, 'rb') as f:
      return f.read()

  def _write_kraus(self, name, kraus):
    path = self._path(name)
    serialization.write_channel_file(path, serialization.kraus_file(kraus))
    return path

  def _write_choi(self, name, choi_matrix):
    path = self._path(name)
    dim = int(round(np.sqrt(choi_matrix.shape[0])))
    serialization.write_channel_file(
        path,
        serialization.ChannelFile(
            dim=dim, representation='choi', data=choi_matrix))
    return path

  def _identity_file(self):
    return self._write_kraus(
        'identity.json', channel.KrausSet(dim=2, ops=(np.eye(2),)))

  def test_random_is_byte_stable(self):
    first, second = self._path('first.json'), self._path('second.json')
    for path in (first, second):
      code, _, _ = self._run(
          ['random', '--dim', '3', '--rank', '4', '--seed', '5', '--out', path])
      self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(self._read(first), self._read(second))

  def test_random_unital_rank_one_is_unitary(self):
    path = self._path('unitary.json')
    code, _, _ = self._run([
        'random', '--dim', '2', '--rank', '1', '--unital', '--out', path
    ])
    self.assertEqual(code, cli.EXIT_OK)
    (v,) = serialization.read_channel_file(path).data
    self.assertLessEqual(
        numerics.max_norm(numerics.adjoint(v) @ v - np.eye(2)), 1e-12)

  def test_random_rejects_rank_out_of_range(self):
    code, _, stderr = self._run([
        'random', '--dim', '2', '--rank', '5', '--out', self._path('x.json')
    ])
    self.assertEqual(code, cli.EXIT_BAD_INPUT)
    self.assertIn('RankOutOfRange', stderr)

  def test_random_full_rank_dilates_to_nine(self):
    path = self._path('full.json')
    self._run(['random', '--dim', '3', '--rank', '9', '--seed', '1',
               '--out', path])
    code, stdout, _ = self._run(['dilate', '--in', path])
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(json.loads(stdout)['ancilla_dim'], 9)

  def test_convert_identity_to_choi(self):
    out = self._path('choi.json')
    code, _, _ = self._run(
        ['convert', '--in', self._identity_file(), '--to', 'choi', '--out', out])
    self.assertEqual(code, cli.EXIT_OK)
    parsed = serialization.read_channel_file(out)
    v = np.array([1, 0, 0, 1], dtype=complex)
    np.testing.assert_array_equal(parsed.data, np.outer(v, v))

  def test_convert_rejects_swap_choi(self):
    path = self._write_choi('swap.json', synthetic_data.swap_choi(2))
    code, stdout, stderr = self._run(
        ['convert', '--in', path, '--to', 'kraus', '--out', self._path('k')])
    self.assertEqual(code, cli.EXIT_BAD_INPUT)
    self.assertEqual(stdout, '')
    self.assertIn('NotCompletelyPositive', stderr)
    self.assertIn('-1', stderr)
    self.assertFalse(os.path.exists(self._path('k')))

  def test_convert_round_trip_preserves_action(self):
    original = channel.random_kraus(3, 4, seed=8)
    kraus_path = self._write_kraus('kraus.json', original)
    choi_path, back_path = self._path('choi.json'), self._path('back.json')
    self.assertEqual(
        self._run(['convert', '--in', kraus_path, '--to', 'choi',
                   '--out', choi_path])[0], cli.EXIT_OK)
    self.assertEqual(
        self._run(['convert', '--in', choi_path, '--to', 'kraus',
                   '--out', back_path])[0], cli.EXIT_OK)
    parsed = serialization.read_channel_file(back_path)
    converted = channel.KrausSet(dim=3, ops=tuple(parsed.data))
    for i in range(3):
      for j in range(3):
        unit = numerics.matrix_unit(3, i, j)
        self.assertLessEqual(
            numerics.max_norm(original.apply(unit) - converted.apply(unit)),
            1e-9)

  def test_dilate_fixtures(self):
    dephasing = self._write_kraus(
        'dephasing.json',
        channel.KrausSet(
            dim=2,
            ops=(numerics.matrix_unit(2, 0, 0), numerics.matrix_unit(2, 1, 1))))
    zero = self._write_kraus('zero.json', channel.KrausSet(dim=2, ops=()))
    expected = {self._identity_file(): 1, dephasing: 2, zero: 0}
    for path, ancilla_dim in expected.items():
      code, stdout, _ = self._run(['dilate', '--in', path])
      self.assertEqual(code, cli.EXIT_OK)
      self.assertEqual(json.loads(stdout)['ancilla_dim'], ancilla_dim, path)
    summary = json.loads(self._run(['dilate', '--in', zero])[1])
    self.assertIsNone(summary['min_ancilla_eigenvalue'])

  def test_dilate_writes_dilation_file(self):
    path = self._write_kraus('kraus.json', channel.random_kraus(2, 3, seed=2))
    out = self._path('dilation.json')
    code, stdout, _ = self._run(['dilate', '--in', path, '--out', out])
    self.assertEqual(code, cli.EXIT_OK)
    summary = serialization.dilation_summary_from_document(
        serialization.read_document(out))
    self.assertEqual(summary['ancilla_dim'], 3)
    printed = json.loads(stdout)
    self.assertAlmostEqual(printed['max_ancilla_eigenvalue'],
                           summary['eigenvalues'][0])

  def test_verify_identity_passes(self):
    code, stdout, _ = self._run(
        ['verify', '--in', self._identity_file(), '--trials', '10'])
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(stdout)
    self.assertTrue(report['passed'])
    self.assertEqual(report['seed'], 42)
    self.assertNotIn('timings', report)

  def test_verify_random_map_passes(self):
    path = self._path('random.json')
    self._run(['random', '--dim', '4', '--rank', '7', '--seed', '3',
               '--out', path])
    code, _, _ = self._run(['verify', '--in', path, '--trials', '20'])
    self.assertEqual(code, cli.EXIT_OK)

  def test_verify_is_byte_stable(self):
    path = self._write_kraus('kraus.json', channel.random_kraus(3, 4, seed=4))
    argv = ['verify', '--in', path, '--trials', '10', '--seed', '7']
    first = self._run(argv)
    second = self._run(argv)
    self.assertEqual(first[0], cli.EXIT_OK)
    self.assertEqual(first[1], second[1])

  def test_verify_with_workers_and_timings(self):
    path = self._write_kraus('kraus.json', channel.random_kraus(2, 2, seed=4))
    code, stdout, _ = self._run([
        'verify', '--in', path, '--trials', '5', '--workers', '3', '--timings'
    ])
    self.assertEqual(code, cli.EXIT_OK)
    self.assertIn('timings', json.loads(stdout))

  def test_verify_failure_exits_one(self):
    path = self._write_kraus('kraus.json', channel.random_kraus(3, 4, seed=4))
    code, stdout, _ = self._run(
        ['verify', '--in', path, '--trials', '5', '--tol', '1e-30'])
    self.assertEqual(code, cli.EXIT_CHECK_FAILED)
    self.assertFalse(json.loads(stdout)['passed'])

  def test_verify_rejects_corrupted_choi(self):
    v = np.array([[1], [0], [0], [1]], dtype=complex)
    corrupted = v @ numerics.adjoint(v)
    corrupted[1, 1] = -0.05
    path = self._write_choi('corrupted.json', corrupted)
    code, stdout, stderr = self._run(['verify', '--in', path])
    self.assertEqual(code, cli.EXIT_BAD_INPUT)
    self.assertEqual(stdout, '')
    self.assertIn('NotCompletelyPositive', stderr)

  def test_malformed_and_missing_files_exit_two(self):
    broken = self._path('broken.json')
    with open(broken, 'w') as f:
      f.write('{"format": ')
    self.assertEqual(
        self._run(['verify', '--in', broken])[0], cli.EXIT_BAD_INPUT)
    self.assertEqual(
        self._run(['dilate', '--in', self._path('missing.json')])[0],
        cli.EXIT_BAD_INPUT)

  def test_undecodable_and_deeply_nested_files_exit_two(self):
    garbage = self._path('garbage.json')
    with open(garbage, 'wb') as f:
      f.write(b'\xff\xfe\x00garbage')
    deep = self._path('deep.json')
    with open(deep, 'w') as f:
      f.write('{"format": ' + '[' * 100000 + ']' * 100000 + '}')
    for path in (garbage, deep):
      for command in ('verify', 'dilate'):
        code, stdout, stderr = self._run([command, '--in', path])
        self.assertEqual(code, cli.EXIT_BAD_INPUT, (command, path))
        self.assertEqual(stdout, '')
        self.assertIn('MalformedFile', stderr)

  def test_cp_tol_reaches_dilate_and_convert(self):
    v = np.array([[1], [0], [0], [1]], dtype=complex)
    nearly_psd = v @ numerics.adjoint(v)
    nearly_psd[1, 1] = -1e-6
    path = self._write_choi('nearly_psd.json', nearly_psd)
    code, stdout, _ = self._run(['dilate', '--in', path, '--cp-tol', '1e-5'])
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(json.loads(stdout)['ancilla_dim'], 1)
    out = self._path('kraus.json')
    code, _, _ = self._run([
        'convert', '--in', path, '--to', 'kraus', '--out', out, '--cp-tol',
        '1e-5'
    ])
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(len(serialization.read_channel_file(out).data), 1)
    code, _, stderr = self._run(['dilate', '--in', path])
    self.assertEqual(code, cli.EXIT_BAD_INPUT)
    self.assertIn('NotCompletelyPositive', stderr)

  def test_dilation_file_is_accepted_as_input(self):
    path = self._write_kraus('kraus.json', channel.random_kraus(3, 4, seed=6))
    dilation_path = self._path('dilation.json')
    self.assertEqual(
        self._run(['dilate', '--in', path, '--out', dilation_path])[0],
        cli.EXIT_OK)
    code, stdout, _ = self._run(
        ['verify', '--in', dilation_path, '--trials', '10'])
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(stdout)
    self.assertTrue(report['passed'])
    self.assertEqual(report['ancilla_dim'], 4)
    choi_path = self._path('choi.json')
    self.assertEqual(
        self._run(['convert', '--in', dilation_path, '--to', 'choi',
                   '--out', choi_path])[0], cli.EXIT_OK)
    self.assertEqual(serialization.read_channel_file(choi_path).dim, 3)
    code, stdout, _ = self._run(['dilate', '--in', dilation_path])
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(json.loads(stdout)['ancilla_dim'], 4)

  def test_parameters_file_and_flag_precedence(self):
    parameters = self._path('parameters.json')
    with open(parameters, 'w') as f:
      json.dump({'trials': 3, 'seed': 11}, f)
    code, stdout, _ = self._run([
        'verify', '--in', self._identity_file(), '--parameters-file',
        parameters, '--seed', '12'
    ])
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(stdout)
    self.assertEqual(report['seed'], 12)
    self.assertEqual(report['checks'][0]['trials'], 3)

  def test_bad_parameters_file_exits_two(self):
    parameters = self._path('parameters.json')
    with open(parameters, 'w') as f:
      json.dump({'trials': 0}, f)
    code, _, _ = self._run([
        'verify', '--in', self._identity_file(), '--parameters-file',
        parameters
    ])
    self.assertEqual(code, cli.EXIT_BAD_INPUT)

  def test_missing_required_flag_is_a_usage_error(self):
    with mock.patch('sys.stderr', new_callable=io.StringIO):
      with self.assertRaises(SystemExit) as context:
        cli.run(['verify'])
    self.assertEqual(context.exception.code, cli.EXIT_BAD_INPUT)


if __name__ == '__main__':
  unittest.main()
