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
"""JSON file formats for channels and dilations.

Complex entries are written as [re, im] pairs of binary64 floats, matrices as
nested row-major lists. Every document names its format and its index
conventions so that other tools cannot misread it silently.

Channel file:

  {"format": "stinekernel.channel/1", "dim": 2, "representation": "kraus",
   "convention": "heisenberg", "zero_map": false,
   "choi_index": "row = i*dim + k", "data": [...]}

Dilation file:

  {"format": "stinekernel.dilation/1", "dim": 2, "ancilla_dim": 1,
   "w_index": "row = i*ancilla_dim + alpha", "convention": "heisenberg",
   "W": [...], "kraus": [...], "eigenvalues": [...], "source": "<sha256>"}
"""

import dataclasses
import json
from typing import Any, Dict, List, Optional, Sequence

from absl import logging
import numpy as np

from src import channel
from src import dilation
from src import numerics

CHANNEL_FORMAT = 'stinekernel.channel/1'
DILATION_FORMAT = 'stinekernel.dilation/1'
CHOI_INDEX = 'row = i*dim + k'
W_INDEX = 'row = i*ancilla_dim + alpha'
REPRESENTATIONS = ('kraus', 'choi')


class MalformedFile(numerics.StineKernelError):
  """A channel or dilation document does not follow its format."""


@dataclasses.dataclass(frozen=True, eq=False)
class ChannelFile:
  """A channel in Kraus or Choi representation.

  Attributes:
    dim: Dimension d.
    representation: 'kraus' or 'choi'.
    data: List of d x d Kraus operators, or the d^2 x d^2 Choi matrix.
    zero_map: Set for an empty Kraus list.
  """
  dim: int
  representation: str
  data: Any
  zero_map: bool = False

  def to_cp_map(self, cp_tol: float = channel.DEFAULT_CP_TOL) -> channel.CPMap:
    if self.representation == 'kraus':
      return channel.from_kraus(self.dim, self.data)
    return channel.from_choi(self.data, cp_tol)


def encode_matrix(matrix: np.ndarray) -> List[List[List[float]]]:
  return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def decode_matrix(data: Any, shape: Optional[Sequence[int]] = None
                 ) -> np.ndarray:
  """Parses nested [re, im] lists.

  Raises:
    MalformedFile: If the data is not a matrix of pairs of the given shape.
  """
  try:
    pairs = np.array(data, dtype=np.float64)
  except (TypeError, ValueError, RecursionError) as e:
    raise MalformedFile(f'Matrix entries must be [re, im] pairs: {e}') from e
  if not pairs.size and shape is not None and 0 in shape:
    return np.zeros(tuple(shape), dtype=np.complex128)
  if pairs.ndim != 3 or pairs.shape[2] != 2:
    raise MalformedFile(
        f'Expected a matrix of [re, im] pairs, got array shape {pairs.shape}')
  matrix = pairs[..., 0] + 1j * pairs[..., 1]
  if shape is not None and matrix.shape != tuple(shape):
    raise MalformedFile(
        f'Matrix has shape {matrix.shape}, expected {tuple(shape)}')
  try:
    return numerics.as_matrix(matrix)
  except numerics.NonFiniteEntry as e:
    raise MalformedFile(str(e)) from e


def _require(document: Dict[str, Any], key: str) -> Any:
  if key not in document:
    raise MalformedFile(f'Missing field {key!r}')
  return document[key]


def _require_dim(document: Dict[str, Any], key: str, minimum: int) -> int:
  value = _require(document, key)
  if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
    raise MalformedFile(f'Field {key!r} must be an integer >= {minimum}')
  return value


def channel_to_document(channel_file: ChannelFile) -> Dict[str, Any]:
  document = {
      'format': CHANNEL_FORMAT,
      'dim': channel_file.dim,
      'representation': channel_file.representation,
      'convention': channel.KRAUS_CONVENTION,
      'zero_map': channel_file.zero_map,
      'choi_index': CHOI_INDEX,
  }
  if channel_file.representation == 'kraus':
    document['data'] = [encode_matrix(op) for op in channel_file.data]
  else:
    document['data'] = encode_matrix(channel_file.data)
  return document


def channel_from_document(document: Any) -> ChannelFile:
  """Validates and decodes a channel document.

  A dilation document is accepted too and read as the Kraus channel it
  carries.

  Raises:
    MalformedFile: On any format violation.
  """
  if not isinstance(document, dict):
    raise MalformedFile('Channel document must be a JSON object')
  if document.get('format') == DILATION_FORMAT:
    return kraus_file(dilation_summary_from_document(document)['kraus'])
  if _require(document, 'format') != CHANNEL_FORMAT:
    raise MalformedFile(f'Unsupported format {document["format"]!r}')
  dim = _require_dim(document, 'dim', 1)
  representation = _require(document, 'representation')
  if representation not in REPRESENTATIONS:
    raise MalformedFile(f'Unknown representation {representation!r}')
  convention = document.get('convention', channel.KRAUS_CONVENTION)
  if convention != channel.KRAUS_CONVENTION:
    raise MalformedFile(
        f'Unsupported Kraus convention {convention!r}; expected '
        f'{channel.KRAUS_CONVENTION!r}')
  zero_map = document.get('zero_map', False)
  if not isinstance(zero_map, bool):
    raise MalformedFile('Field "zero_map" must be true or false')
  data = _require(document, 'data')
  if representation == 'choi':
    return ChannelFile(
        dim=dim,
        representation=representation,
        data=decode_matrix(data, (dim * dim, dim * dim)),
        zero_map=zero_map)
  if not isinstance(data, list):
    raise MalformedFile('Kraus data must be a list of matrices')
  if not data and not zero_map:
    raise MalformedFile('Empty Kraus list requires "zero_map": true')
  ops = [decode_matrix(op, (dim, dim)) for op in data]
  return ChannelFile(
      dim=dim, representation=representation, data=ops, zero_map=zero_map)


def kraus_file(kraus: channel.KrausSet) -> ChannelFile:
  return ChannelFile(
      dim=kraus.dim,
      representation='kraus',
      data=list(kraus.ops),
      zero_map=not kraus.ops)


def choi_file(phi: channel.CPMap) -> ChannelFile:
  return ChannelFile(dim=phi.dim, representation='choi', data=channel.choi(phi))


def dilation_to_document(dil: dilation.StinespringDilation) -> Dict[str, Any]:
  kraus = dilation.extract_kraus(dil)
  return {
      'format': DILATION_FORMAT,
      'dim': dil.dim,
      'ancilla_dim': dil.ancilla_dim,
      'w_index': W_INDEX,
      'convention': channel.KRAUS_CONVENTION,
      'W': encode_matrix(dilation.stinespring_matrix(dil)),
      'kraus': [encode_matrix(op) for op in kraus.ops],
      'eigenvalues': [float(value) for value in dil.basis.eigenvalues],
      'source': dil.source,
  }


def dilation_summary_from_document(document: Any) -> Dict[str, Any]:
  """Validates a dilation document and returns its decoded fields.

  Raises:
    MalformedFile: On any format violation.
  """
  if not isinstance(document, dict):
    raise MalformedFile('Dilation document must be a JSON object')
  if _require(document, 'format') != DILATION_FORMAT:
    raise MalformedFile(f'Unsupported format {document["format"]!r}')
  dim = _require_dim(document, 'dim', 1)
  ancilla_dim = _require_dim(document, 'ancilla_dim', 0)
  w = decode_matrix(_require(document, 'W'), (dim * ancilla_dim, dim))
  kraus_data = _require(document, 'kraus')
  if not isinstance(kraus_data, list):
    raise MalformedFile('Kraus data must be a list of matrices')
  kraus = [decode_matrix(op, (dim, dim)) for op in kraus_data]
  try:
    eigenvalues = np.array(
        _require(document, 'eigenvalues'), dtype=np.float64)
  except (TypeError, ValueError) as e:
    raise MalformedFile(f'Eigenvalues must be a list of numbers: {e}') from e
  if len(kraus) != ancilla_dim or eigenvalues.shape != (ancilla_dim,):
    raise MalformedFile('Kraus list and eigenvalues must have ancilla_dim '
                        'entries')
  if np.any(eigenvalues <= 0) or np.any(np.diff(eigenvalues) > 0):
    raise MalformedFile('Eigenvalues must be positive and nonincreasing')
  return {
      'dim': dim,
      'ancilla_dim': ancilla_dim,
      'W': w,
      'kraus': channel.KrausSet(dim=dim, ops=tuple(kraus)),
      'eigenvalues': eigenvalues,
      'source': document.get('source'),
  }


def dumps(document: Dict[str, Any]) -> str:
  return json.dumps(document, indent=2, sort_keys=True) + '\n'


def _read_file(path: str) -> str:
  with open(path, encoding='utf-8') as f:
    return f.read()


def _write_file(path: str, text: str) -> None:
  with open(path, 'w', encoding='utf-8') as f:
    f.write(text)


def read_document(path: str) -> Any:
  """Reads a JSON document.

  Raises:
    MalformedFile: If the file is not UTF-8 JSON or nests too deeply.
  """
  logging.info('Reading %r', path)
  try:
    return json.loads(_read_file(path))
  except RecursionError as e:
    raise MalformedFile(f'{path}: JSON nests too deeply') from e
  except ValueError as e:
    # Covers json.JSONDecodeError and UnicodeDecodeError.
    raise MalformedFile(f'{path}: invalid JSON: {e}') from e


def write_document(path: str, document: Dict[str, Any]) -> None:
  _write_file(path, dumps(document))
  logging.info('Wrote %r', path)


def read_channel_file(path: str) -> ChannelFile:
  return channel_from_document(read_document(path))


def write_channel_file(path: str, channel_file: ChannelFile) -> None:
  write_document(path, channel_to_document(channel_file))


def write_dilation_file(path: str, dil: dilation.StinespringDilation) -> None:
  write_document(path, dilation_to_document(dil))
