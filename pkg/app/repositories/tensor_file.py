"""Binary ``.t3`` tensor files.

Layout (little endian)::

    magic   4 bytes  b"T3v1"
    kind    1 byte   0 real, 1 complex
    p, q, n 3 x u64
    payload p*q*n binary64 values (complex: interleaved re, im),
            slice-major and column-major within a slice
"""

import struct
from pathlib import Path

import numpy as np
import structlog

from app.core.exceptions import TensorFileError
from app.tensors.tensor import ScalarKind, Tensor3

logger = structlog.get_logger(__name__)

MAGIC = b"T3v1"
HEADER = struct.Struct("<4sB3Q")

_KIND_CODES = {ScalarKind.REAL: 0, ScalarKind.COMPLEX: 1}
_DTYPES = {0: np.dtype("<f8"), 1: np.dtype("<c16")}


def encode(tensor: Tensor3) -> bytes:
    """Serialize a tensor to ``.t3`` bytes."""
    code = _KIND_CODES[tensor.scalar_kind]
    header = HEADER.pack(MAGIC, code, tensor.p, tensor.q, tensor.n)
    payload = np.asarray(tensor.data, dtype=_DTYPES[code]).ravel(order="F").tobytes()
    return header + payload


def decode(blob: bytes, source: str = "<bytes>") -> Tensor3:
    """Parse ``.t3`` bytes.

    Raises:
        TensorFileError: On a short header, wrong magic, unknown kind,
            zero dimensions or a payload of the wrong length
    """
    if len(blob) < HEADER.size:
        raise TensorFileError(source, f"truncated header ({len(blob)} bytes)")
    magic, code, p, q, n = HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise TensorFileError(source, f"bad magic {magic!r}")
    if code not in _DTYPES:
        raise TensorFileError(source, f"unknown scalar kind {code}")
    if min(p, q, n) == 0:
        raise TensorFileError(source, f"zero dimension in {p}x{q}x{n}")

    dtype = _DTYPES[code]
    expected = p * q * n * dtype.itemsize
    payload = blob[HEADER.size:]
    if len(payload) != expected:
        raise TensorFileError(source, f"payload has {len(payload)} bytes, expected {expected}")
    data = np.frombuffer(payload, dtype=dtype).reshape((p, q, n), order="F")
    return Tensor3(data)


class TensorFileRepository:
    """Reads and writes tensors under an optional base directory.

    Example:
        repo = TensorFileRepository()
        repo.write(x, "X.t3")
        assert repo.read("X.t3").allclose(x, rtol=0, atol=0)
    """

    def __init__(self, base_dir: str | Path | None = None) -> None:
        self.base_dir = Path(base_dir) if base_dir is not None else None

    def resolve(self, path: str | Path) -> Path:
        path = Path(path)
        if self.base_dir is not None and not path.is_absolute():
            return self.base_dir / path
        return path

    def read(self, path: str | Path) -> Tensor3:
        """Load a tensor.

        Args:
            path: File to read

        Returns:
            The stored tensor, bit-exact

        Raises:
            TensorFileError: If the file is missing or malformed
        """
        path = self.resolve(path)
        try:
            blob = path.read_bytes()
        except OSError as exc:
            raise TensorFileError(str(path), exc.strerror or "cannot read file")
        tensor = decode(blob, str(path))
        logger.debug("tensor_file.read", path=str(path), shape=list(tensor.shape))
        return tensor

    def write(self, tensor: Tensor3, path: str | Path) -> Path:
        """Store a tensor, replacing any existing file.

        Raises:
            TensorFileError: If the file cannot be written
        """
        path = self.resolve(path)
        try:
            path.write_bytes(encode(tensor))
        except OSError as exc:
            raise TensorFileError(str(path), exc.strerror or "cannot write file")
        logger.debug("tensor_file.written", path=str(path), shape=list(tensor.shape))
        return path
