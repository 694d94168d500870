"""
Binary file format for stored hermitian operators

16-byte little-endian header followed by the raw complex128 payload in the
in-memory element order of the format:

    magic     4s   b"OHRM"
    version   u32  1
    format    u8   0 dense / 1 packed / 2 tiled
    n         u8
    m         u8   0 for non-tiled formats
    reserved  5x   zero
"""

import os
from typing import BinaryIO, Union

import numpy as np

from .errors import (
    BadMagicError,
    PayloadLengthError,
    StorageFormatError,
    TruncatedPayloadError,
    VersionMismatchError,
)
from .formats import (
    DenseHermitian,
    MatrixHandle,
    PackedHermitian,
    StorageFormat,
    TiledHermitian,
    stored_elements,
)

MAGIC = b"OHRM"
VERSION = 1

HEADER_DTYPE = np.dtype([
    ("magic", "S4"),
    ("version", "<u4"),
    ("format", "u1"),
    ("n", "u1"),
    ("m", "u1"),
    ("reserved", "V5"),
])
PAYLOAD_DTYPE = np.dtype("<c16")

PathOrStream = Union[str, os.PathLike, BinaryIO]


def dumps(h: MatrixHandle) -> bytes:
    header = np.zeros(1, dtype=HEADER_DTYPE)
    header["magic"] = MAGIC
    header["version"] = VERSION
    header["format"] = int(h.format)
    header["n"] = h.n
    header["m"] = h.m if h.format is StorageFormat.TILED else 0
    return header.tobytes() + h.data.astype(PAYLOAD_DTYPE, copy=False).tobytes()


def loads(blob: bytes) -> MatrixHandle:
    if len(blob) < HEADER_DTYPE.itemsize:
        raise TruncatedPayloadError(f"header needs {HEADER_DTYPE.itemsize} bytes, got {len(blob)}")

    header = np.frombuffer(blob, dtype=HEADER_DTYPE, count=1)[0]
    if bytes(header["magic"]) != MAGIC:
        raise BadMagicError(f"bad magic {bytes(header['magic'])!r}, expected {MAGIC!r}")
    if int(header["version"]) != VERSION:
        raise VersionMismatchError(f"file version {int(header['version'])}, supported {VERSION}")
    fmt = StorageFormat.parse(int(header["format"]))
    n, m = int(header["n"]), int(header["m"])
    if any(bytes(header["reserved"])):
        raise StorageFormatError("reserved header bytes are not zero")
    if n < 1:
        raise StorageFormatError(f"header declares n={n}")
    if fmt is not StorageFormat.TILED and m != 0:
        raise StorageFormatError(f"m={m} declared for a {fmt.label} payload")

    expected = stored_elements(n, m, fmt) * PAYLOAD_DTYPE.itemsize
    payload = memoryview(blob)[HEADER_DTYPE.itemsize:]
    if len(payload) < expected:
        raise TruncatedPayloadError(f"payload has {len(payload)} bytes, header declares {expected}")
    if len(payload) > expected:
        raise PayloadLengthError(f"payload has {len(payload)} bytes, header declares {expected}")

    values = np.frombuffer(payload, dtype=PAYLOAD_DTYPE)
    if fmt is StorageFormat.DENSE:
        return DenseHermitian(n, values)
    if fmt is StorageFormat.PACKED:
        return PackedHermitian(n, values)
    return TiledHermitian(n, m, values)


def save(h: MatrixHandle, destination: PathOrStream):
    blob = dumps(h)
    if hasattr(destination, "write"):
        destination.write(blob)
        return
    with open(destination, "wb") as f:
        f.write(blob)


def load(source: PathOrStream) -> MatrixHandle:
    if hasattr(source, "read"):
        return loads(source.read())
    with open(source, "rb") as f:
        return loads(f.read())
