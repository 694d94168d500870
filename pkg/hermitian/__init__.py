from .common import (
    ActiveQubits,
    MAX_LOCALITY,
    block_rows,
    extract_bits,
    insert_bits,
    packed_index,
    tile_index,
    tile_offset,
)
from .errors import (
    BadMagicError,
    ChannelError,
    DimensionError,
    HermitianError,
    PayloadLengthError,
    ResourceError,
    StorageFormatError,
    TargetError,
    TruncatedPayloadError,
    UnknownFormatError,
    UnknownGateError,
    VersionMismatchError,
)
from .formats import (
    DEFAULT_TILE_EXP,
    DenseHermitian,
    HermitianMatrix,
    MatrixHandle,
    PackedHermitian,
    StorageFormat,
    TiledHermitian,
    convert,
    footprint_bytes,
    from_matrix,
    get_element,
    random_density_matrix,
    random_hermitian,
)
from .observables import (
    expectation,
    frobenius_inner,
    frobenius_norm,
    hermiticity_residual,
    trace,
)
from .serialization import dumps, load, loads, save
from .workers import SCRATCH_BYTES, default_workers, max_workers, resolve_workers, set_default_workers

__all__ = [
    "ActiveQubits",
    "MAX_LOCALITY",
    "block_rows",
    "extract_bits",
    "insert_bits",
    "packed_index",
    "tile_index",
    "tile_offset",
    "BadMagicError",
    "ChannelError",
    "DimensionError",
    "HermitianError",
    "PayloadLengthError",
    "ResourceError",
    "StorageFormatError",
    "TargetError",
    "TruncatedPayloadError",
    "UnknownFormatError",
    "UnknownGateError",
    "VersionMismatchError",
    "DEFAULT_TILE_EXP",
    "DenseHermitian",
    "HermitianMatrix",
    "MatrixHandle",
    "PackedHermitian",
    "StorageFormat",
    "TiledHermitian",
    "convert",
    "footprint_bytes",
    "from_matrix",
    "get_element",
    "random_density_matrix",
    "random_hermitian",
    "expectation",
    "frobenius_inner",
    "frobenius_norm",
    "hermiticity_residual",
    "trace",
    "dumps",
    "load",
    "loads",
    "save",
    "SCRATCH_BYTES",
    "default_workers",
    "max_workers",
    "resolve_workers",
    "set_default_workers",
]
