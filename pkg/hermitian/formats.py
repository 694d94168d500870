"""
Storage formats for n-qubit hermitian operators

DenseHermitian   full N x N matrix, row-major
PackedHermitian  column-major lower triangle, N(N+1)/2 entries
TiledHermitian   lower triangle of an M x M tile grid, tiles row-major,
                 entries inside each tile row-major; diagonal tiles are full
"""

from enum import IntEnum
from typing import ClassVar, Optional, Union

import numpy as np

from .common import aligned_zeros, packed_index, tile_index, tile_offset
from .errors import DimensionError, ResourceError, UnknownFormatError

DEFAULT_TILE_EXP = 5
COMPLEX_BYTES = 16


class StorageFormat(IntEnum):
    """Format tag; the integer value is the tag used in the file format"""

    DENSE = 0
    PACKED = 1
    TILED = 2

    @classmethod
    def parse(cls, value: Union["StorageFormat", int, str]) -> "StorageFormat":
        if isinstance(value, StorageFormat):
            return value
        if isinstance(value, (int, np.integer)):
            try:
                return cls(int(value))
            except ValueError:
                raise UnknownFormatError(f"unknown storage format tag {value}") from None
        try:
            return cls[str(value).strip().upper()]
        except KeyError:
            raise UnknownFormatError(f"unknown storage format '{value}'") from None

    @property
    def label(self) -> str:
        return self.name.lower()


def max_tile_exp(n: int) -> int:
    """Tiles may overhang the matrix (one padded tile); the default exponent is always legal"""
    return max(n + 2, DEFAULT_TILE_EXP)


def _check_qubits(n: int) -> int:
    n = int(n)
    if n < 1:
        raise DimensionError(f"qubit count must be >= 1, got {n}")
    return n


def _buffer(count: int, data: Optional[np.ndarray]) -> np.ndarray:
    """Aligned copy of `data` (or zeros) holding exactly `count` complex values"""
    buf = aligned_zeros(count)
    if data is not None:
        data = np.asarray(data, dtype=np.complex128).reshape(-1)
        if data.size != count:
            raise DimensionError(f"expected {count} stored values, got {data.size}")
        buf[:] = data
    return buf


def _from_lower(matrix: np.ndarray) -> np.ndarray:
    """The hermitian matrix whose lower triangle is that of `matrix`; the diagonal keeps its real part"""
    matrix = np.asarray(matrix, dtype=np.complex128)
    _qubits_of(matrix)
    out = np.where(np.tri(matrix.shape[0], dtype=bool), matrix, matrix.conj().T)
    diag = np.diag_indices_from(out)
    out[diag] = out[diag].real
    return out


class HermitianMatrix:
    """Common surface of the three storage formats"""

    format: ClassVar[StorageFormat]

    def __init__(self, n: int, data: np.ndarray):
        self.n = n
        self.data = data

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def m(self) -> int:
        return 0

    @property
    def nbytes(self) -> int:
        return self.data.nbytes

    def copy(self) -> "HermitianMatrix":
        raise NotImplementedError

    def to_matrix(self) -> np.ndarray:
        """Full N x N complex matrix (a new array)"""
        raise NotImplementedError

    def _element(self, i: int, j: int) -> complex:
        raise NotImplementedError

    def get_element(self, i: int, j: int) -> complex:
        N = self.dim
        if not (0 <= i < N and 0 <= j < N):
            raise IndexError(f"element ({i}, {j}) out of range for N={N}")
        return complex(self._element(int(i), int(j)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.m}, stored={self.data.size})"


class DenseHermitian(HermitianMatrix):
    format = StorageFormat.DENSE

    def __init__(self, n: int, data: Optional[np.ndarray] = None):
        n = _check_qubits(n)
        super().__init__(n, _buffer(1 << (2 * n), data))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "DenseHermitian":
        matrix = _from_lower(matrix)
        return cls(_qubits_of(matrix), matrix)

    @property
    def matrix(self) -> np.ndarray:
        """Writable N x N view of the buffer"""
        return self.data.reshape(self.dim, self.dim)

    def copy(self) -> "DenseHermitian":
        return DenseHermitian(self.n, self.data)

    def to_matrix(self) -> np.ndarray:
        return self.matrix.copy()

    def _element(self, i: int, j: int) -> complex:
        return self.data[i * self.dim + j]


class PackedHermitian(HermitianMatrix):
    format = StorageFormat.PACKED

    def __init__(self, n: int, data: Optional[np.ndarray] = None):
        n = _check_qubits(n)
        N = 1 << n
        super().__init__(n, _buffer(N * (N + 1) // 2, data))

    @staticmethod
    def _triangle(N: int):
        # triu of the transpose enumerates (i >= j) column by column
        cols, rows = np.triu_indices(N)
        return rows, cols

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "PackedHermitian":
        matrix = _from_lower(matrix)
        n = _qubits_of(matrix)
        rows, cols = cls._triangle(1 << n)
        return cls(n, matrix[rows, cols])

    def copy(self) -> "PackedHermitian":
        return PackedHermitian(self.n, self.data)

    def to_matrix(self) -> np.ndarray:
        N = self.dim
        rows, cols = self._triangle(N)
        matrix = np.empty((N, N), dtype=np.complex128)
        matrix[cols, rows] = self.data.conj()
        matrix[rows, cols] = self.data
        return matrix

    def _element(self, i: int, j: int) -> complex:
        if i >= j:
            return self.data[packed_index(i, j, self.dim)]
        return np.conj(self.data[packed_index(j, i, self.dim)])


class TiledHermitian(HermitianMatrix):
    format = StorageFormat.TILED

    def __init__(self, n: int, m: int = DEFAULT_TILE_EXP, data: Optional[np.ndarray] = None):
        n = _check_qubits(n)
        m = int(m)
        if not 0 <= m <= max_tile_exp(n):
            raise DimensionError(f"tile exponent must be in [0, {max_tile_exp(n)}], got {m}")
        self._m = m
        M = 1 << m
        side = -((1 << n) // -M)
        super().__init__(n, _buffer(side * (side + 1) // 2 * M * M, data))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, m: int = DEFAULT_TILE_EXP) -> "TiledHermitian":
        matrix = _from_lower(matrix)
        n = _qubits_of(matrix)
        tiled = cls(n, m)
        M, side, N = tiled.M, tiled.tiles_per_side, 1 << n
        if N < M:
            grid = np.zeros((M, M), dtype=np.complex128)
            grid[:N, :N] = matrix
            grid = grid.reshape(1, M, 1, M)
        else:
            grid = matrix.reshape(side, M, side, M)
        t_i, t_j = np.tril_indices(side)
        tiled.tiles[:] = grid[t_i, :, t_j, :]
        return tiled

    @property
    def m(self) -> int:
        return self._m

    @property
    def M(self) -> int:
        return 1 << self._m

    @property
    def tiles_per_side(self) -> int:
        return -(self.dim // -self.M)

    @property
    def n_tiles(self) -> int:
        side = self.tiles_per_side
        return side * (side + 1) // 2

    @property
    def tiles(self) -> np.ndarray:
        """Writable (n_tiles, M, M) view of the buffer"""
        return self.data.reshape(self.n_tiles, self.M, self.M)

    def tile(self, t_i: int, t_j: int) -> np.ndarray:
        if t_i < t_j:
            raise IndexError(f"tile ({t_i}, {t_j}) is not stored")
        return self.tiles[tile_index(t_i, t_j)]

    def copy(self) -> "TiledHermitian":
        return TiledHermitian(self.n, self.m, self.data)

    def to_matrix(self) -> np.ndarray:
        M, side, N = self.M, self.tiles_per_side, self.dim
        t_i, t_j = np.tril_indices(side)
        lower = t_i > t_j
        grid = np.empty((side, M, side, M), dtype=np.complex128)
        grid[t_j[lower], :, t_i[lower], :] = self.tiles[lower].conj().transpose(0, 2, 1)
        grid[t_i, :, t_j, :] = self.tiles
        return grid.reshape(side * M, side * M)[:N, :N].copy()

    def _element(self, i: int, j: int) -> complex:
        m, M = self.m, self.M
        t_i, t_j = i >> m, j >> m
        r, c = i & (M - 1), j & (M - 1)
        if t_i >= t_j:
            return self.data[tile_offset(t_i, t_j, M) + r * M + c]
        return np.conj(self.data[tile_offset(t_j, t_i, M) + c * M + r])


MatrixHandle = Union[DenseHermitian, PackedHermitian, TiledHermitian]


def _qubits_of(matrix: np.ndarray) -> int:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {matrix.shape}")
    N = matrix.shape[0]
    if N < 2 or N & (N - 1):
        raise DimensionError(f"matrix dimension {N} is not a power of two >= 2")
    return N.bit_length() - 1


def from_matrix(matrix: np.ndarray, format=StorageFormat.DENSE, m: int = DEFAULT_TILE_EXP) -> MatrixHandle:
    """Store a hermitian N x N matrix in the requested format (lower triangle is authoritative)"""
    fmt = StorageFormat.parse(format)
    if fmt is StorageFormat.DENSE:
        return DenseHermitian.from_matrix(matrix)
    if fmt is StorageFormat.PACKED:
        return PackedHermitian.from_matrix(matrix)
    return TiledHermitian.from_matrix(matrix, m)


def convert(h: MatrixHandle, target, m: Optional[int] = None) -> MatrixHandle:
    """Re-store `h` in another format; every logical element is preserved bit-exactly"""
    fmt = StorageFormat.parse(target)
    if m is None:
        m = h.m if isinstance(h, TiledHermitian) else DEFAULT_TILE_EXP
    if h.format is fmt and (fmt is not StorageFormat.TILED or h.m == m):
        return h.copy()
    if fmt is StorageFormat.DENSE:
        return DenseHermitian(h.n, h.to_matrix())
    return from_matrix(h.to_matrix(), fmt, m)


def get_element(h: MatrixHandle, i: int, j: int) -> complex:
    return h.get_element(i, j)


def stored_elements(n: int, m: int, format) -> int:
    fmt = StorageFormat.parse(format)
    N = 1 << n
    if fmt is StorageFormat.DENSE:
        return N * N
    if fmt is StorageFormat.PACKED:
        return N * (N + 1) // 2
    M = 1 << m
    side = -(N // -M)
    return side * (side + 1) // 2 * M * M


def footprint_bytes(n: int, m: int, format) -> int:
    """Bytes held by the stored complex double-precision values"""
    if n < 1 or m < 0:
        raise DimensionError(f"invalid footprint query n={n}, m={m}")
    return stored_elements(n, m, format) * COMPLEX_BYTES


def _gaussian(N: int, rng: np.random.Generator) -> np.ndarray:
    matrix = np.empty((N, N), dtype=np.complex128)
    matrix.real = rng.standard_normal((N, N))
    matrix.imag = rng.standard_normal((N, N))
    return matrix


def random_hermitian(n: int, seed: int, format=StorageFormat.DENSE, m: int = DEFAULT_TILE_EXP) -> MatrixHandle:
    """
    H = (A + A^H)/2 with standard-normal real and imaginary parts in A.
    Neither positive nor normalised; identical across formats for one seed.
    """
    N = 1 << _check_qubits(n)
    try:
        A = _gaussian(N, np.random.default_rng(seed))
        return from_matrix((A + A.conj().T) / 2, format, m)
    except MemoryError as e:
        raise ResourceError(f"cannot allocate a {N} x {N} operator") from e


def random_density_matrix(n: int, seed: int, format=StorageFormat.DENSE, m: int = DEFAULT_TILE_EXP) -> MatrixHandle:
    """rho = G G^H / tr(G G^H) for a seeded complex Gaussian G"""
    N = 1 << _check_qubits(n)
    try:
        G = _gaussian(N, np.random.default_rng(seed))
        P = G @ G.conj().T
        P = (P + P.conj().T) / 2
        return from_matrix(P / np.trace(P).real, format, m)
    except MemoryError as e:
        raise ResourceError(f"cannot allocate a {N} x {N} operator") from e
