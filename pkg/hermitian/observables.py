"""
Scalar functionals of stored operators: trace, Frobenius products, expectation values
"""

from typing import Optional

import numpy as np

from .common import packed_index, tile_index
from .errors import DimensionError
from .formats import COMPLEX_BYTES, MatrixHandle, StorageFormat, TiledHermitian
from .workers import run_units

TRACE_IMAG_TOL = 1e-12


def _tile_weights(h: TiledHermitian) -> np.ndarray:
    """1 for diagonal tiles, 2 for strictly lower tiles (each stands for itself and its mirror)"""
    t_i, t_j = np.tril_indices(h.tiles_per_side)
    return np.where(t_i > t_j, 2.0, 1.0)


def diagonal(h: MatrixHandle) -> np.ndarray:
    N = h.dim
    if h.format is StorageFormat.DENSE:
        return h.data[::N + 1].copy()
    if h.format is StorageFormat.PACKED:
        i = np.arange(N, dtype=np.int64)
        return h.data[packed_index(i, i, N)]
    t = np.arange(h.tiles_per_side, dtype=np.int64)
    diag_tiles = h.tiles[tile_index(t, t)]
    return np.diagonal(diag_tiles, axis1=1, axis2=2).reshape(-1)[:N].copy()


def trace(h: MatrixHandle) -> float:
    d = diagonal(h)
    total = d.sum()
    scale = max(1.0, float(np.abs(d).sum()))
    assert abs(total.imag) <= TRACE_IMAG_TOL * scale, f"trace has imaginary residue {total.imag}"
    return float(total.real)


def frobenius_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Sum of conj(a_i) * b_i over two equally shaped blocks"""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"tile shapes differ: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def expectation(rho: MatrixHandle, obs: MatrixHandle, workers: Optional[int] = None) -> float:
    """
    tr(rho O) for two hermitian operators.

    Two tiled operands with equal m are reduced tile by tile: diagonal
    tiles count once, strictly lower tiles twice. Everything else goes
    through the dense Frobenius product.
    """
    if rho.n != obs.n:
        raise DimensionError(f"operands act on {rho.n} and {obs.n} qubits")

    if isinstance(rho, TiledHermitian) and isinstance(obs, TiledHermitian) and rho.m == obs.m:
        weights = _tile_weights(rho)
        rho_tiles, obs_tiles = rho.tiles, obs.tiles

        def partial(chunk: slice) -> float:
            products = (obs_tiles[chunk].conj() * rho_tiles[chunk]).reshape(len(weights[chunk]), -1)
            return float(np.dot(weights[chunk], products.sum(axis=1).real))

        pair_bytes = 2 * rho.M * rho.M * COMPLEX_BYTES
        return float(sum(run_units(partial, len(weights), workers, unit_bytes=pair_bytes)))

    return float(np.vdot(obs.to_matrix(), rho.to_matrix()).real)


def hermiticity_residual(h: MatrixHandle) -> float:
    """max |h_ij - conj(h_ji)| over what the format actually stores"""
    if h.format is StorageFormat.DENSE:
        mat = h.matrix
        return float(np.abs(mat - mat.conj().T).max())
    if h.format is StorageFormat.PACKED:
        return float(2 * np.abs(diagonal(h).imag).max())
    t = np.arange(h.tiles_per_side, dtype=np.int64)
    diag_tiles = h.tiles[tile_index(t, t)]
    return float(np.abs(diag_tiles - diag_tiles.conj().transpose(0, 2, 1)).max())


def frobenius_norm(h: MatrixHandle) -> float:
    """Norm of the logical N x N matrix, mirrored elements included"""
    if h.format is StorageFormat.DENSE:
        return float(np.linalg.norm(h.data))
    if h.format is StorageFormat.PACKED:
        d = diagonal(h)
        total = np.vdot(h.data, h.data).real
        diag_sq = np.vdot(d, d).real
        return float(np.sqrt(2 * total - diag_sq))
    weights = _tile_weights(h)
    per_tile = (np.abs(h.tiles) ** 2).reshape(len(weights), -1).sum(axis=1)
    return float(np.sqrt(np.dot(weights, per_tile)))
