"""
Kernels on the tiled format

intra   target bit a < m: the four coupled values of every block sit in one
        tile at strides 2^a; each stored tile is one work unit and is
        updated in full, diagonal tiles included.
cross   target bit a >= m: a tile base-pair (t_i, t_j) on the halved grid
        couples the four tiles obtained by inserting bit a - m into t_i
        and t_j. Depending on where those tiles fall:
          A  t_i0 > t_j1            all four stored
          B  t_i != t_j otherwise   tile (t_i0, t_j1) is read and written
                                    through its stored adjoint
          C  t_i == t_j             three distinct tiles; only the lower
                                    triangle is computed, mirrors written
general any k: inner target bits select strides inside tiles, outer bits
        select 2^(2 k_o) tiles per base-pair on the reduced grid.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from channels.kraus import TransferMatrix
from hermitian.common import ActiveQubits, insert_bits, tile_index
from hermitian.errors import DimensionError
from hermitian.formats import COMPLEX_BYTES, TiledHermitian
from hermitian.workers import run_units

from .transforms import BlockTransform, TransferTransform


def _adjoint(tiles: np.ndarray) -> np.ndarray:
    return tiles.conj().transpose(0, 2, 1)


def tiled_intra(h: TiledHermitian, transform: BlockTransform, a: int,
                workers: Optional[int] = None) -> Dict[str, int]:
    assert transform.k == 1 and 0 <= a < min(h.m, h.n), f"intra-tile kernel needs a < m, got a={a}, m={h.m}"
    T, M = h.n_tiles, h.M
    outer = M >> (a + 1)
    view = h.tiles.reshape(T, outer, 2, 1 << a, outer, 2, 1 << a)

    def unit(chunk: slice):
        block = view[chunk]
        v = [block[:, :, q & 1, :, :, q >> 1, :].copy() for q in range(4)]
        w = transform(v)
        for q in range(4):
            block[:, :, q & 1, :, :, q >> 1, :] = w[q]

    run_units(unit, T, workers, unit_bytes=M * M * COMPLEX_BYTES)
    return {"intra_tile": T}


@lru_cache(maxsize=64)
def _cross_plan(side: int, shift: int) -> Dict[str, np.ndarray]:
    """Tile indices of every base-pair quadruple, split by subcase"""
    t_i, t_j = np.tril_indices(side >> 1)
    ti0 = insert_bits(t_i, 0, (shift,))
    tj0 = insert_bits(t_j, 0, (shift,))
    ti1, tj1 = ti0 | (1 << shift), tj0 | (1 << shift)

    diag = t_i == t_j
    case_a = ti0 > tj1
    case_b = ~case_a & ~diag

    quads = np.stack([
        tile_index(ti0, tj0),
        tile_index(ti1, tj0),
        # (t_i0, t_j1) is lower only in subcase A; its mirror index otherwise
        np.where(case_a, tile_index(ti0, tj1), tile_index(tj1, ti0)),
        tile_index(ti1, tj1),
    ], axis=1)
    plan = {"cross_tile": quads[case_a], "cross_tile_adj": quads[case_b], "cross_tile_diag": quads[diag]}
    for array in plan.values():
        array.setflags(write=False)
    return plan


def _cross_tile(tiles: np.ndarray, quads: np.ndarray, transform: BlockTransform):
    v = [tiles[quads[:, q]] for q in range(4)]
    w = transform(v)
    for q in range(4):
        tiles[quads[:, q]] = w[q]


def _cross_tile_adj(tiles: np.ndarray, quads: np.ndarray, transform: BlockTransform):
    v = [tiles[quads[:, 0]], tiles[quads[:, 1]], _adjoint(tiles[quads[:, 2]]), tiles[quads[:, 3]]]
    w = transform(v)
    tiles[quads[:, 0]] = w[0]
    tiles[quads[:, 1]] = w[1]
    tiles[quads[:, 2]] = _adjoint(w[2])
    tiles[quads[:, 3]] = w[3]


@lru_cache(maxsize=16)
def _lower_triangle(M: int) -> Tuple[np.ndarray, np.ndarray]:
    r, c = np.tril_indices(M)
    r.setflags(write=False)
    c.setflags(write=False)
    return r, c


def _cross_tile_diag(tiles: np.ndarray, quads: np.ndarray, transform: BlockTransform):
    # quads[:, 2] repeats quads[:, 1]: the (t_i0, t_i1) tile is the adjoint of (t_i1, t_i0)
    r, c = _lower_triangle(tiles.shape[-1])
    d0, x, d1 = tiles[quads[:, 0]], tiles[quads[:, 1]], tiles[quads[:, 3]]
    w = transform([d0[:, r, c], x[:, r, c], x[:, c, r].conj(), d1[:, r, c]])

    out = np.empty((3,) + d0.shape, dtype=np.complex128)
    # mirrors first so the diagonal keeps the directly computed value
    out[0][:, c, r] = np.conj(w[0])
    out[0][:, r, c] = w[0]
    out[1][:, c, r] = np.conj(w[2])
    out[1][:, r, c] = w[1]
    out[2][:, c, r] = np.conj(w[3])
    out[2][:, r, c] = w[3]
    tiles[quads[:, 0]] = out[0]
    tiles[quads[:, 1]] = out[1]
    tiles[quads[:, 3]] = out[2]


_SUBCASES = (
    ("cross_tile", _cross_tile),
    ("cross_tile_adj", _cross_tile_adj),
    ("cross_tile_diag", _cross_tile_diag),
)


def tiled_cross(h: TiledHermitian, transform: BlockTransform, a: int,
                workers: Optional[int] = None) -> Dict[str, int]:
    assert transform.k == 1 and h.m <= a < h.n, f"cross-tile kernel needs m <= a < n, got a={a}, m={h.m}"
    plan = _cross_plan(h.tiles_per_side, a - h.m)
    tiles = h.tiles
    tile_bytes = h.M * h.M * COMPLEX_BYTES
    counts = {}
    for name, kernel in _SUBCASES:
        quads = plan[name]
        run_units(lambda chunk: kernel(tiles, quads[chunk], transform), len(quads), workers,
                  unit_bytes=4 * tile_bytes)
        counts[name] = len(quads)
    return counts


def _bit_axes(m: int, inner: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Reshape of an M-long axis giving each inner bit its own length-2 axis"""
    shape, axes = [], {}
    high = m
    for pos in reversed(inner):
        shape.append(1 << (high - pos - 1))
        axes[pos] = len(shape)
        shape.append(2)
        high = pos
    shape.append(1 << high)
    return shape, [axes[pos] for pos in inner]


@lru_cache(maxsize=64)
def _base_pairs(side: int, outer: Tuple[int, ...]) -> Tuple[np.ndarray, np.ndarray]:
    t_i, t_j = np.tril_indices(side >> len(outer))
    t_i.setflags(write=False)
    t_j.setflags(write=False)
    return t_i, t_j


def regime(h: TiledHermitian, targets: ActiveQubits) -> str:
    inner = sum(1 for pos in targets if pos < h.m)
    if inner == targets.k:
        return "intra"
    return "cross" if inner == 0 else "mixed"


def tiled_blocks(h: TiledHermitian, transform: BlockTransform, targets: ActiveQubits,
                 workers: Optional[int] = None) -> Dict[str, int]:
    """Gather-transform-scatter for any locality and any split of the targets around m"""
    assert transform.k == targets.k, "transform and targets disagree on k"
    targets.check_range(h.n)
    m, M, k = h.m, h.M, targets.k
    inner = tuple(pos for pos in targets if pos < m)
    outer = tuple(pos - m for pos in targets if pos >= m)
    k_i, k_o = len(inner), len(outer)
    d, d_i, d_o = 1 << k, 1 << k_i, 1 << k_o

    shape, bit_axes = _bit_axes(m, inner)
    row_axes = [1 + ax for ax in bit_axes]
    col_axes = [1 + len(shape) + ax for ax in bit_axes]
    ndim = 1 + 2 * len(shape)

    def select(a_in: int, b_in: int) -> tuple:
        index = [slice(None)] * ndim
        for ell in range(k_i):
            index[row_axes[ell]] = (a_in >> ell) & 1
            index[col_axes[ell]] = (b_in >> ell) & 1
        return tuple(index)

    selectors = [select(q % d % d_i, q // d % d_i) for q in range(d * d)]
    t_i_all, t_j_all = _base_pairs(h.tiles_per_side, outer)
    tiles = h.tiles

    def unit(chunk: slice):
        t_i, t_j = t_i_all[chunk], t_j_all[chunk]
        batch = len(t_i)
        diag = t_i == t_j
        rows = [insert_bits(t_i, alpha, outer) for alpha in range(d_o)]
        cols = [insert_bits(t_j, beta, outer) for beta in range(d_o)]

        gathered = {}
        for alpha in range(d_o):
            for beta in range(d_o):
                Tr, Tc = rows[alpha], cols[beta]
                direct = Tr >= Tc
                index = np.where(direct, tile_index(Tr, Tc), tile_index(Tc, Tr))
                g = tiles[index]
                if not direct.all():
                    g[~direct] = _adjoint(g[~direct])
                gathered[alpha, beta] = (g.reshape((batch,) + tuple(shape) * 2), index, direct)

        v = []
        for q, sel in enumerate(selectors):
            alpha, beta = (q % d) >> k_i, (q // d) >> k_i
            v.append(gathered[alpha, beta][0][sel])
        w = transform(v)

        out = {key: np.empty_like(g) for key, (g, _, _) in gathered.items()}
        for q, sel in enumerate(selectors):
            alpha, beta = (q % d) >> k_i, (q // d) >> k_i
            out[alpha, beta][sel] = w[q]

        for (alpha, beta), (_, index, direct) in gathered.items():
            result = out[alpha, beta].reshape(batch, M, M)
            keep = ~diag | (alpha >= beta)
            if k_o and alpha == beta and diag.any():
                on_diag = result[diag]
                result[diag] = np.tril(on_diag) + _adjoint(np.tril(on_diag, -1))
            result = np.where(direct[:, None, None], result, _adjoint(result))
            tiles[index[keep]] = result[keep]

    run_units(unit, len(t_i_all), workers, unit_bytes=d_o * d_o * M * M * COMPLEX_BYTES)
    diagonal_pairs = int(np.count_nonzero(t_i_all == t_j_all))
    return {"base_pairs": len(t_i_all), "diagonal_base_pairs": diagonal_pairs, "tiles_per_pair": d_o * d_o}


def apply_tiled_intra(h: TiledHermitian, S: TransferMatrix, a: int, workers: Optional[int] = None) -> Dict[str, int]:
    if S.k != 1:
        raise DimensionError(f"single-qubit kernel got a {S.k}-qubit transfer matrix")
    ActiveQubits.of(a).check_range(h.n)
    return tiled_intra(h, TransferTransform(S), a, workers)


def apply_tiled_cross(h: TiledHermitian, S: TransferMatrix, a: int, workers: Optional[int] = None) -> Dict[str, int]:
    if S.k != 1:
        raise DimensionError(f"single-qubit kernel got a {S.k}-qubit transfer matrix")
    ActiveQubits.of(a).check_range(h.n)
    return tiled_cross(h, TransferTransform(S), a, workers)


def apply_tiled_twoqubit(h: TiledHermitian, S: TransferMatrix, targets, workers: Optional[int] = None) -> Dict[str, int]:
    targets = targets if isinstance(targets, ActiveQubits) else ActiveQubits.of(targets)
    if targets.k != 2 or S.k != 2:
        raise DimensionError(f"two-qubit kernel got k={targets.k} targets and a {S.k}-qubit transfer matrix")
    return tiled_blocks(h, TransferTransform(S), targets, workers)
