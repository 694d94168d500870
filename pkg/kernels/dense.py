"""
Generic kernel on the dense format

Every 2^k x 2^k block h[s, s'] coupled by the targets is gathered through
the bit-insertion table R[s, a], transformed and scattered back. A work
unit is a run of block rows s; it owns rows R[s, :] of the matrix.
"""

from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from channels.kraus import TransferMatrix
from hermitian.common import ActiveQubits, block_rows
from hermitian.errors import DimensionError
from hermitian.formats import COMPLEX_BYTES, DenseHermitian
from hermitian.workers import run_units

from .transforms import BlockTransform, TransferTransform


@lru_cache(maxsize=64)
def block_table(n: int, positions: Tuple[int, ...]) -> np.ndarray:
    R = block_rows(n, positions)
    R.setflags(write=False)
    return R


def dense_blocks(h: DenseHermitian, transform: BlockTransform, targets: ActiveQubits,
                 workers: Optional[int] = None) -> Dict[str, int]:
    assert transform.k == targets.k, "transform and targets disagree on k"
    targets.check_range(h.n)
    R = block_table(h.n, targets.positions)
    d = 1 << targets.k
    mat = h.matrix

    def unit(chunk: slice):
        rows = R[chunk]
        index = [(rows[:, q % d][:, None], R[:, q // d][None, :]) for q in range(d * d)]
        w = transform([mat[i, j] for i, j in index])
        for (i, j), values in zip(index, w):
            mat[i, j] = values

    run_units(unit, R.shape[0], workers, unit_bytes=d * h.dim * COMPLEX_BYTES)
    return {"blocks": R.shape[0] ** 2}


def apply_dense(h: DenseHermitian, S: TransferMatrix, targets, workers: Optional[int] = None) -> Dict[str, int]:
    """Replace every coupled block by unvec(S vec(block)), in place"""
    targets = targets if isinstance(targets, ActiveQubits) else ActiveQubits.of(targets)
    if S.k != targets.k:
        raise DimensionError(f"transfer matrix acts on {S.k} qubit(s), got {targets.k} target(s)")
    return dense_blocks(h, TransferTransform(S), targets, workers)
