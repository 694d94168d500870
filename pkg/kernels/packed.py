"""
Generic kernel on the packed lower-triangle format

Block pairs (s, s') are visited once per unordered pair, s >= s'. Each
coupled element (I, J) is read from its stored location, conjugated when it
lies above the diagonal, and written back the same way. Inside a diagonal
block (s == s') both (I, J) and (J, I) resolve to one stored value; only
the lower one is written.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from channels.kraus import TransferMatrix
from hermitian.common import ActiveQubits, packed_index
from hermitian.errors import DimensionError
from hermitian.formats import COMPLEX_BYTES, PackedHermitian
from hermitian.workers import run_units

from .dense import block_table
from .transforms import BlockTransform, TransferTransform

GENERIC_MAX_LOCALITY = 2
# per coupled element: location, masks, gathered and updated values
ELEMENT_SCRATCH_BYTES = 4 * COMPLEX_BYTES


def _block_pairs(lo: int, hi: int) -> Tuple[np.ndarray, np.ndarray]:
    """(s, s') for pair numbers p in [lo, hi), p = s(s+1)/2 + s', in np.tril_indices order"""
    p = np.arange(lo, hi, dtype=np.int64)
    s = ((np.sqrt(8.0 * p + 1.0) - 1.0) // 2).astype(np.int64)
    s -= s * (s + 1) // 2 > p
    s += (s + 1) * (s + 2) // 2 <= p
    return s, p - s * (s + 1) // 2


def packed_blocks(h: PackedHermitian, transform: BlockTransform, targets: ActiveQubits,
                  workers: Optional[int] = None) -> Dict[str, int]:
    assert transform.k == targets.k, "transform and targets disagree on k"
    targets.check_range(h.n)
    R = block_table(h.n, targets.positions)
    N, d = h.dim, 1 << targets.k
    count = R.shape[0]
    n_pairs = count * (count + 1) // 2
    data = h.data

    def unit(chunk: slice):
        s, s_prime = _block_pairs(chunk.start, chunk.stop)
        off_diagonal = s != s_prime
        plan = []
        for q in range(d * d):
            I, J = R[s, q % d], R[s_prime, q // d]
            lower = I >= J
            loc = np.where(lower, packed_index(I, J, N), packed_index(J, I, N))
            plan.append((loc, lower, lower | off_diagonal))

        v = []
        for loc, lower, _ in plan:
            stored = data[loc]
            v.append(np.where(lower, stored, stored.conj()))
        w = transform(v)
        for (loc, lower, write), values in zip(plan, w):
            values = np.where(lower, values, np.conj(values))
            data[loc[write]] = values[write]

    run_units(unit, n_pairs, workers, unit_bytes=d * d * ELEMENT_SCRATCH_BYTES)
    return {"block_pairs": n_pairs}


def apply_packed(h: PackedHermitian, S: TransferMatrix, targets, workers: Optional[int] = None) -> Dict[str, int]:
    targets = targets if isinstance(targets, ActiveQubits) else ActiveQubits.of(targets)
    if S.k != targets.k:
        raise DimensionError(f"transfer matrix acts on {S.k} qubit(s), got {targets.k} target(s)")
    if targets.k > GENERIC_MAX_LOCALITY:
        raise DimensionError(f"packed kernel handles k <= {GENERIC_MAX_LOCALITY}, got k={targets.k}")
    return packed_blocks(h, TransferTransform(S), targets, workers)
