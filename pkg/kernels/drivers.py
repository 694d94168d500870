"""
Format switch: run one block transform over a stored operator
"""

from typing import Dict, Optional, Tuple

from hermitian.common import ActiveQubits
from hermitian.formats import MatrixHandle, StorageFormat

from .dense import dense_blocks
from .packed import packed_blocks
from .tiled import regime, tiled_blocks, tiled_cross, tiled_intra
from .transforms import BlockTransform


def run_transform(h: MatrixHandle, transform: BlockTransform, targets: ActiveQubits,
                  workers: Optional[int] = None) -> Tuple[str, Dict[str, int]]:
    """Returns the generic path name (e.g. "tiled-cross") and the driver's case counts"""
    targets.check_range(h.n)
    if h.format is StorageFormat.DENSE:
        return "dense-generic", dense_blocks(h, transform, targets, workers)
    if h.format is StorageFormat.PACKED:
        return "packed-generic", packed_blocks(h, transform, targets, workers)

    kind = regime(h, targets)
    if targets.k == 1:
        a = targets[0]
        if kind == "intra":
            return "tiled-intra", tiled_intra(h, transform, a, workers)
        return "tiled-cross", tiled_cross(h, transform, a, workers)
    return f"tiled-{kind}", tiled_blocks(h, transform, targets, workers)
