"""
Worker pool for kernels and reductions

Work is split into contiguous chunks of independent units (tiles, tile
base-pairs, block rows). A chunk holds at most SCRATCH_BYTES of unit data, so
the gather buffers of one chunk stay cache-sized whatever the matrix size.
Units write disjoint element sets, so any chunking produces identical results;
the pool only decides how many chunks run at once.
"""

import atexit
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, TypeVar

T = TypeVar("T")

# 256 KiB: sixteen 32 x 32 complex tiles
SCRATCH_BYTES = 1 << 18

_default_workers: Optional[int] = None
_executors: Dict[int, ThreadPoolExecutor] = {}


def set_default_workers(workers: Optional[int]):
    """Set the process-wide worker count used when a kernel gets workers=None"""
    global _default_workers
    if workers is not None and workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    _default_workers = workers


def default_workers() -> Optional[int]:
    return _default_workers


def max_workers() -> int:
    return os.cpu_count() or 1


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers is None:
        workers = _default_workers if _default_workers is not None else 1
    return max(1, int(workers))


def chunk_slices(count: int, workers: int, max_units: Optional[int] = None) -> List[slice]:
    """
    Split range(count) into contiguous, near-equal slices: at least one per
    worker and none longer than `max_units`
    """
    if count <= 0:
        return []
    n_chunks = max(1, min(workers, count))
    if max_units is not None:
        n_chunks = max(n_chunks, -(-count // max(1, max_units)))
    bounds = [count * c // n_chunks for c in range(n_chunks + 1)]
    return [slice(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def units_per_chunk(unit_bytes: int, budget: int = SCRATCH_BYTES) -> int:
    """How many units fit the scratch budget; a unit larger than the budget runs alone"""
    if unit_bytes <= 0:
        return 1 << 62
    return max(1, budget // unit_bytes)


def _executor(workers: int) -> ThreadPoolExecutor:
    if workers not in _executors:
        _executors[workers] = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="hermitian")
    return _executors[workers]


def run_units(fn: Callable[[slice], T], count: int, workers: Optional[int] = None, unit_bytes: int = 0) -> List[T]:
    """
    Run fn over chunks of range(count) and wait for all of them.
    `unit_bytes` is the stored data one unit touches; it caps the chunk
    length. Results come back in chunk order; worker exceptions propagate.
    """
    workers = resolve_workers(workers)
    chunks = chunk_slices(count, workers, units_per_chunk(unit_bytes))
    if workers == 1 or len(chunks) <= 1:
        return [fn(chunk) for chunk in chunks]
    return list(_executor(workers).map(fn, chunks))


@atexit.register
def _shutdown():
    for executor in _executors.values():
        executor.shutdown(wait=False)
    _executors.clear()
