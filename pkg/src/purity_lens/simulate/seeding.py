"""Seed derivation and order-preserving parallel map."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np


def derive_seed(master_seed: int, *path: int) -> int:
    """Deterministic 64-bit child seed for ``(master_seed, *path)``."""
    if master_seed < 0 or any(p < 0 for p in path):
        raise ValueError("seeds and path components must be nonnegative")
    seq = np.random.SeedSequence([int(master_seed), *map(int, path)])
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def parallel_map(fn, tasks, jobs: int = 1) -> list:
    """``[fn(t) for t in tasks]``, optionally across processes.

    Results come back in task order, so output never depends on ``jobs``.
    """
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))
