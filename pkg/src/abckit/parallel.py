"""Deterministic parallel map over independent tasks.

Results are returned in task order (never completion order), and each task
carries its own derived RNG labels, so output bytes are identical for any
worker count.
"""
from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor

DEFAULT_WORKERS_ENV = "ABCKIT_WORKERS"


def default_workers() -> int:
    value = os.environ.get(DEFAULT_WORKERS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            raise ValueError(
                f"{DEFAULT_WORKERS_ENV} must be an integer, got {value!r}"
            ) from None
    return 1


def parallel_map(fn, tasks: list, workers: int) -> list:
    """Apply fn to each task, in order, optionally across processes."""
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:  # pragma: no cover - non-POSIX fallback
        ctx = multiprocessing.get_context()
    chunksize = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, tasks, chunksize=chunksize))
