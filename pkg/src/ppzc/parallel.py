"""Process-pool map with results returned in input order."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

WORKERS_ENV = "PPZC_WORKERS"


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def pmap(fn, items, workers: int | None = 1, chunksize: int = 1) -> list:
    """``list(map(fn, items))``, spread over ``workers`` processes when > 1.

    ``fn`` must be a picklable module-level callable. Output order always
    follows ``items`` so callers can assemble results deterministically.
    """
    items = list(items)
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


def pimap(fn, items, workers: int | None = 1):
    """Lazy, order-preserving variant of :func:`pmap` (yields as results arrive in order)."""
    items = list(items)
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(items) <= 1:
        for it in items:
            yield fn(it)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items)
