"""Deterministic thread helper: fixed work items, order-preserving results."""

from concurrent.futures import ThreadPoolExecutor


def map_ordered(fn, items, threads=1):
    """Apply fn to items, optionally on a thread pool, preserving item order.

    Chunking is decided by the caller, so results are identical for every
    thread count.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
