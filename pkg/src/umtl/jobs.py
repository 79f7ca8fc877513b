"""Worker-count plumbing for exhaustive scans.

Results are independent of the worker count: work items are partitioned
into contiguous chunks, merged back in submission order, and every caller
either sorts canonically or takes the hit with the least index afterwards.
Worker functions must be module-level (pickled across processes).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def _filter_chunk(args):
    fn, fixed, chunk = args
    return [item for item in chunk if fn(*fixed, item)]


def chunked_filter(fn, fixed: tuple, items, jobs: int = 1) -> list:
    """[item for item in items if fn(*fixed, item)], split across processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 4:
        return [item for item in items if fn(*fixed, item)]
    chunk = max(1, len(items) // (jobs * 4))
    parts = [items[i : i + chunk] for i in range(0, len(items), chunk)]
    out: list = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for res in pool.map(_filter_chunk, [(fn, fixed, p) for p in parts]):
            out.extend(res)
    return out


def _first_hit_chunk(args):
    fn, fixed, chunk = args
    for offset, item in chunk:
        res = fn(*fixed, item)
        if res is not None:
            return (offset, res)
    return None


def chunked_first(fn, fixed: tuple, indexed_items, jobs: int = 1):
    """First non-None fn(*fixed, item) by item index, or None.

    indexed_items yields (index, item) pairs; the hit with the least index
    wins regardless of scheduling.
    """
    items = list(indexed_items)
    if jobs <= 1 or len(items) < 4:
        for _, item in items:
            res = fn(*fixed, item)
            if res is not None:
                return res
        return None
    chunk = max(1, len(items) // (jobs * 4))
    parts = [items[i : i + chunk] for i in range(0, len(items), chunk)]
    best = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for hit in pool.map(_first_hit_chunk, [(fn, fixed, p) for p in parts]):
            if hit is not None and (best is None or hit[0] < best[0]):
                best = hit
    return best[1] if best is not None else None
