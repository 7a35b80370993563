"""Internal parallelism, capped by the TOMOKIT_THREADS environment variable.

Results are returned in input order regardless of the worker count, so a run
with TOMOKIT_THREADS=8 is bit-identical to a serial one.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count():
    raw = os.environ.get("TOMOKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"TOMOKIT_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def parallel_map(fn, items):
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
