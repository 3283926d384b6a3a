"""Thread-pool map with deterministic result order.

Every parallelized cell is a pure computation whose internal reduction
tree is fixed, so results are byte-identical for any thread count; the
pool only changes wall time. Thread count resolves as: explicit argument,
else WEYLLAB_THREADS, else 1.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count(requested=None):
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("WEYLLAB_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def ordered_map(fn, items, threads=None):
    """Like map(fn, items) but optionally threaded; order preserved."""
    items = list(items)
    n = thread_count(threads)
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
