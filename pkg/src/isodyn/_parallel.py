"""Sample-level parallelism for Monte-Carlo sweeps."""
import os
from concurrent.futures import ProcessPoolExecutor


def worker_count(workers=None) -> int:
    """``workers`` if given, else ``ISODYN_THREADS`` (default 1); never below 1."""
    if workers is None:
        try:
            workers = int(os.environ.get("ISODYN_THREADS", "1"))
        except ValueError:
            workers = 1
    return max(1, int(workers))


def map_samples(fn, args, workers=None):
    """``[fn(a) for a in args]``, spread over processes when more than one worker is allowed.

    Results keep the order of ``args`` so reports do not depend on scheduling.
    """
    args = list(args)
    n = worker_count(workers)
    if n == 1 or len(args) < 2:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=min(n, len(args))) as pool:
        return list(pool.map(fn, args, chunksize=max(1, len(args) // (4 * n))))
