"""Ordered parallel mapping over a possibly unbounded task stream.

Results always come back in task order, so anything that commits results by
index is independent of worker scheduling. With jobs absent or <= 1 this is
plain map; otherwise a process pool with a bounded in-flight window, safe to
abandon mid-stream (pending work is cancelled when the generator closes).
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator


def ordered_map(fn: Callable, tasks: Iterable, jobs: int | None) -> Iterator:
    if not jobs or jobs <= 1:
        yield from map(fn, tasks)
        return
    window = jobs * 4
    pending: deque = deque()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        try:
            for task in tasks:
                pending.append(pool.submit(fn, task))
                if len(pending) >= window:
                    yield pending.popleft().result()
            while pending:
                yield pending.popleft().result()
        finally:
            for future in pending:
                future.cancel()
