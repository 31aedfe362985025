"""Order-preserving fan-out of independent tasks over a process pool."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "POWERCYCLES_THREADS"


def default_workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


def chunked_map(fn: Callable[[T], R], tasks: Iterable[T], workers: int | None = None) -> list[R]:
    """``[fn(t) for t in tasks]``, in task order, run on up to ``workers`` processes.

    Results come back in submission order, so any reduction over them is
    independent of scheduling.
    """
    tasks = list(tasks)
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))
