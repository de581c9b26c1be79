"""
Process pool plumbing for partitioned scans.

Results always come back in task order, so merged output does not depend on the
number of workers.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from .config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(requested: Optional[int] = None) -> int:
    """
    Number of worker processes to use.

    Args:
        requested: Explicit cap; ``None`` reads ``CUBIC_ORDERS_THREADS``.
            0 means one worker per CPU.
    """
    value = settings.CUBIC_ORDERS_THREADS if requested is None else requested
    if value < 0:
        raise ValueError(f"worker count must be non-negative, got {value}")
    if value == 0:
        value = os.cpu_count() or 1
    return max(1, value)


def map_ordered(
    fn: Callable[[T], R],
    tasks: Sequence[T],
    workers: Optional[int] = None,
) -> List[R]:
    """
    Apply ``fn`` to every task, in a process pool when it is worth it.

    ``fn`` must be a module-level callable so it can be sent to workers.
    """
    count = resolve_workers(workers)
    if count == 1 or len(tasks) < settings.PARALLEL_MIN_TASKS:
        return [fn(task) for task in tasks]

    count = min(count, len(tasks))
    logger.debug(f"Dispatching {len(tasks)} tasks to {count} workers")
    chunksize = max(1, len(tasks) // (4 * count))
    with ProcessPoolExecutor(max_workers=count) as pool:
        return list(pool.map(fn, tasks, chunksize=chunksize))
