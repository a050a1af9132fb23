"""Ordered fan-out over a thread pool.

Work items are submitted together and collected with `as_completed`; results are stitched
back into input order, so callers see the same list a sequential loop would produce.
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Dict, List, Sequence, TypeVar

T = TypeVar('T')
R = TypeVar('R')


def ordered_map(fn: Callable[[T], R], items: Sequence[T], max_workers: int = 1) -> List[R]:
    """`fn` applied to every item; ``result[i]`` corresponds to ``items[i]``.

    ``max_workers <= 1`` (or a single item) runs inline on the calling thread. The first
    exception raised by any worker propagates after the pool shuts down.
    """
    if max_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    completed: Dict[int, R] = {}
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(fn, item): index for index, item in enumerate(items)}
        for future in as_completed(futures):
            completed[futures[future]] = future.result()

    return [completed[index] for index in range(len(items))]
