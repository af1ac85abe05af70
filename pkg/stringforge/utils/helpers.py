"""
StringForge helper functions.
"""

import hashlib
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from ..logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def generate_hash(data: str, algorithm: str = "sha256") -> str:
    """
    Hex digest of a string.

    Example:
        >>> generate_hash('hello world')[:12]
        'b94d27b9934d'
    """
    hash_obj = hashlib.new(algorithm)
    hash_obj.update(data.encode("utf-8"))
    return hash_obj.hexdigest()


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Map ``func`` over ``items`` with a process pool, keeping input order.

    Results come back in input order whatever the scheduling, so merging
    them is deterministic. With ``workers <= 1`` or a single item the map
    runs in-process. ``func`` must be a picklable module-level function.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(workers, len(items))
    logger.debug("Starting worker pool", workers=workers, tasks=len(items))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


__all__ = [
    "generate_hash",
    "parallel_map",
]
