"""General utils"""

# pylint: disable=logging-fstring-interpolation

import logging
import os
from functools import wraps
from time import perf_counter
from typing import Any, Callable, Sequence, TypeVar

from joblib import Parallel, delayed  # type: ignore

logger = logging.getLogger(__name__)

T = TypeVar("T")


def find_duplicates(_list: list[T]) -> set[T]:
    """Find duplicate items in a list"""
    return {x for x in _list if _list.count(x) > 1}


def normalize_path(path: str, parent_folder: str) -> str:
    """
    Normalizes a path.
    If the path is relative, the parent_folder is added to make it an absolute path.

    Args:
        path (str): The path to the file to normalize.
        parent_folder (str): The folder the file is in.

    Returns:
        str: The normalized path.
    """
    if not os.path.isabs(path):
        path = os.path.join(parent_folder, path)
    return os.path.normpath(path)


def timed(func: Callable) -> Callable:
    """Logs the wall time of the decorated call at DEBUG level

    Args:
        func (Callable): function to time

    Returns:
        Callable: the wrapped function
    """

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        start = perf_counter()
        retval = func(*args, **kwargs)
        logger.debug(f"{func.__name__} finished in {perf_counter() - start:.3f} s")
        return retval

    return wrapper


def map_over_q(
    func: Callable[[float], T], q_values: Sequence[float], workers: int = 1
) -> list[T]:
    """Evaluates func at every half-width, optionally on a worker pool.

    Results come back in ascending Q whatever the order of q_values,
    so a parallel sweep and a serial one agree record for record.

    Args:
        func (Callable[[float], T]): pure function of Q
        q_values (Sequence[float]): half-widths
        workers (int, optional): size of the joblib thread pool. Defaults to 1.

    Raises:
        ValueError: if q_values is empty or workers < 1

    Returns:
        list[T]: func(Q) for Q in sorted(q_values)
    """
    if not q_values:
        raise ValueError("At least one value of Q is required.")
    if workers < 1:
        raise ValueError(f"{workers} is not a valid number of workers")
    ordered = sorted(float(q) for q in q_values)
    duplicates = find_duplicates(ordered)
    if duplicates:
        raise ValueError(f"Duplicate values of Q: {sorted(duplicates)}")

    start = perf_counter()
    if workers == 1 or len(ordered) == 1:
        results = [func(q) for q in ordered]
    else:
        # threads share CONFIG with the caller; LAPACK releases the GIL
        results = Parallel(n_jobs=workers, prefer="threads")(
            delayed(func)(q) for q in ordered
        )
    logger.debug(
        f"Sweep over {len(ordered)} values of Q with {workers} worker(s) "
        f"took {perf_counter() - start:.3f} s"
    )
    return list(results)
