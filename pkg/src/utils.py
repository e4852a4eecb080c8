import logging
import os
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
from typing import Callable, Iterable, Optional, Tuple, TypeVar

from constants import THREADS_ENV_VAR

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        threads = int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV_VAR, raw)
        return 1
    return max(1, threads)


def first_match(
    function: Callable[[T], R],
    items: Iterable[T],
    accept: Callable[[R], bool],
) -> Optional[Tuple[T, R]]:
    """Return the first ``(item, function(item))`` in iteration order whose result is
    accepted, or ``None``.

    With ``PMDS_THREADS`` > 1 the items are evaluated in ordered chunks on a thread
    pool; the reported match is still the first one in iteration order.
    """
    threads = thread_count()
    iterator = iter(items)

    if threads == 1:
        for item in iterator:
            result = function(item)
            if accept(result):
                return item, result
        return None

    with ThreadPoolExecutor(max_workers=threads) as executor:
        while chunk := list(islice(iterator, threads * 4)):
            for item, result in zip(chunk, executor.map(function, chunk)):
                if accept(result):
                    return item, result
    return None


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def parse_int_list(text: str) -> Tuple[int, ...]:
    return tuple(int(token) for token in text.split(",") if token.strip())
