"""Trial chunking and the worker pool shared by every Monte Carlo driver.

Trials are cut into fixed-size chunks that do not depend on the worker
count. Each chunk returns integer error counts, and integer sums do not
depend on the order chunks finish in, so results are identical for any
``--workers`` value.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np

from utils.errors import DomainError

logger = logging.getLogger(__name__)

CHUNK_SIZE = 64

ChunkTask = Callable[[int, int], np.ndarray]


def trial_chunks(trials: int, chunk_size: int = CHUNK_SIZE) -> list[tuple[int, int]]:
    """Half-open trial ranges [start, stop) covering 0..trials-1."""
    return [(start, min(start + chunk_size, trials)) for start in range(0, trials, chunk_size)]


def run_chunked(task: ChunkTask, trials: int, workers: int = 1, label: str = "trials") -> np.ndarray:
    """
    Run ``task(start, stop)`` over all trial chunks and sum the count vectors.

    Args:
        task: Returns an int64 count vector for trials [start, stop)
        trials: Total number of trials
        workers: Worker threads; 1 runs in the calling thread
        label: Name used in progress messages

    Returns:
        Summed int64 counts
    """
    if trials < 1:
        raise DomainError(f"Need at least one trial, got {trials}")
    if workers < 1:
        raise DomainError(f"Need at least one worker, got {workers}")

    chunks = trial_chunks(trials)
    total: np.ndarray | None = None
    completed = 0

    def accumulate(counts: np.ndarray) -> None:
        nonlocal total, completed
        counts = np.asarray(counts, dtype=np.int64)
        total = counts.copy() if total is None else total + counts
        completed += 1
        # Show progress every 10 chunks
        if completed % 10 == 0 and completed < len(chunks):
            logger.info(f"  Progress: {min(completed * CHUNK_SIZE, trials)}/{trials} {label}...")

    if workers == 1:
        for start, stop in chunks:
            accumulate(task(start, stop))
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            future_to_chunk = {executor.submit(task, start, stop): (start, stop) for start, stop in chunks}
            for future in as_completed(future_to_chunk):
                accumulate(future.result())

    assert total is not None
    return total
