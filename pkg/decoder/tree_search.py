"""Maximum-likelihood sequence decoding over the code tree.

Every candidate waveform of the repeated PPM code has the same energy in
every slot, so the Gaussian log-likelihood of a path is an increasing affine
function of the sum of its matched-filter outputs:
  -‖y - x‖² = -‖y‖² - n·2eb + 2·√(2eb)·Σ_k Z_k(path).
Maximising that sum is therefore exact ML.

The search works on any *metric source* that exposes

- ``branching``: children per node (2 for the AWGN code, 2^L for bursts),
- ``horizon``: deepest level available,
- ``true_subslot(level)``: node of the transmitted path (0 at level 0),
- ``query_block(level, start, count)``: node values of consecutive nodes.

A node's best completion is its own value plus the best of its children's.
The search recurses depth first and switches to whole-array level sweeps
once a subtree has at most 2^16 leaves, so live memory stays O(depth) plus
one bounded block whatever the horizon. Ties go to the smallest child digit
at the shallowest level where candidates differ.
"""

import logging
import math
from collections.abc import Sequence
from typing import Protocol

import numpy as np

from codec.encoder import prefix_value
from models.data_models import AnytimeEstimates, DecodeResult
from models.limits import (
    MAX_ANYTIME_HORIZON,
    MAX_EXHAUSTIVE_HORIZON,
    MAX_GENIE_DELAY,
    MAX_WINDOW_HORIZON,
)
from utils.errors import CapacityError, DomainError

logger = logging.getLogger(__name__)

# Subtrees with at most 2^16 leaves are swept level by level as arrays.
_VECTOR_LEAF_BITS = 16


class MetricSource(Protocol):
    branching: int

    @property
    def horizon(self) -> int: ...

    def true_subslot(self, level: int) -> int: ...

    def query_block(self, level: int, start: int, count: int) -> np.ndarray: ...


def _bits_per_level(source: MetricSource) -> int:
    return source.branching.bit_length() - 1


def _level_values(source: MetricSource, level: int, start: int, count: int) -> np.ndarray:
    if level == 0:
        return np.zeros(1)
    return source.query_block(level, start, count)


def _sweep_subtree(source: MetricSource, level: int, node: int, depth: int) -> tuple[float, tuple[int, ...]]:
    B = source.branching
    values = [_level_values(source, level, node, 1)]
    for j in range(1, depth + 1):
        width = B ** j
        values.append(_level_values(source, level + j, node * width, width))

    best = values[depth]
    picks: list[np.ndarray] = [np.empty(0, dtype=np.int64)] * depth
    for j in range(depth - 1, -1, -1):
        children = best.reshape(-1, B)
        # argmax returns the first maximum: ties go to the smaller digit.
        pick = np.argmax(children, axis=1)
        picks[j] = pick
        best = values[j] + children[np.arange(children.shape[0]), pick]

    digits = []
    index = 0
    for j in range(depth):
        digit = int(picks[j][index])
        digits.append(digit)
        index = index * B + digit
    return float(best[0]), tuple(digits)


def subtree_best(source: MetricSource, level: int, node: int, depth: int) -> tuple[float, tuple[int, ...]]:
    """
    Best completion of a node over the next ``depth`` levels.

    Args:
        source: Metric source
        level: Level of the subtree root (0 = virtual root above slot 1)
        node: Index of the root within its level
        depth: Number of levels below the root to include

    Returns:
        (value, digits): the root's own value plus the best descendant path
        sum, and the child digits along that path (length ``depth``)
    """
    if depth * _bits_per_level(source) <= _VECTOR_LEAF_BITS:
        return _sweep_subtree(source, level, node, depth)

    own = float(_level_values(source, level, node, 1)[0])
    best_value = -math.inf
    best_digits: tuple[int, ...] = ()
    for digit in range(source.branching):
        value, tail = subtree_best(source, level + 1, node * source.branching + digit, depth - 1)
        if digit == 0 or value > best_value:
            best_value = value
            best_digits = (digit,) + tail
    return own + best_value, best_digits


def _require_binary(source: MetricSource, what: str) -> None:
    if source.branching != 2:
        raise DomainError(f"{what} reads one bit per slot; source branches {source.branching} ways")


def _check_horizon(source: MetricSource, n: int, cap: int, what: str) -> None:
    if n < 1:
        raise DomainError(f"{what} horizon must be at least 1, got {n}")
    if n > cap:
        raise CapacityError(f"{what} horizon {n} exceeds the cap of {cap}")
    if n > source.horizon:
        raise DomainError(f"{what} horizon {n} exceeds the {source.horizon} observed slots")


def path_metric(bits: Sequence[int], oracle: MetricSource) -> float:
    """Sum of the matched-filter outputs along a path, slot 1 first."""
    _require_binary(oracle, "path_metric")
    if len(bits) > oracle.horizon:
        raise DomainError(f"Path of {len(bits)} slots exceeds the {oracle.horizon} observed")
    total = 0.0
    for k in range(1, len(bits) + 1):
        total += float(oracle.query_block(k, prefix_value(bits[:k]), 1)[0])
    return total


def ml_window_decode(oracle: MetricSource, n: int) -> DecodeResult:
    """
    Most likely path through slot n, searching the whole tree from slot 1.

    Cost is Θ(2^{n+1}) node evaluations; n is capped at 28.

    Raises:
        CapacityError: If n > 28
        DomainError: If n < 1 or beyond the oracle horizon
    """
    _check_horizon(oracle, n, MAX_WINDOW_HORIZON, "Window")
    _, digits = subtree_best(oracle, 0, 0, n)
    return DecodeResult(horizon=n, ml_path=digits, metric=path_metric(digits, oracle))


def exhaustive_decode(oracle: MetricSource, n: int) -> DecodeResult:
    """Brute-force ML over all 2^n paths; the reference for the tree search."""
    _require_binary(oracle, "exhaustive_decode")
    _check_horizon(oracle, n, MAX_EXHAUSTIVE_HORIZON, "Exhaustive")
    leaves = 1 << n
    metrics = np.zeros(leaves)
    for k in range(1, n + 1):
        metrics += np.repeat(oracle.query_block(k, 0, 1 << k), 1 << (n - k))
    best = int(np.argmax(metrics))
    path = tuple((best >> (n - 1 - j)) & 1 for j in range(n))
    return DecodeResult(horizon=n, ml_path=path, metric=float(metrics[best]))


def anytime_estimates(oracle: MetricSource, n: int) -> AnytimeEstimates:
    """Re-decode from scratch at every horizon t = 1..n, keeping no decisions."""
    _check_horizon(oracle, n, MAX_ANYTIME_HORIZON, "Anytime")
    rows = tuple(ml_window_decode(oracle, t).ml_path for t in range(1, n + 1))
    return AnytimeEstimates(horizon=n, rows=rows)


def genie_suffix_error(source: MetricSource, d: int, window_start: int) -> bool:
    """
    Whether a decoder told the true prefix still errs on symbol ``window_start``.

    With b_1..b_{i-1} known, only the subtrees under the true prefix matter.
    The best path whose symbol i is wrong is compared with the best path
    whose symbol i is right, over slots i..i+d; a tie counts as an error.

    Raises:
        CapacityError: If the subtrees would exceed 2^27 nodes (d > 26 for the
            binary code)
        DomainError: If d < 0 or the window does not fit the horizon
    """
    if d < 0:
        raise DomainError(f"Delay must be nonnegative, got {d}")
    if (d + 1) * _bits_per_level(source) > MAX_GENIE_DELAY + 1:
        raise CapacityError(f"Delay {d} exceeds the genie cap for branching {source.branching}")
    if window_start < 1 or window_start + d > source.horizon:
        raise DomainError(
            f"Window of {d + 1} slots from slot {window_start} exceeds horizon {source.horizon}"
        )

    B = source.branching
    parent = source.true_subslot(window_start - 1)
    true_digit = source.true_subslot(window_start) - parent * B
    values = [subtree_best(source, window_start, parent * B + digit, d)[0] for digit in range(B)]
    correct = values[true_digit]
    wrong = max(v for digit, v in enumerate(values) if digit != true_digit)
    return wrong >= correct
