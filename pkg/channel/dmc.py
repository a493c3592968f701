"""Discrete memoryless channels: text-format loading and addressed sampling."""

import logging
from pathlib import Path

import numpy as np

from channel.noise import DMC_OUTPUT, addressed_uniform
from models.data_models import DmcSpec
from utils.errors import DomainError

logger = logging.getLogger(__name__)


def parse_dmc_text(text: str) -> DmcSpec:
    """
    Parse the plain-text channel format.

    Line 1 holds the input and output alphabet sizes, line 2 the per-input
    costs, then one transition row P(·|x) per input; whitespace-separated
    decimals, blank lines and ``#`` comments ignored. Inputs and outputs are
    labelled by index, and the first zero-cost input is the free symbol.

    Raises:
        DomainError: On malformed content or when no input is free
    """
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if len(rows) < 2:
        raise DomainError("Channel file needs a size line and a cost line")

    try:
        nx, ny = (int(v) for v in rows[0])
        cost = [float(v) for v in rows[1]]
        transition = [[float(v) for v in row] for row in rows[2:]]
    except ValueError as e:
        raise DomainError(f"Malformed channel file: {e}") from e

    if len(transition) != nx:
        raise DomainError(f"Expected {nx} transition rows, found {len(transition)}")
    free = [x for x, c in enumerate(cost) if c == 0]
    if not free:
        raise DomainError("Channel has no zero-cost input")

    return DmcSpec(
        inputs=[str(x) for x in range(nx)],
        outputs=[str(y) for y in range(ny)],
        transition=transition,
        cost=cost,
        zero_cost_input=free[0],
    )


def load_dmc_spec(path: str | Path) -> DmcSpec:
    """Read a channel description from a file (see :func:`parse_dmc_text`)."""
    file_path = Path(path)
    if not file_path.is_file():
        raise DomainError(f"Channel file not found: {path}")
    spec = parse_dmc_text(file_path.read_text(encoding="utf-8"))
    logger.info(f"Loaded {len(spec.inputs)}x{len(spec.outputs)} channel from {file_path}")
    return spec


def input_index(spec: DmcSpec, x: int | str) -> int:
    """Resolve an input given by index or label."""
    if isinstance(x, str):
        if x not in spec.inputs:
            raise DomainError(f"Unknown input symbol {x!r}")
        return spec.inputs.index(x)
    if not 0 <= x < len(spec.inputs):
        raise DomainError(f"Input index {x!r} outside 0..{len(spec.inputs) - 1}")
    return int(x)


def dmc_sample_many(spec: DmcSpec, seed: int, address: tuple, inputs: np.ndarray) -> np.ndarray:
    """
    Vectorised channel outputs for broadcast addresses.

    The uniform driving each draw depends only on the address, so the same
    address gives the same output for a given input on every call.
    """
    inputs = np.asarray(inputs, dtype=np.int64)
    if inputs.size and (inputs.min() < 0 or inputs.max() >= len(spec.inputs)):
        raise DomainError("Input index outside the channel alphabet")
    u = addressed_uniform(seed, DMC_OUTPUT, *address)
    cdf = np.cumsum(spec.matrix, axis=1)
    u, inputs = np.broadcast_arrays(u, inputs)
    outputs = np.sum(cdf[inputs] <= u[..., None], axis=-1)
    return np.minimum(outputs, len(spec.outputs) - 1)


def dmc_sample(spec: DmcSpec, seed: int, address: tuple[int, ...], x: int | str) -> int:
    """One channel output for input x at the given address (an output index)."""
    index = input_index(spec, x)
    return int(dmc_sample_many(spec, seed, tuple(address), np.array([index]))[0])
